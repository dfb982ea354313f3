// Copyright 2026 The Noncomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noncomp/corpus_counts.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "noncomp/text_io.h"

namespace noncomp {

int32_t BigramStatistics::Id(std::string_view w) const {
  auto it = ids_.find(w);
  return it == ids_.end() ? -1 : it->second;
}

int64_t BigramStatistics::Unigram(std::string_view w) const {
  int32_t id = Id(w);
  return id < 0 ? 0 : unigram_counts_[id];
}

int64_t BigramStatistics::Bigram(std::string_view w1,
                                 std::string_view w2) const {
  int32_t a = Id(w1);
  int32_t b = Id(w2);
  if (a < 0 || b < 0) return 0;
  auto it = bigrams_.find(Key(a, b));
  return it == bigrams_.end() ? 0 : it->second;
}

void BigramStatistics::OverrideLaplace(int64_t laplace) {
  if (laplace < 1) throw std::invalid_argument("laplace mass must be >= 1");
  laplace_ = laplace;
}

void BigramStatistics::ForEachUnigram(
    const std::function<void(const std::string &, int64_t)> &fn) const {
  // Ids are assigned in lexicographic order by CountBuilder::Build and by
  // the snapshot reader.
  for (size_t i = 0; i < tokens_.size(); ++i) fn(tokens_[i], unigram_counts_[i]);
}

void BigramStatistics::ForEachBigram(
    const std::function<void(const std::string &, const std::string &,
                             int64_t)> &fn) const {
  std::vector<std::pair<uint64_t, int64_t>> entries(bigrams_.begin(),
                                                    bigrams_.end());
  std::sort(entries.begin(), entries.end());
  for (const auto &[key, count] : entries) {
    fn(tokens_[key >> 32], tokens_[key & 0xffffffffu], count);
  }
}

void CountBuilder::AddSentence(std::span<const std::string> tokens) {
  auto norm = [&](const std::string &t) {
    return options_.lowercase ? ToLower(t) : t;
  };
  std::string prev;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string tok = norm(tokens[i]);
    ++unigrams_[tok];
    if (i > 0) {
      std::string key = prev;
      key += '\t';
      key += tok;
      ++bigrams_[key];
    }
    prev = std::move(tok);
  }
}

void CountBuilder::AddLine(std::string_view line) {
  std::vector<std::string> tokens;
  for (auto field : SplitWhitespace(line)) tokens.emplace_back(field);
  AddSentence(tokens);
}

void CountBuilder::AddStream(std::istream &in) {
  std::string line;
  while (std::getline(in, line)) AddLine(line);
}

void CountBuilder::Merge(const CountBuilder &other) {
  for (const auto &[k, v] : other.unigrams_) unigrams_[k] += v;
  for (const auto &[k, v] : other.bigrams_) bigrams_[k] += v;
}

BigramStatistics CountBuilder::Build() const {
  if (unigrams_.empty()) throw std::invalid_argument("empty corpus");

  BigramStatistics stats;
  std::vector<std::pair<std::string, int64_t>> kept;
  for (const auto &[tok, count] : unigrams_) {
    if (count >= options_.min_count) kept.emplace_back(tok, count);
  }
  if (kept.empty()) throw std::invalid_argument("empty corpus");
  std::sort(kept.begin(), kept.end());
  for (auto &[tok, count] : kept) {
    stats.ids_.emplace(tok, static_cast<int32_t>(stats.tokens_.size()));
    stats.tokens_.push_back(tok);
    stats.unigram_counts_.push_back(count);
  }

  for (const auto &[key, count] : bigrams_) {
    if (count < options_.min_count) continue;
    size_t tab = key.find('\t');
    int32_t a = stats.Id(std::string_view(key).substr(0, tab));
    int32_t b = stats.Id(std::string_view(key).substr(tab + 1));
    if (a < 0 || b < 0) continue;
    stats.bigrams_[BigramStatistics::Key(a, b)] = count;
    stats.total_pairs_ += count;
  }
  stats.laplace_ = stats.vocab_size() * stats.vocab_size();
  return stats;
}

BigramStatistics BuildCounts(std::istream &corpus, CountOptions options) {
  CountBuilder builder(options);
  builder.AddStream(corpus);
  return builder.Build();
}

BigramStatistics BuildCounts(const std::vector<std::vector<std::string>> &corpus,
                             CountOptions options) {
  CountBuilder builder(options);
  for (const auto &sentence : corpus) builder.AddSentence(sentence);
  return builder.Build();
}

SmoothedPairProbability PairProbability(const BigramStatistics &stats,
                                        std::string_view w1,
                                        std::string_view w2) {
  return {stats.Smoothed(stats.Bigram(w1, w2))};
}

std::filesystem::path UnigramSnapshotPath(const std::filesystem::path &path) {
  std::filesystem::path p = path;
  p += ".unigrams";
  return p;
}

void WriteCountsSnapshot(const BigramStatistics &stats,
                         const std::filesystem::path &path) {
  std::ostringstream bi;
  bi << "#N=" << stats.total_pairs() << "\n";
  bi << "#V=" << stats.vocab_size() << "\n";
  bi << "#L=" << stats.laplace() << "\n";
  stats.ForEachBigram([&](const std::string &a, const std::string &b,
                          int64_t c) { bi << a << '\t' << b << '\t' << c << '\n'; });
  std::ostringstream uni;
  stats.ForEachUnigram([&](const std::string &w, int64_t c) {
    uni << w << '\t' << c << '\n';
  });
  WriteFileAtomically(UnigramSnapshotPath(path), uni.str());
  WriteFileAtomically(path, bi.str());
}

namespace {

[[noreturn]] void SnapshotError(const std::filesystem::path &path, size_t line,
                                const std::string &what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           what);
}

}  // namespace

BigramStatistics ReadCountsSnapshot(const std::filesystem::path &path) {
  std::ifstream uni_in(UnigramSnapshotPath(path));
  if (!uni_in) {
    throw std::runtime_error("cannot open " +
                             UnigramSnapshotPath(path).string());
  }
  std::ifstream bi_in(path);
  if (!bi_in) throw std::runtime_error("cannot open " + path.string());

  BigramStatistics stats;
  std::vector<std::pair<std::string, int64_t>> unigrams;
  std::string line;
  size_t lineno = 0;
  while (std::getline(uni_in, line)) {
    ++lineno;
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    auto fields = Split(view, '\t');
    int64_t count;
    if (fields.size() != 2 || !ParseInt64(fields[1], &count) || count < 0) {
      SnapshotError(UnigramSnapshotPath(path), lineno, "expected w<TAB>count");
    }
    unigrams.emplace_back(std::string(fields[0]), count);
  }
  std::sort(unigrams.begin(), unigrams.end());
  for (auto &[tok, count] : unigrams) {
    if (!stats.ids_.emplace(tok, static_cast<int32_t>(stats.tokens_.size()))
             .second) {
      throw std::runtime_error("duplicate unigram '" + tok + "' in " +
                               UnigramSnapshotPath(path).string());
    }
    stats.tokens_.push_back(tok);
    stats.unigram_counts_.push_back(count);
  }

  int64_t header_n = -1, header_v = -1, header_l = -1;
  lineno = 0;
  while (std::getline(bi_in, line)) {
    ++lineno;
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      size_t eq = view.find('=');
      int64_t value;
      if (eq == std::string_view::npos ||
          !ParseInt64(view.substr(eq + 1), &value)) {
        SnapshotError(path, lineno, "malformed header");
      }
      std::string_view key = view.substr(1, eq - 1);
      if (key == "N") header_n = value;
      else if (key == "V") header_v = value;
      else if (key == "L") header_l = value;
      continue;
    }
    auto fields = Split(view, '\t');
    int64_t count;
    if (fields.size() != 3 || !ParseInt64(fields[2], &count) || count < 0) {
      SnapshotError(path, lineno, "expected w1<TAB>w2<TAB>count");
    }
    int32_t a = stats.Id(fields[0]);
    int32_t b = stats.Id(fields[1]);
    if (a < 0 || b < 0) {
      SnapshotError(path, lineno, "bigram token missing from unigram table");
    }
    stats.bigrams_[BigramStatistics::Key(a, b)] += count;
    stats.total_pairs_ += count;
  }
  if (header_n < 0 || header_v < 0 || header_l < 0) {
    throw std::runtime_error(path.string() + ": missing #N/#V/#L header");
  }
  if (header_n != stats.total_pairs_) {
    throw std::runtime_error(path.string() +
                             ": #N does not match the sum of bigram counts");
  }
  if (header_v != stats.vocab_size()) {
    throw std::runtime_error(path.string() +
                             ": #V does not match the unigram table size");
  }
  if (stats.tokens_.empty()) throw std::runtime_error("empty corpus");
  stats.OverrideLaplace(header_l);
  return stats;
}

}  // namespace noncomp
