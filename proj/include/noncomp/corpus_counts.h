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

// Unigram and adjacent-bigram counts over a sentence-split corpus, plus the
// add-one smoothed pair probability built on top of them.

#ifndef NONCOMP_CORPUS_COUNTS_H_
#define NONCOMP_CORPUS_COUNTS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace noncomp {

struct StringHash {
  using is_transparent = void;
  size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

struct CountOptions {
  // Tokens seen fewer times are dropped together with every bigram that
  // mentions them; bigrams seen fewer times are dropped as well.
  int64_t min_count = 1;
  bool lowercase = true;
};

// Add-one smoothed estimate of p(w1, w2). Always strictly positive.
struct SmoothedPairProbability {
  double value = 0.0;
};

// Immutable count tables. Thread-safe for concurrent reads.
class BigramStatistics {
 public:
  BigramStatistics() = default;

  int64_t Unigram(std::string_view w) const;
  int64_t Bigram(std::string_view w1, std::string_view w2) const;

  // N: number of adjacent within-sentence pairs.
  int64_t total_pairs() const { return total_pairs_; }
  // V: number of distinct unigram types.
  int64_t vocab_size() const { return static_cast<int64_t>(tokens_.size()); }
  // Smoothing mass in the denominator; V^2 unless overridden.
  int64_t laplace() const { return laplace_; }

  // (count + 1) / (N + L).
  double Smoothed(int64_t count) const {
    return (static_cast<double>(count) + 1.0) /
           (static_cast<double>(total_pairs_) + static_cast<double>(laplace_));
  }

  // Replaces the default V^2 smoothing mass. Call before sharing the object.
  void OverrideLaplace(int64_t laplace);

  // Visits every entry in lexicographic token order.
  void ForEachUnigram(
      const std::function<void(const std::string &, int64_t)> &fn) const;
  void ForEachBigram(const std::function<void(const std::string &,
                                              const std::string &, int64_t)>
                         &fn) const;

 private:
  friend class CountBuilder;
  friend BigramStatistics ReadCountsSnapshot(const std::filesystem::path &);

  int32_t Id(std::string_view w) const;
  static uint64_t Key(int32_t a, int32_t b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
           static_cast<uint32_t>(b);
  }

  std::vector<std::string> tokens_;
  std::vector<int64_t> unigram_counts_;
  StringMap<int32_t> ids_;
  std::unordered_map<uint64_t, int64_t> bigrams_;
  int64_t total_pairs_ = 0;
  int64_t laplace_ = 1;
};

// Accumulates counts sentence by sentence. Builders over disjoint corpus
// shards can be merged in any order.
class CountBuilder {
 public:
  explicit CountBuilder(CountOptions options = {}) : options_(options) {}

  void AddSentence(std::span<const std::string> tokens);
  // One sentence per line, tokens separated by spaces.
  void AddLine(std::string_view line);
  void AddStream(std::istream &in);
  void Merge(const CountBuilder &other);

  // Throws std::invalid_argument("empty corpus") when no token was seen.
  BigramStatistics Build() const;

 private:
  CountOptions options_;
  StringMap<int64_t> unigrams_;
  StringMap<int64_t> bigrams_;  // key: w1 '\t' w2
};

BigramStatistics BuildCounts(std::istream &corpus, CountOptions options = {});
BigramStatistics BuildCounts(const std::vector<std::vector<std::string>> &corpus,
                             CountOptions options = {});

SmoothedPairProbability PairProbability(const BigramStatistics &stats,
                                        std::string_view w1,
                                        std::string_view w2);

// Bigram table at `path` with a #N/#V/#L header, unigrams at
// UnigramSnapshotPath(path). Output is byte-stable for equal inputs.
void WriteCountsSnapshot(const BigramStatistics &stats,
                         const std::filesystem::path &path);
BigramStatistics ReadCountsSnapshot(const std::filesystem::path &path);
std::filesystem::path UnigramSnapshotPath(const std::filesystem::path &path);

}  // namespace noncomp

#endif  // NONCOMP_CORPUS_COUNTS_H_
