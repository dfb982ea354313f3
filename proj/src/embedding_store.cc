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

#include "noncomp/embedding_store.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "noncomp/text_io.h"

namespace noncomp {

double Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) throw std::invalid_argument("zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Parse(in, path.string());
}

EmbeddingTable EmbeddingTable::Parse(std::istream &in,
                                     std::string_view source) {
  auto fail = [&](size_t lineno, const std::string &what) {
    throw std::runtime_error(std::string(source) + ":" +
                             std::to_string(lineno) + ": " + what);
  };

  EmbeddingTable table;
  std::string line;
  size_t lineno = 0;
  bool first = true;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (first) {
      first = false;
      int64_t count, dim;
      if (fields.size() == 2 && ParseInt64(fields[0], &count) &&
          ParseInt64(fields[1], &dim)) {
        if (dim <= 0) fail(lineno, "non-positive dimension in header");
        table.dimension_ = static_cast<int>(dim);
        continue;
      }
      if (fields.size() < 2) fail(lineno, "row has no vector values");
      table.dimension_ = static_cast<int>(fields.size() - 1);
    }
    if (fields.size() - 1 != static_cast<size_t>(table.dimension_)) {
      fail(lineno, "expected " + std::to_string(table.dimension_) +
                       " values, found " + std::to_string(fields.size() - 1));
    }
    values.resize(table.dimension_);
    for (int d = 0; d < table.dimension_; ++d) {
      if (!ParseDouble(fields[d + 1], &values[d])) {
        fail(lineno, "malformed number '" + std::string(fields[d + 1]) + "'");
      }
    }
    table.Add(std::string(fields[0]), values);
  }
  if (table.size() == 0) {
    throw std::runtime_error(std::string(source) + ": empty embedding file");
  }
  return table;
}

bool EmbeddingTable::Add(std::string token, std::span<const double> vector) {
  if (dimension_ == 0) dimension_ = static_cast<int>(vector.size());
  if (vector.size() != static_cast<size_t>(dimension_)) {
    throw std::invalid_argument("dimension mismatch for '" + token + "'");
  }
  if (index_.contains(token)) {
    ++duplicates_;
    return false;
  }
  double norm2 = 0;
  for (double v : vector) {
    float f = static_cast<float>(v);
    norm2 += static_cast<double>(f) * f;
  }
  if (norm2 == 0) {
    ++zero_rows_;
    return false;
  }
  index_.emplace(token, static_cast<int32_t>(tokens_.size()));
  tokens_.push_back(std::move(token));
  for (double v : vector) data_.push_back(static_cast<float>(v));
  norms_.push_back(std::sqrt(norm2));
  return true;
}

bool EmbeddingTable::Contains(std::string_view token) const {
  return index_.find(token) != index_.end();
}

std::vector<double> EmbeddingTable::Vector(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) throw OutOfVocabulary(token);
  const float *row = data_.data() + static_cast<size_t>(it->second) * dimension_;
  return std::vector<double>(row, row + dimension_);
}

double EmbeddingTable::CosineAt(size_t i, size_t j) const {
  const float *a = data_.data() + i * dimension_;
  const float *b = data_.data() + j * dimension_;
  double dot = 0;
  for (int d = 0; d < dimension_; ++d) dot += static_cast<double>(a[d]) * b[d];
  return std::clamp(dot / (norms_[i] * norms_[j]), -1.0, 1.0);
}

NeighborSet EmbeddingTable::KNearest(std::string_view query, int k) const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  auto it = index_.find(query);
  if (it == index_.end()) throw OutOfVocabulary(query);
  const size_t q = static_cast<size_t>(it->second);

  std::vector<std::pair<double, size_t>> scored;
  scored.reserve(tokens_.size());
  for (size_t i = 0; i < tokens_.size(); ++i) {
    if (i != q) scored.emplace_back(CosineAt(q, i), i);
  }
  auto better = [&](const auto &a, const auto &b) {
    if (a.first != b.first) return a.first > b.first;
    return tokens_[a.second] < tokens_[b.second];
  };
  size_t take = std::min(static_cast<size_t>(k), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                    better);

  NeighborSet set;
  set.query = std::string(query);
  for (size_t i = 0; i < take; ++i) {
    set.neighbors.push_back({tokens_[scored[i].second], scored[i].first});
  }
  return set;
}

void WriteNeighborCache(std::span<const NeighborSet> sets,
                        const std::filesystem::path &path) {
  std::ostringstream out;
  for (const auto &set : sets) {
    out << set.query;
    for (const auto &n : set.neighbors) {
      out << '\t' << n.token << ':' << FormatDouble(n.cosine);
    }
    out << '\n';
  }
  WriteFileAtomically(path, out.str());
}

std::vector<NeighborSet> ReadNeighborCache(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<NeighborSet> sets;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    auto fields = Split(view, '\t');
    NeighborSet set;
    set.query = std::string(fields[0]);
    for (size_t i = 1; i < fields.size(); ++i) {
      // Tokens may themselves contain ':'; the score follows the last one.
      size_t colon = fields[i].rfind(':');
      double cosine;
      if (colon == std::string_view::npos ||
          !ParseDouble(fields[i].substr(colon + 1), &cosine)) {
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                 ": expected token:cosine");
      }
      set.neighbors.push_back({std::string(fields[i].substr(0, colon)), cosine});
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

std::optional<std::vector<std::string>> TableNeighbors::Neighbors(
    std::string_view w, int k) const {
  if (!table_.Contains(w)) return std::nullopt;
  std::vector<std::string> out;
  for (auto &n : table_.KNearest(w, k).neighbors) out.push_back(std::move(n.token));
  return out;
}

CachedNeighbors::CachedNeighbors(std::vector<NeighborSet> sets) {
  for (auto &set : sets) {
    std::vector<std::string> tokens;
    for (auto &n : set.neighbors) tokens.push_back(std::move(n.token));
    lists_.emplace(std::move(set.query), std::move(tokens));
  }
}

std::optional<std::vector<std::string>> CachedNeighbors::Neighbors(
    std::string_view w, int k) const {
  auto it = lists_.find(w);
  if (it == lists_.end()) return std::nullopt;
  const auto &all = it->second;
  size_t take = std::min(all.size(), static_cast<size_t>(std::max(k, 0)));
  return std::vector<std::string>(all.begin(), all.begin() + take);
}

}  // namespace noncomp
