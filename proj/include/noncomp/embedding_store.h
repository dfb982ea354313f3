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

// Dense word vectors in the textual word2vec/fastText format and exact
// cosine nearest-neighbour search over them.

#ifndef NONCOMP_EMBEDDING_STORE_H_
#define NONCOMP_EMBEDDING_STORE_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noncomp/corpus_counts.h"

namespace noncomp {

inline constexpr int kDefaultNeighbors = 5;

class OutOfVocabulary : public std::out_of_range {
 public:
  explicit OutOfVocabulary(std::string_view token)
      : std::out_of_range("out-of-vocabulary: " + std::string(token)) {}
};

struct Neighbor {
  std::string token;
  double cosine = 0.0;
};

// Sorted by descending cosine, ties by token; never contains the query.
struct NeighborSet {
  std::string query;
  std::vector<Neighbor> neighbors;
};

// Cosine similarity. Throws std::invalid_argument on a zero-norm input or a
// dimension mismatch.
double Cosine(std::span<const double> a, std::span<const double> b);

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dimension) : dimension_(dimension) {}

  // Optional "<count> <dim>" header, then "token v1 ... vdim" per line.
  static EmbeddingTable Load(const std::filesystem::path &path);
  static EmbeddingTable Parse(std::istream &in, std::string_view source);

  // Returns false (and counts it) for duplicates and all-zero vectors.
  bool Add(std::string token, std::span<const double> vector);

  int dimension() const { return dimension_; }
  size_t size() const { return tokens_.size(); }
  bool Contains(std::string_view token) const;
  // Copy of the stored vector; throws OutOfVocabulary.
  std::vector<double> Vector(std::string_view token) const;
  const std::string &token(size_t i) const { return tokens_[i]; }

  int64_t duplicates() const { return duplicates_; }
  int64_t zero_rows() const { return zero_rows_; }

  NeighborSet KNearest(std::string_view query, int k) const;

 private:
  double CosineAt(size_t i, size_t j) const;

  int dimension_ = 0;
  std::vector<std::string> tokens_;
  std::vector<float> data_;
  std::vector<double> norms_;
  StringMap<int32_t> index_;
  int64_t duplicates_ = 0;
  int64_t zero_rows_ = 0;
};

// Exact top-k by cosine over the whole table, excluding `query` itself.
// The result has min(k, size - 1) entries.
inline NeighborSet KNearest(const EmbeddingTable &table, std::string_view query,
                            int k) {
  return table.KNearest(query, k);
}

// "w<TAB>n1:cos1<TAB>...<TAB>nk:cosk", one query per line.
void WriteNeighborCache(std::span<const NeighborSet> sets,
                        const std::filesystem::path &path);
std::vector<NeighborSet> ReadNeighborCache(const std::filesystem::path &path);

// Where substitution candidates come from: a live table or a cache file.
class NeighborSource {
 public:
  virtual ~NeighborSource() = default;
  // Up to k neighbour tokens of w, or nullopt when w has no vector.
  virtual std::optional<std::vector<std::string>> Neighbors(std::string_view w,
                                                            int k) const = 0;
};

class TableNeighbors : public NeighborSource {
 public:
  explicit TableNeighbors(const EmbeddingTable &table) : table_(table) {}
  std::optional<std::vector<std::string>> Neighbors(std::string_view w,
                                                    int k) const override;

 private:
  const EmbeddingTable &table_;
};

// Serves lookups from a neighbour cache. Queries absent from the cache are
// treated as out-of-vocabulary.
class CachedNeighbors : public NeighborSource {
 public:
  explicit CachedNeighbors(std::vector<NeighborSet> sets);
  std::optional<std::vector<std::string>> Neighbors(std::string_view w,
                                                    int k) const override;

 private:
  StringMap<std::vector<std::string>> lists_;
};

}  // namespace noncomp

#endif  // NONCOMP_EMBEDDING_STORE_H_
