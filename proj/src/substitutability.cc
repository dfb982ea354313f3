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

#include "noncomp/substitutability.h"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace noncomp {
namespace {

// Substitutes for one side of the pair. An absent entry stands for an
// unknown word whose pairs all have count zero.
std::vector<std::optional<std::string>> Substitutes(
    const NeighborSource &neighbors, std::string_view w, int k, bool *oov) {
  std::vector<std::optional<std::string>> out;
  if (auto list = neighbors.Neighbors(w, k)) {
    for (auto &t : *list) out.emplace_back(std::move(t));
    *oov = false;
  } else {
    out.resize(static_cast<size_t>(k));
    *oov = true;
  }
  return out;
}

int64_t CountOf(const BigramStatistics &stats,
                const std::optional<std::string> &a,
                const std::optional<std::string> &b) {
  if (!a || !b) return 0;
  return stats.Bigram(*a, *b);
}

}  // namespace

AlternativesProbability ProbAlternatives(const BigramStatistics &stats,
                                         const NeighborSource &neighbors,
                                         std::string_view w1,
                                         std::string_view w2, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  AlternativesProbability alts;
  auto left = Substitutes(neighbors, w1, k, &alts.oov_modifier);
  auto right = Substitutes(neighbors, w2, k, &alts.oov_head);
  const std::optional<std::string> first(std::in_place, w1);
  const std::optional<std::string> second(std::in_place, w2);

  for (const auto &a : left) alts.p_m += stats.Smoothed(CountOf(stats, a, second));
  for (const auto &b : right) alts.p_h += stats.Smoothed(CountOf(stats, first, b));
  for (const auto &a : left) {
    for (const auto &b : right) alts.p_c += stats.Smoothed(CountOf(stats, a, b));
  }
  return alts;
}

SdmaScores Sdma(SmoothedPairProbability pair,
                const AlternativesProbability &alts) {
  if (!(pair.value > 0) || !(alts.p_m > 0) || !(alts.p_h > 0) ||
      !(alts.p_c > 0)) {
    throw std::invalid_argument("probabilities must be positive");
  }
  return {std::log(pair.value / alts.p_m), std::log(pair.value / alts.p_h),
          std::log(pair.value / alts.p_c)};
}

SdmaResult ComputeSdma(const BigramStatistics &stats,
                       const NeighborSource &neighbors, std::string_view w1,
                       std::string_view w2, const SdmaOptions &options) {
  SdmaResult result;
  result.alternatives = ProbAlternatives(stats, neighbors, w1, w2, options.k);
  SmoothedPairProbability pair = PairProbability(stats, w1, w2);
  if (options.raw_numerator) {
    int64_t count = stats.Bigram(w1, w2);
    if (count > 0 && stats.total_pairs() > 0) {
      pair.value = static_cast<double>(count) /
                   static_cast<double>(stats.total_pairs());
    } else {
      result.numerator_floored = true;
    }
  }
  result.scores = Sdma(pair, result.alternatives);
  return result;
}

}  // namespace noncomp
