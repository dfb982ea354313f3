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

// Substitution-driven association: how much more probable a pair is than
// the pairs obtained by swapping its words for their nearest neighbours in
// embedding space.
//
// With S(w) the k nearest neighbours of w and p(a, b) the add-one smoothed
// pair probability (C(a,b) + 1) / (N + L):
//
//   p_m = sum over w1' in S(w1)              of p(w1', w2)
//   p_h = sum over w2' in S(w2)              of p(w1,  w2')
//   p_c = sum over w1' in S(w1), w2' in S(w2) of p(w1', w2')
//
//   sdma1 = ln(p / p_m), sdma2 = ln(p / p_h), sdma3 = ln(p / p_c)
//
// A word without a vector contributes k unseen alternatives.

#ifndef NONCOMP_SUBSTITUTABILITY_H_
#define NONCOMP_SUBSTITUTABILITY_H_

#include <string_view>

#include "noncomp/corpus_counts.h"
#include "noncomp/embedding_store.h"

namespace noncomp {

struct AlternativesProbability {
  double p_m = 0;
  double p_h = 0;
  double p_c = 0;
  // w1 (the substituted side of p_m) had no neighbour set.
  bool oov_modifier = false;
  // w2 (the substituted side of p_h) had no neighbour set.
  bool oov_head = false;
};

struct SdmaScores {
  double sdma1 = 0;
  double sdma2 = 0;
  double sdma3 = 0;
};

AlternativesProbability ProbAlternatives(const BigramStatistics &stats,
                                         const NeighborSource &neighbors,
                                         std::string_view w1,
                                         std::string_view w2,
                                         int k = kDefaultNeighbors);

SdmaScores Sdma(SmoothedPairProbability pair,
                const AlternativesProbability &alts);

struct SdmaOptions {
  int k = kDefaultNeighbors;
  // Use C(w1,w2)/N for the numerator instead of the smoothed estimate.
  // Unseen pairs still fall back to the smoothed floor.
  bool raw_numerator = false;
};

struct SdmaResult {
  SdmaScores scores;
  AlternativesProbability alternatives;
  // raw_numerator was requested but the pair was unseen.
  bool numerator_floored = false;
};

SdmaResult ComputeSdma(const BigramStatistics &stats,
                       const NeighborSource &neighbors, std::string_view w1,
                       std::string_view w2, const SdmaOptions &options = {});

}  // namespace noncomp

#endif  // NONCOMP_SUBSTITUTABILITY_H_
