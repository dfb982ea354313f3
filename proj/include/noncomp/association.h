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

// Collocation association measures over a 2x2 contingency table.
//
//              w2      !w2
//     w1      o11      o12     R1
//    !w1      o21      o22     R2
//              C1       C2      n
//
// All measures use raw counts. PMI and NPMI are in bits; LLR uses natural
// logs with 0 ln 0 = 0.

#ifndef NONCOMP_ASSOCIATION_H_
#define NONCOMP_ASSOCIATION_H_

#include <cstdint>
#include <string_view>

#include "noncomp/corpus_counts.h"

namespace noncomp {

struct ContingencyTable {
  int64_t o11 = 0;
  int64_t o12 = 0;
  int64_t o21 = 0;
  int64_t o22 = 0;

  int64_t n() const { return o11 + o12 + o21 + o22; }
  int64_t r1() const { return o11 + o12; }
  int64_t r2() const { return o21 + o22; }
  int64_t c1() const { return o11 + o21; }
  int64_t c2() const { return o12 + o22; }

  // Expected count of each cell under independence of the marginals.
  double e11() const;
  double e12() const;
  double e21() const;
  double e22() const;

  ContingencyTable Transposed() const { return {o11, o21, o12, o22}; }
};

// o11 = C(w1,w2), o12 = C(w1) - o11, o21 = C(w2) - o11, o22 = N - rest.
// Negative cells are clamped to zero; `clamped`, when given, is incremented
// once per clamped cell. Throws std::invalid_argument when N = 0.
ContingencyTable Contingency(const BigramStatistics &stats, std::string_view w1,
                             std::string_view w2, int64_t *clamped = nullptr);

// -infinity when o11 = 0.
double Pmi(const ContingencyTable &t);
// pmi / -log2(o11/n); -1 when o11 = 0, 1 when o11 = n.
double Npmi(const ContingencyTable &t);
// (o11 - E11) / sqrt(o11); 0 when o11 = 0.
double TScore(const ContingencyTable &t);
// Closed 2x2 form. Throws std::invalid_argument("degenerate table") when any
// marginal is zero.
double ChiSquared(const ContingencyTable &t);
double LogLikelihoodRatio(const ContingencyTable &t);
// 2 o11 / (R1 + C1); 0 when both marginals are empty.
double Dice(const ContingencyTable &t);

struct AssociationScores {
  double pmi = 0;
  double npmi = 0;
  double tscore = 0;
  double chi_squared = 0;
  double llr = 0;
  double dice = 0;
  // Set when chi_squared could not be computed and was reported as 0.
  bool degenerate = false;
};

AssociationScores ComputeAssociation(const ContingencyTable &t);

}  // namespace noncomp

#endif  // NONCOMP_ASSOCIATION_H_
