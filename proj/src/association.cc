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

#include "noncomp/association.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace noncomp {
namespace {

double Expected(int64_t row, int64_t col, int64_t n) {
  return static_cast<double>(row) * static_cast<double>(col) /
         static_cast<double>(n);
}

double CellTerm(int64_t observed, double expected) {
  if (observed == 0) return 0.0;
  double o = static_cast<double>(observed);
  return o * std::log(o / expected);
}

}  // namespace

double ContingencyTable::e11() const { return Expected(r1(), c1(), n()); }
double ContingencyTable::e12() const { return Expected(r1(), c2(), n()); }
double ContingencyTable::e21() const { return Expected(r2(), c1(), n()); }
double ContingencyTable::e22() const { return Expected(r2(), c2(), n()); }

ContingencyTable Contingency(const BigramStatistics &stats, std::string_view w1,
                             std::string_view w2, int64_t *clamped) {
  const int64_t n = stats.total_pairs();
  if (n == 0) throw std::invalid_argument("no word pairs (N = 0)");
  auto clamp = [&](int64_t v) {
    if (v >= 0) return v;
    if (clamped != nullptr) ++*clamped;
    return int64_t{0};
  };
  ContingencyTable t;
  t.o11 = stats.Bigram(w1, w2);
  t.o12 = clamp(stats.Unigram(w1) - t.o11);
  t.o21 = clamp(stats.Unigram(w2) - t.o11);
  t.o22 = clamp(n - t.o11 - t.o12 - t.o21);
  return t;
}

double Pmi(const ContingencyTable &t) {
  if (t.o11 == 0) return -std::numeric_limits<double>::infinity();
  // log2((o11/n) / ((R1/n)(C1/n))) = log2(o11 n / (R1 C1))
  return std::log2(static_cast<double>(t.o11)) +
         std::log2(static_cast<double>(t.n())) -
         std::log2(static_cast<double>(t.r1())) -
         std::log2(static_cast<double>(t.c1()));
}

double Npmi(const ContingencyTable &t) {
  if (t.o11 == 0) return -1.0;
  // Perfect association; also covers o11 = n where pmi and -log2(p) are 0.
  if (t.o11 == t.r1() && t.o11 == t.c1()) return 1.0;
  double h = -std::log2(static_cast<double>(t.o11) / static_cast<double>(t.n()));
  return std::clamp(Pmi(t) / h, -1.0, 1.0);
}

double TScore(const ContingencyTable &t) {
  if (t.o11 == 0) return 0.0;
  double o = static_cast<double>(t.o11);
  return (o - t.e11()) / std::sqrt(o);
}

double ChiSquared(const ContingencyTable &t) {
  if (t.r1() == 0 || t.r2() == 0 || t.c1() == 0 || t.c2() == 0) {
    throw std::invalid_argument("degenerate table");
  }
  double cross = static_cast<double>(t.o11) * static_cast<double>(t.o22) -
                 static_cast<double>(t.o12) * static_cast<double>(t.o21);
  double denom = static_cast<double>(t.r1()) * static_cast<double>(t.r2()) *
                 static_cast<double>(t.c1()) * static_cast<double>(t.c2());
  return static_cast<double>(t.n()) * cross * cross / denom;
}

double LogLikelihoodRatio(const ContingencyTable &t) {
  if (t.n() == 0) return 0.0;
  double sum = CellTerm(t.o11, t.e11()) + CellTerm(t.o12, t.e12()) +
               CellTerm(t.o21, t.e21()) + CellTerm(t.o22, t.e22());
  // Rounding can leave a tiny negative residue on independent tables.
  return std::max(0.0, 2.0 * sum);
}

double Dice(const ContingencyTable &t) {
  int64_t denom = t.r1() + t.c1();
  if (denom == 0) return 0.0;
  return 2.0 * static_cast<double>(t.o11) / static_cast<double>(denom);
}

AssociationScores ComputeAssociation(const ContingencyTable &t) {
  AssociationScores s;
  s.pmi = Pmi(t);
  s.npmi = Npmi(t);
  s.tscore = TScore(t);
  try {
    s.chi_squared = ChiSquared(t);
  } catch (const std::invalid_argument &) {
    s.chi_squared = 0.0;
    s.degenerate = true;
  }
  s.llr = LogLikelihoodRatio(t);
  s.dice = Dice(t);
  return s;
}

}  // namespace noncomp
