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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "noncomp/corpus_counts.h"

namespace noncomp {
namespace {

ContingencyTable RandomTable(std::mt19937_64 &rng, int64_t max_cell) {
  std::uniform_int_distribution<int64_t> cell(0, max_cell);
  return {cell(rng), cell(rng), cell(rng), cell(rng)};
}

TEST(ContingencyTest, MarginalArithmetic) {
  // C(w1) = 30, C(w2) = 40, C(w1,w2) = 10, N = 100.
  std::vector<std::vector<std::string>> corpus;
  for (int i = 0; i < 10; ++i) corpus.push_back({"x", "y"});
  for (int i = 0; i < 20; ++i) corpus.push_back({"x", "p"});
  for (int i = 0; i < 30; ++i) corpus.push_back({"q", "y"});
  for (int i = 0; i < 40; ++i) corpus.push_back({"r", "s"});
  auto stats = BuildCounts(corpus);
  ASSERT_EQ(stats.total_pairs(), 100);
  auto t = Contingency(stats, "x", "y");
  EXPECT_EQ(t.o11, 10);
  EXPECT_EQ(t.o12, 20);
  EXPECT_EQ(t.o21, 30);
  EXPECT_EQ(t.o22, 40);
  EXPECT_EQ(Contingency(stats, "y", "x").o11, 0);
}

TEST(ContingencyTest, WholeCorpusPair) {
  std::vector<std::vector<std::string>> corpus(6, {"a", "b"});
  auto stats = BuildCounts(corpus);
  // C(a) = C(b) = 6 = N.
  auto t = Contingency(stats, "a", "b");
  EXPECT_EQ(t.o11, 6);
  EXPECT_EQ(t.o12, 0);
  EXPECT_EQ(t.o21, 0);
  EXPECT_EQ(t.o22, 0);
}

TEST(ContingencyTest, NegativeCellsClamped) {
  // Every token is counted as a unigram, so C(a) + C(b) can exceed N.
  // N = 1, C(a) = C(b) = 2, so o22 = 1 - 1 - 1 - 1 < 0.
  std::vector<std::vector<std::string>> corpus = {{"a"}, {"b"}, {"a", "b"}};
  auto stats = BuildCounts(corpus);
  int64_t clamped = 0;
  auto t = Contingency(stats, "a", "b", &clamped);
  EXPECT_EQ(t.o11, 1);
  EXPECT_EQ(t.o22, 0);
  EXPECT_EQ(clamped, 1);
}

TEST(PmiTest, Independence) {
  ContingencyTable t{1, 9, 99, 891};
  EXPECT_NEAR(Pmi(t), 0.0, 1e-12);
}

TEST(PmiTest, PerfectAssociation) {
  ContingencyTable t{10, 0, 0, 90};
  EXPECT_DOUBLE_EQ(Pmi(t), std::log2(10.0));
  EXPECT_EQ(Npmi(t), 1.0);
  ContingencyTable all{7, 0, 0, 0};
  EXPECT_EQ(Npmi(all), 1.0);
}

TEST(PmiTest, UnseenPair) {
  ContingencyTable t{0, 5, 5, 90};
  EXPECT_TRUE(std::isinf(Pmi(t)) && Pmi(t) < 0);
  EXPECT_EQ(Npmi(t), -1.0);
  EXPECT_EQ(TScore(t), 0.0);
}

TEST(ChiSquaredTest, ClosedForm) {
  ContingencyTable t{10, 20, 30, 40};
  EXPECT_NEAR(ChiSquared(t), 0.7937, 1e-4);
  EXPECT_DOUBLE_EQ(ChiSquared(t), 100.0 * 200 * 200 / (30.0 * 70 * 40 * 60));
}

TEST(ChiSquaredTest, DegenerateTable) {
  try {
    ChiSquared({5, 0, 0, 0});
    FAIL();
  } catch (const std::invalid_argument &e) {
    EXPECT_STREQ(e.what(), "degenerate table");
  }
  auto s = ComputeAssociation({5, 0, 0, 0});
  EXPECT_TRUE(s.degenerate);
  EXPECT_EQ(s.chi_squared, 0.0);
}

TEST(AssociationTest, ObservedEqualsExpected) {
  ContingencyTable t{4, 6, 16, 24};
  ASSERT_DOUBLE_EQ(t.e11(), 4.0);
  EXPECT_NEAR(LogLikelihoodRatio(t), 0.0, 1e-12);
  EXPECT_NEAR(TScore(t), 0.0, 1e-12);
  EXPECT_NEAR(ChiSquared(t), 0.0, 1e-12);
}

TEST(DiceTest, Substitution) {
  // o11 = 5, R1 = 10, C1 = 10.
  EXPECT_DOUBLE_EQ(Dice({5, 5, 5, 85}), 0.5);
}

TEST(AssociationPropertyTest, ChiSquaredMatchesCellSum) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    auto t = RandomTable(rng, 1 + rng() % 10000);
    if (t.r1() == 0 || t.r2() == 0 || t.c1() == 0 || t.c2() == 0) continue;
    double oracle = 0;
    int64_t o[4] = {t.o11, t.o12, t.o21, t.o22};
    double row[2] = {static_cast<double>(t.o11 + t.o12),
                     static_cast<double>(t.o21 + t.o22)};
    double col[2] = {static_cast<double>(t.o11 + t.o21),
                     static_cast<double>(t.o12 + t.o22)};
    double n = row[0] + row[1];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double e = row[i] * col[j] / n;
        double d = static_cast<double>(o[2 * i + j]) - e;
        oracle += d * d / e;
      }
    }
    double got = ChiSquared(t);
    EXPECT_NEAR(got, oracle, 1e-9 * std::max(1.0, std::abs(oracle)));
    EXPECT_GE(got, 0.0);
    ++checked;
  }
  EXPECT_GT(checked, 9000);
}

TEST(AssociationPropertyTest, RangesAndTransposeInvariance) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 10000; ++trial) {
    auto t = RandomTable(rng, 1 + rng() % 1000);
    if (t.n() == 0) continue;
    auto s = ComputeAssociation(t);
    EXPECT_GE(s.npmi, -1.0);
    EXPECT_LE(s.npmi, 1.0);
    if (t.o11 > 0) {
      bool perfect = t.o11 == t.r1() && t.o11 == t.c1();
      EXPECT_EQ(s.npmi == 1.0, perfect);
    }
    EXPECT_GE(s.dice, 0.0);
    EXPECT_LE(s.dice, 1.0);
    EXPECT_GE(s.llr, 0.0);
    auto tt = t.Transposed();
    EXPECT_NEAR(LogLikelihoodRatio(tt), s.llr, 1e-9 * std::max(1.0, s.llr));
    if (!s.degenerate) {
      EXPECT_NEAR(ChiSquared(tt), s.chi_squared,
                  1e-9 * std::max(1.0, s.chi_squared));
    }
  }
}

TEST(AssociationPropertyTest, LlrZeroOnlyAtIndependence) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int64_t> small(1, 20);
  for (int trial = 0; trial < 2000; ++trial) {
    // Independent table: outer product of two marginal vectors.
    int64_t a = small(rng), b = small(rng), c = small(rng), d = small(rng);
    ContingencyTable ind{a * c, a * d, b * c, b * d};
    EXPECT_NEAR(LogLikelihoodRatio(ind), 0.0, 1e-9);
    ContingencyTable off{a * c + 1, a * d, b * c, b * d + 1};
    bool equal = off.o11 * off.o22 == off.o12 * off.o21;
    if (!equal) {
      EXPECT_GT(LogLikelihoodRatio(off), 1e-9);
    }
  }
}

}  // namespace
}  // namespace noncomp
