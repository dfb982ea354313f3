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

#include "noncomp/evaluation.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "gtest/gtest.h"

namespace noncomp {
namespace {

using Vec = std::vector<double>;

std::filesystem::path WriteTemp(const std::string &name, const std::string &text) {
  auto path = std::filesystem::temp_directory_path() / ("noncomp_eval_" + name);
  std::ofstream out(path);
  out << text;
  return path;
}

GoldEntry Votes(std::string w1, std::vector<bool> nc, std::vector<bool> conv) {
  return {{std::move(w1), "x"}, std::move(nc), std::move(conv), std::nullopt};
}

TEST(VoteScoreTest, Examples) {
  EXPECT_EQ(VoteScore(Votes("a", {1, 1, 1, 1}, {0, 0, 0, 0})), 4);
  EXPECT_EQ(VoteScore(Votes("a", {0, 0, 0, 0}, {0, 0, 0, 0})), 0);
  auto stat_only = Votes("a", {0, 0, 0, 0}, {1, 0, 0, 0});
  EXPECT_EQ(VoteScore(stat_only, VoteCriterion::kNoncompOnly), 0);
  EXPECT_EQ(VoteScore(stat_only, VoteCriterion::kIdiosyncrasyAny), 1);
  GoldEntry graded{{"a", "b"}, {}, {}, 3.0};
  EXPECT_THROW(VoteScore(graded), std::invalid_argument);
}

TEST(GoldPositivesTest, Threshold) {
  GoldDataset d;
  d.entries = {Votes("a", {1, 1, 1, 0}, {}), Votes("b", {1, 0, 0, 0}, {}),
               Votes("c", {0, 0, 0, 0}, {}), Votes("d", {0, 1, 0, 1}, {})};
  EXPECT_EQ(GoldPositives(d).size(), 2u);
  EXPECT_EQ(GoldPositives(d, 0).size(), 4u);
  EXPECT_EQ(kDefaultVoteThreshold, 2);
}

TEST(LoadVoteGoldTest, TenRowFixture) {
  auto path = WriteTemp("votes.tsv",
                        "w1\tw2\tn1\tn2\tn3\tn4\tc1\tc2\tc3\tc4\n"
                        "Red\ttape\t1\t1\t1\t1\t0\t0\t0\t0\n"
                        "cash\tcow\t1\t1\t0\t0\t0\t0\t0\t0\n"
                        "olive\toil\t0\t0\t0\t0\t1\t1\t1\t1\n"
                        "swimming\tpool\t1\t0\t0\t0\t1\t0\t0\t0\n"
                        "# comment\n"
                        "night\towl\t1\t1\t1\t0\t0\t0\t0\t0\n"
                        "car\tpark\t0\t0\t0\t0\t0\t0\t0\t0\n"
                        "brick\twall\t0\t1\t0\t0\t0\t0\t1\t0\n"
                        "rat\trace\t0\t1\t1\t0\t0\t0\t0\t0\n"
                        "zebra\tcrossing\t0\t0\t1\t0\t1\t1\t0\t0\n"
                        "gold\tmine\t1\t0\t0\t0\t0\t0\t0\t0\n");
  auto gold = LoadVoteGold(path);
  ASSERT_EQ(gold.entries.size(), 10u);
  EXPECT_EQ(gold.judges, 4);
  EXPECT_EQ(gold.entries[0].compound, (Compound{"red", "tape"}));
  std::vector<int> nc, any;
  for (const auto &e : gold.entries) {
    nc.push_back(VoteScore(e));
    any.push_back(VoteScore(e, VoteCriterion::kIdiosyncrasyAny));
  }
  EXPECT_EQ(nc, (std::vector<int>{4, 2, 0, 1, 3, 0, 1, 2, 1, 1}));
  EXPECT_EQ(any, (std::vector<int>{4, 2, 4, 1, 3, 0, 2, 2, 3, 1}));
  auto pos = GoldPositives(gold);
  EXPECT_EQ(pos, (std::set<Compound>{{"red", "tape"}, {"cash", "cow"},
                                     {"night", "owl"}, {"rat", "race"}}));
  EXPECT_EQ(GoldPositives(gold, 2, VoteCriterion::kIdiosyncrasyAny).size(), 7u);
  std::filesystem::remove(path);
}

TEST(LoadVoteGoldTest, ColumnMappingAndErrors) {
  auto path = WriteTemp("votes2.tsv", "1\t0\ta\tb\n0\t0\tc\td\n");
  VoteColumns cols;
  cols.w1 = 2;
  cols.w2 = 3;
  cols.noncomp = {0, 1};
  cols.conventional = {};
  auto gold = LoadVoteGold(path, cols);
  ASSERT_EQ(gold.entries.size(), 2u);
  EXPECT_EQ(VoteScore(gold.entries[0]), 1);
  auto bad = WriteTemp("votes3.tsv", "a\tb\t1\t1\t0\t0\t0\t0\t0\t0\nc\td\t2\t0\t0\t0\t0\t0\t0\t0\n");
  EXPECT_THROW(LoadVoteGold(bad), std::runtime_error);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST(LoadGradedGoldTest, RangeChecked) {
  auto path = WriteTemp("graded.tsv", "w1\tw2\tscore\nfoo\tbar\t4.5\nbaz\tqux\t0\n");
  auto gold = LoadGradedGold(path);
  ASSERT_EQ(gold.entries.size(), 2u);
  EXPECT_EQ(*gold.entries[0].graded, 4.5);
  auto bad = WriteTemp("graded_bad.tsv", "foo\tbar\t5.5\n");
  EXPECT_THROW(LoadGradedGold(bad), std::runtime_error);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST(InvertGradedTest, Endpoints) {
  EXPECT_EQ(InvertGraded(5), 0);
  EXPECT_EQ(InvertGraded(0), 5);
  EXPECT_THROW(InvertGraded(5.01), std::out_of_range);
  Vec scores = {1.5, 4.0, 0.5, 3.0};
  std::vector<Compound> c = {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}};
  Vec inv;
  for (double s : scores) inv.push_back(InvertGraded(s));
  Vec neg;
  for (double s : scores) neg.push_back(-s);
  EXPECT_EQ(RankOrder(c, inv), RankOrder(c, neg));
}

TEST(RankOrderTest, DeterministicTieBreak) {
  std::vector<Compound> c = {{"b", "x"}, {"a", "z"}, {"a", "y"}, {"c", "c"}};
  Vec s = {1, 1, 1, 2};
  EXPECT_EQ(RankOrder(c, s), (std::vector<size_t>{3, 2, 1, 0}));
}

TEST(PrecisionAtKTest, Examples) {
  std::vector<Compound> r = {{"p", "1"}, {"n", "1"}, {"p", "2"}, {"n", "2"}};
  std::set<Compound> pos = {{"p", "1"}, {"p", "2"}};
  std::vector<int> ks = {3};
  EXPECT_NEAR(PrecisionAtK(r, pos, ks)[0].precision, 2.0 / 3, 1e-15);
  std::vector<int> one = {1};
  EXPECT_EQ(PrecisionAtK(r, pos, one)[0].precision, 1.0);
  std::vector<int> all = {1, 2, 4};
  for (const auto &p : PrecisionAtK(r, {}, all)) EXPECT_EQ(p.precision, 0.0);
  std::vector<int> big = {2, 10};
  auto curve = PrecisionAtK(r, pos, big);
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_TRUE(curve[1].clamped);
  EXPECT_EQ(curve[1].k, 4);
  EXPECT_EQ(DefaultKs(35), (std::vector<int>{10, 20, 30}));
}

TEST(PrecisionAtKTest, BruteForceRecount) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 60);
    std::vector<Compound> ranking;
    std::set<Compound> pos;
    for (int i = 0; i < n; ++i) {
      ranking.push_back({"w" + std::to_string(i), "h"});
      if (rng() % 3 == 0) pos.insert(ranking.back());
    }
    std::shuffle(ranking.begin(), ranking.end(), rng);
    std::vector<int> ks;
    for (int k = 1; k <= n; k += 1 + static_cast<int>(rng() % 5)) ks.push_back(k);
    auto curve = PrecisionAtK(ranking, pos, ks);
    ASSERT_EQ(curve.size(), ks.size());
    for (size_t i = 0; i < ks.size(); ++i) {
      int hits = 0;
      for (int j = 0; j < ks[i]; ++j) hits += pos.count(ranking[j]) ? 1 : 0;
      EXPECT_EQ(curve[i].k, ks[i]);
      EXPECT_EQ(curve[i].precision, static_cast<double>(hits) / ks[i]);
      EXPECT_GE(curve[i].precision, 0.0);
      EXPECT_LE(curve[i].precision, 1.0);
    }
  }
}

TEST(SpearmanTest, Examples) {
  EXPECT_NEAR(Spearman(Vec{1, 2, 3, 4}, Vec{1, 3, 2, 4}).rho, 0.8, 1e-12);
  EXPECT_NEAR(Spearman(Vec{1, 2, 3}, Vec{10, 20, 30}).rho, 1.0, 1e-15);
  EXPECT_NEAR(Spearman(Vec{1, 2, 3}, Vec{3, 2, 1}).rho, -1.0, 1e-15);
  try {
    Spearman(Vec{1, 1, 1}, Vec{1, 2, 3});
    FAIL();
  } catch (const std::invalid_argument &e) {
    EXPECT_STREQ(e.what(), "undefined correlation");
  }
  EXPECT_THROW(Spearman(Vec{1, 2}, Vec{1, 2}), std::invalid_argument);
}

TEST(SpearmanTest, PValuesMatchReference) {
  // Reference values from an established statistics library.
  auto a = Spearman(Vec{1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                    Vec{2, 1, 4, 3, 6, 5, 8, 7, 10, 9});
  EXPECT_NEAR(a.rho, 0.9393939393939393, 1e-14);
  EXPECT_NEAR(a.p_value, 5.484052998513666e-05, 1e-12);
  auto b = Spearman(Vec{3.1, 1.2, 5.5, 2.2, 4.8, 0.3, 7.7, 6.1},
                    Vec{2.0, 1.0, 4.0, 4.0, 3.0, 1.5, 6.0, 5.0});
  EXPECT_NEAR(b.rho, 0.8742671711966791, 1e-14);
  EXPECT_NEAR(b.p_value, 0.004512385603651026, 1e-12);
  auto c = Spearman(Vec{1, 2, 3, 4, 5}, Vec{2, 1, 4, 3, 5});
  EXPECT_NEAR(c.p_value, 0.10408803866182788, 1e-12);
  auto exact = Spearman(Vec{1, 2, 3, 4, 5}, Vec{2, 1, 4, 3, 5},
                        PValueMethod::kExactPermutation);
  EXPECT_NEAR(exact.p_value, 16.0 / 120, 1e-15);
  Vec big(13);
  for (int i = 0; i < 13; ++i) big[i] = i;
  EXPECT_THROW(Spearman(big, big, PValueMethod::kExactPermutation),
               std::invalid_argument);
  auto perfect = Spearman(big, big);
  EXPECT_GT(perfect.p_value, 0.0);
  EXPECT_LE(perfect.p_value, 1e-300);
}

// Oracle ranks: count of smaller values plus half the ties.
Vec OracleRanks(const Vec &v) {
  Vec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double x : v) {
      less += x < v[i];
      equal += x == v[i];
    }
    r[i] = less + (equal + 1) / 2;
  }
  return r;
}

double OraclePearson(const Vec &x, const Vec &y) {
  long double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

TEST(SpearmanPropertyTest, TieFreeMatchesSumOfSquaredDifferences) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 500; ++trial) {
    int m = 3 + static_cast<int>(rng() % 40);
    Vec x(m), y(m);
    for (int i = 0; i < m; ++i) {
      x[i] = i;
      y[i] = i;
    }
    std::shuffle(x.begin(), x.end(), rng);
    std::shuffle(y.begin(), y.end(), rng);
    double d2 = 0;
    for (int i = 0; i < m; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    double want = 1 - 6 * d2 / (static_cast<double>(m) * (m * m - 1));
    double rho = Spearman(x, y).rho;
    EXPECT_NEAR(rho, want, 1e-12);
    EXPECT_NEAR(Spearman(x, x).rho, 1.0, 1e-12);
    Vec neg(m);
    for (int i = 0; i < m; ++i) neg[i] = -x[i];
    EXPECT_NEAR(Spearman(x, neg).rho, -1.0, 1e-12);
    Vec mono(m);
    for (int i = 0; i < m; ++i) mono[i] = std::exp(x[i] / 7.0) - 3;
    EXPECT_NEAR(Spearman(mono, y).rho, rho, 1e-12);
  }
}

TEST(SpearmanPropertyTest, TiedDataMatchesPearsonOfAverageRanks) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 500; ++trial) {
    int m = 3 + static_cast<int>(rng() % 30);
    Vec x(m), y(m);
    for (int i = 0; i < m; ++i) {
      x[i] = static_cast<double>(rng() % 5);
      y[i] = static_cast<double>(rng() % 4);
    }
    Vec rx = OracleRanks(x), ry = OracleRanks(y);
    EXPECT_EQ(AverageRanks(x), rx);
    bool constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
                    std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    if (constant) {
      EXPECT_THROW(Spearman(x, y), std::invalid_argument);
      continue;
    }
    auto r = Spearman(x, y);
    EXPECT_NEAR(r.rho, OraclePearson(rx, ry), 1e-12);
    EXPECT_GT(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
  }
}

TEST(HistogramTest, MassesAndFractions) {
  Vec v = {0, 1, 2, 3, 4, 5, 6, 7, 8, 10};
  std::vector<bool> pos = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  auto h = Histogram(v, pos, 2);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].count, 5);
  EXPECT_EQ(h[1].count, 5);
  EXPECT_EQ(h[0].positive_fraction, 0.0);
  EXPECT_EQ(h[1].positive_fraction, 1.0);
  EXPECT_EQ(h[0].mass + h[1].mass, 1.0);
  EXPECT_EQ(h[1].hi, 10.0);
}

TEST(CsvTest, Layout) {
  EvalReport a{"nc", {{10, 0.5, false}, {20, 0.25, false}}, std::nullopt, 3};
  EvalReport b{"add", {}, SpearmanResult{0.5, 0.01}, 0};
  std::vector<EvalReport> reports = {a, b};
  auto p = std::filesystem::temp_directory_path() / "noncomp_eval_p.csv";
  auto s = std::filesystem::temp_directory_path() / "noncomp_eval_s.csv";
  WritePrecisionCsv(reports, p);
  WriteSpearmanCsv(reports, s);
  auto slurp = [](const std::filesystem::path &path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(p), "model,k,precision\nnc,10,0.5\nnc,20,0.25\n");
  EXPECT_EQ(slurp(s), "model,rho,pvalue\nadd,0.5,0.01\n");
  std::filesystem::remove(p);
  std::filesystem::remove(s);
}

}  // namespace
}  // namespace noncomp
