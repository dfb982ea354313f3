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

// Gold standards and ranking metrics.
//
// Two kinds of gold data are supported: per-judge binary annotations (each
// judge marks a compound as non-compositional and/or conventionalised),
// evaluated by precision at k over a vote threshold; and graded
// compositionality scores in [0, 5], evaluated by Spearman correlation
// against 5 - score.

#ifndef NONCOMP_EVALUATION_H_
#define NONCOMP_EVALUATION_H_

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "noncomp/multivariate.h"

namespace noncomp {

enum class GoldKind { kVotes, kGraded };

enum class VoteCriterion {
  // Count a judge who marked the compound non-compositional.
  kNoncompOnly,
  // Count a judge who marked it non-compositional or conventionalised.
  kIdiosyncrasyAny,
};

struct GoldEntry {
  Compound compound;
  std::vector<bool> noncomp;       // one bit per judge (vote data only)
  std::vector<bool> conventional;  // one bit per judge (vote data only)
  std::optional<double> graded;    // graded data only
};

struct GoldDataset {
  GoldKind kind = GoldKind::kVotes;
  int judges = 0;
  std::vector<GoldEntry> entries;

  std::vector<Compound> Compounds() const;
};

// Zero-based column positions in a vote TSV.
struct VoteColumns {
  int w1 = 0;
  int w2 = 1;
  std::vector<int> noncomp = {2, 3, 4, 5};
  std::vector<int> conventional = {6, 7, 8, 9};

  // w1, w2, `judges` noncomp bits, then `judges` conventionalisation bits.
  static VoteColumns Default(int judges);
};

inline constexpr int kDefaultVoteThreshold = 2;
inline constexpr double kGradedMax = 5.0;

// Lines starting with '#' and blank lines are skipped. A first line whose
// vote columns are not 0/1 is treated as a header.
GoldDataset LoadVoteGold(const std::filesystem::path &path,
                         const VoteColumns &columns = VoteColumns());
// w1<TAB>w2<TAB>score; scores must lie in [0, 5].
GoldDataset LoadGradedGold(const std::filesystem::path &path);

// Number of judges satisfying the criterion. Throws for graded entries.
int VoteScore(const GoldEntry &entry,
              VoteCriterion criterion = VoteCriterion::kNoncompOnly);

std::set<Compound> GoldPositives(
    const GoldDataset &dataset, int threshold = kDefaultVoteThreshold,
    VoteCriterion criterion = VoteCriterion::kNoncompOnly);

// 5 - score. Throws std::out_of_range outside [0, 5].
double InvertGraded(double score);

// Row indices sorted by score descending, then w1, then w2.
std::vector<size_t> RankOrder(std::span<const Compound> compounds,
                              std::span<const double> scores);

struct PrecisionPoint {
  int k = 0;
  double precision = 0;
  // The requested k exceeded the ranking length.
  bool clamped = false;
};

// |top-k n positives| / k for each k. ks larger than the ranking are
// clamped to its length; duplicates after clamping are dropped.
std::vector<PrecisionPoint> PrecisionAtK(std::span<const Compound> ranking,
                                         const std::set<Compound> &positives,
                                         std::span<const int> ks);

// 10, 20, ... up to `length`.
std::vector<int> DefaultKs(size_t length, int step = 10);

// Average (1-based) ranks; tied values share the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> values);

enum class PValueMethod {
  // t = rho sqrt((m-2)/(1-rho^2)) against Student-t(m-2), two-sided.
  kTApproximation,
  // Exhaustive permutation test; m <= 12 only.
  kExactPermutation,
};

struct SpearmanResult {
  double rho = 0;
  double p_value = 1;
};

// Pearson correlation of average ranks. Throws std::invalid_argument on
// unequal lengths, m < 3, or a constant input ("undefined correlation").
SpearmanResult Spearman(std::span<const double> xs, std::span<const double> ys,
                        PValueMethod method = PValueMethod::kTApproximation);

struct EvalReport {
  std::string model_name;
  std::vector<PrecisionPoint> p_at_k;
  std::optional<SpearmanResult> spearman;
  int positives = 0;
};

struct HistogramBin {
  double lo = 0;
  double hi = 0;
  int count = 0;
  // count / total.
  double mass = 0;
  int positives = 0;
  // positives / count; 0 for an empty bin.
  double positive_fraction = 0;
};

// Equal-width bins over [min, max]; the last bin is closed on the right.
// `positive` marks gold-positive rows and may be empty.
std::vector<HistogramBin> Histogram(std::span<const double> values,
                                    const std::vector<bool> &positive,
                                    int bins);

// model,k,precision
void WritePrecisionCsv(std::span<const EvalReport> reports,
                       const std::filesystem::path &path);
// model,rho,pvalue
void WriteSpearmanCsv(std::span<const EvalReport> reports,
                      const std::filesystem::path &path);

}  // namespace noncomp

#endif  // NONCOMP_EVALUATION_H_
