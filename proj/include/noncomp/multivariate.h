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

// Per-compound feature vectors and the scores that combine them.
//
// Each feature column is modelled as an independent normal N(mu_i, s_i^2)
// fitted by maximum likelihood. The multivariate non-compositionality score
// rewards compounds that sit to the right of every mean and in a
// low-density region:
//
//   nc        = prod_i max(0, v_i - mu_i)      * (1 - p(v))
//   nc_smooth = prod_i ln(1 + e^(v_i - mu_i))  * (1 - p(v))
//
// By default p(v) = prod_i phi((v_i - mu_i) / s_i) with phi the standard
// normal density, which keeps p(v) below (2 pi)^(-n/2) and the score
// nonnegative. DensityMode::kRaw uses the unstandardised density product.

#ifndef NONCOMP_MULTIVARIATE_H_
#define NONCOMP_MULTIVARIATE_H_

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace noncomp {

struct Compound {
  std::string w1;
  std::string w2;

  std::string Joined() const { return w1 + "_" + w2; }
  auto operator<=>(const Compound &) const = default;
};

enum class Transform { kNone, kLog, kGaussianize };

std::string_view TransformName(Transform t);

// Compounds x named features, stored row-major. Rows may carry flags such
// as "oov_head"; cells are never missing.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(std::vector<std::string> feature_names);

  void AddRow(Compound compound, std::vector<double> values,
              std::vector<std::string> flags = {});

  size_t rows() const { return compounds_.size(); }
  size_t cols() const { return names_.size(); }
  const std::vector<std::string> &feature_names() const { return names_; }
  const Compound &compound(size_t row) const { return compounds_[row]; }
  const std::vector<Compound> &compounds() const { return compounds_; }
  const std::vector<std::string> &flags(size_t row) const { return flags_[row]; }

  double at(size_t row, size_t col) const { return values_[row * cols() + col]; }
  std::span<const double> row(size_t r) const {
    return {values_.data() + r * cols(), cols()};
  }

  // -1 when absent.
  int FeatureIndex(std::string_view name) const;
  std::vector<double> Column(size_t col) const;
  std::vector<double> Column(std::string_view name) const;

  Transform transform(size_t col) const { return transforms_[col]; }
  double log_shift(size_t col) const { return shifts_[col]; }
  void SetColumn(size_t col, std::span<const double> values,
                 Transform transform, double log_shift = 0.0);

  // Sub-matrix with the named columns in the given order. Throws
  // std::invalid_argument naming every missing feature.
  FeatureMatrix Select(std::span<const std::string> names) const;

  // Throws std::invalid_argument on a non-finite cell.
  void Validate() const;

 private:
  std::vector<std::string> names_;
  std::vector<Compound> compounds_;
  std::vector<std::vector<std::string>> flags_;
  std::vector<double> values_;
  std::vector<Transform> transforms_;
  std::vector<double> shifts_;
};

struct JarqueBeraResult {
  double statistic = 0;
  double skewness = 0;
  double kurtosis = 0;
};

// JB = m/6 (S^2 + (K - 3)^2 / 4) with population-moment skewness and
// kurtosis. Requires m >= 8 and nonzero variance.
JarqueBeraResult JarqueBera(std::span<const double> column);

// 5% critical value of chi-squared with two degrees of freedom.
inline constexpr double kJarqueBeraCritical5 = 5.991464547107979;

inline constexpr double kLogShift = 1e-12;

struct LogTransformResult {
  std::vector<double> values;
  // kLogShift when the column contained a zero, else 0.
  double shift = 0;
};

// Natural log. Throws on negative input.
LogTransformResult LogTransform(std::span<const double> column);
// Replays a transform with a known shift.
std::vector<double> LogTransform(std::span<const double> column, double shift);

// Rank-based inverse normal transform: Phi^-1((rank - 0.5) / m) with
// average ranks for ties. Requires m >= 3.
std::vector<double> Gaussianize(std::span<const double> column);

struct GaussianParams {
  std::vector<std::string> features;
  std::vector<double> mu;
  std::vector<double> sigma2;
  // Transform applied to each column before fitting.
  std::vector<Transform> transforms;
  std::vector<double> log_shifts;

  size_t size() const { return mu.size(); }
};

// Column means and population (divide-by-m) variances. Throws naming the
// feature when a column is constant.
GaussianParams FitGaussians(const FeatureMatrix &matrix);

double NormalDensity(double x, double mu, double sigma2);

// prod_i N(v_i; mu_i, sigma2_i).
double MultivariateDensity(std::span<const double> v,
                           const GaussianParams &params);

enum class DensityMode { kStandardized, kRaw };

double Softplus(double x);

double NcMult(double comp_err, double sdma1, double npmi);
// Product over an arbitrary feature subset.
double NcMult(std::span<const double> factors);

double NcScore(std::span<const double> v, const GaussianParams &params,
               bool smooth, DensityMode mode = DensityMode::kStandardized);

// Features whose Spearman correlation with `gold` is strictly positive, in
// matrix order. Throws when none qualify.
std::vector<std::string> SelectFeatures(const FeatureMatrix &matrix,
                                        std::span<const double> gold);

// Which columns feed the combined models and how each is transformed.
struct PipelineOptions {
  std::vector<std::string> features = {"comp_err", "sdma1", "npmi"};
  std::vector<std::string> log_features = {"comp_err"};
  bool gaussianize_all = false;
  DensityMode density = DensityMode::kStandardized;
};

// Selects and transforms the configured columns.
FeatureMatrix PrepareFeatures(const FeatureMatrix &matrix,
                              const PipelineOptions &options);

// Selects params.features and applies their recorded transforms.
FeatureMatrix ApplyTransforms(const FeatureMatrix &matrix,
                              const GaussianParams &params);

inline const std::vector<std::string> &CombinedModels() {
  static const std::vector<std::string> kModels = {"nc_mult", "nc",
                                                   "nc_smooth"};
  return kModels;
}

// Scores every row with `model`: a raw feature column name, or one of
// nc_mult / nc / nc_smooth. Combined models use `params` when given
// (fitted features and transforms) and otherwise fit `options` on the fly.
std::vector<double> ModelScores(const FeatureMatrix &matrix,
                                std::string_view model,
                                const PipelineOptions &options,
                                const GaussianParams *params = nullptr);

}  // namespace noncomp

#endif  // NONCOMP_MULTIVARIATE_H_
