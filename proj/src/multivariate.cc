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

#include "noncomp/multivariate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "noncomp/evaluation.h"

namespace noncomp {

std::string_view TransformName(Transform t) {
  switch (t) {
    case Transform::kNone:
      return "none";
    case Transform::kLog:
      return "log";
    case Transform::kGaussianize:
      return "gaussianize";
  }
  return "none";
}

FeatureMatrix::FeatureMatrix(std::vector<std::string> feature_names)
    : names_(std::move(feature_names)),
      transforms_(names_.size(), Transform::kNone),
      shifts_(names_.size(), 0.0) {
  for (size_t i = 0; i < names_.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) {
        throw std::invalid_argument("duplicate feature '" + names_[i] + "'");
      }
    }
  }
}

void FeatureMatrix::AddRow(Compound compound, std::vector<double> values,
                           std::vector<std::string> flags) {
  if (values.size() != cols()) {
    throw std::invalid_argument("row for " + compound.Joined() + " has " +
                                std::to_string(values.size()) +
                                " values, expected " + std::to_string(cols()));
  }
  compounds_.push_back(std::move(compound));
  flags_.push_back(std::move(flags));
  values_.insert(values_.end(), values.begin(), values.end());
}

int FeatureMatrix::FeatureIndex(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<double> FeatureMatrix::Column(size_t col) const {
  std::vector<double> out(rows());
  for (size_t r = 0; r < rows(); ++r) out[r] = at(r, col);
  return out;
}

std::vector<double> FeatureMatrix::Column(std::string_view name) const {
  int idx = FeatureIndex(name);
  if (idx < 0) {
    throw std::invalid_argument("unknown feature '" + std::string(name) + "'");
  }
  return Column(static_cast<size_t>(idx));
}

void FeatureMatrix::SetColumn(size_t col, std::span<const double> values,
                              Transform transform, double log_shift) {
  if (values.size() != rows()) throw std::invalid_argument("column length");
  for (size_t r = 0; r < rows(); ++r) values_[r * cols() + col] = values[r];
  transforms_[col] = transform;
  shifts_[col] = log_shift;
}

FeatureMatrix FeatureMatrix::Select(std::span<const std::string> names) const {
  std::vector<int> idx;
  std::string missing;
  for (const auto &n : names) {
    int i = FeatureIndex(n);
    if (i < 0) missing += (missing.empty() ? "" : ", ") + n;
    idx.push_back(i);
  }
  if (!missing.empty()) {
    throw std::invalid_argument("missing features: " + missing);
  }
  FeatureMatrix out(std::vector<std::string>(names.begin(), names.end()));
  for (size_t r = 0; r < rows(); ++r) {
    std::vector<double> values;
    for (int i : idx) values.push_back(at(r, static_cast<size_t>(i)));
    out.AddRow(compounds_[r], std::move(values), flags_[r]);
  }
  for (size_t c = 0; c < idx.size(); ++c) {
    out.transforms_[c] = transforms_[idx[c]];
    out.shifts_[c] = shifts_[idx[c]];
  }
  return out;
}

void FeatureMatrix::Validate() const {
  for (size_t r = 0; r < rows(); ++r) {
    for (size_t c = 0; c < cols(); ++c) {
      if (!std::isfinite(at(r, c))) {
        throw std::invalid_argument("non-finite " + names_[c] + " for " +
                                    compounds_[r].Joined());
      }
    }
  }
}

JarqueBeraResult JarqueBera(std::span<const double> column) {
  const size_t m = column.size();
  if (m < 8) throw std::invalid_argument("Jarque-Bera needs at least 8 values");
  double mean = 0;
  for (double x : column) mean += x;
  mean /= static_cast<double>(m);
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : column) {
    double d = x - mean;
    double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= static_cast<double>(m);
  m3 /= static_cast<double>(m);
  m4 /= static_cast<double>(m);
  if (m2 == 0) throw std::invalid_argument("zero variance");
  JarqueBeraResult r;
  r.skewness = m3 / std::pow(m2, 1.5);
  r.kurtosis = m4 / (m2 * m2);
  double excess = r.kurtosis - 3.0;
  r.statistic = static_cast<double>(m) / 6.0 *
                (r.skewness * r.skewness + excess * excess / 4.0);
  return r;
}

LogTransformResult LogTransform(std::span<const double> column) {
  LogTransformResult result;
  for (double x : column) {
    if (x < 0 || std::isnan(x)) {
      throw std::invalid_argument("log transform of a negative value");
    }
    if (x == 0) result.shift = kLogShift;
  }
  result.values = LogTransform(column, result.shift);
  return result;
}

std::vector<double> LogTransform(std::span<const double> column, double shift) {
  std::vector<double> out(column.size());
  for (size_t i = 0; i < column.size(); ++i) {
    double x = column[i] + shift;
    if (!(x > 0)) throw std::invalid_argument("log transform of a non-positive value");
    out[i] = std::log(x);
  }
  return out;
}

std::vector<double> Gaussianize(std::span<const double> column) {
  const size_t m = column.size();
  if (m < 3) throw std::invalid_argument("gaussianize needs at least 3 values");
  std::vector<double> ranks = AverageRanks(column);
  boost::math::normal standard;
  std::vector<double> out(m);
  for (size_t i = 0; i < m; ++i) {
    out[i] = boost::math::quantile(standard,
                                   (ranks[i] - 0.5) / static_cast<double>(m));
  }
  return out;
}

GaussianParams FitGaussians(const FeatureMatrix &matrix) {
  const size_t m = matrix.rows();
  if (m < 2) throw std::invalid_argument("need at least 2 rows to fit");
  GaussianParams params;
  params.features = matrix.feature_names();
  for (size_t c = 0; c < matrix.cols(); ++c) {
    double mean = 0;
    for (size_t r = 0; r < m; ++r) mean += matrix.at(r, c);
    mean /= static_cast<double>(m);
    double var = 0;
    for (size_t r = 0; r < m; ++r) {
      double d = matrix.at(r, c) - mean;
      var += d * d;
    }
    var /= static_cast<double>(m);
    if (!(var > 0) || !std::isfinite(var) || !std::isfinite(mean)) {
      throw std::invalid_argument("feature '" + params.features[c] +
                                  "' is constant or non-finite");
    }
    params.mu.push_back(mean);
    params.sigma2.push_back(var);
    params.transforms.push_back(matrix.transform(c));
    params.log_shifts.push_back(matrix.log_shift(c));
  }
  return params;
}

double NormalDensity(double x, double mu, double sigma2) {
  double d = x - mu;
  return std::exp(-d * d / (2.0 * sigma2)) /
         std::sqrt(2.0 * std::numbers::pi * sigma2);
}

double MultivariateDensity(std::span<const double> v,
                           const GaussianParams &params) {
  if (v.size() != params.size()) throw std::invalid_argument("dimension mismatch");
  double p = 1.0;
  for (size_t i = 0; i < v.size(); ++i) {
    p *= NormalDensity(v[i], params.mu[i], params.sigma2[i]);
  }
  return p;
}

double Softplus(double x) {
  // ln(1 + e^x) without overflow for large x.
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double NcMult(double comp_err, double sdma1, double npmi) {
  return comp_err * sdma1 * npmi;
}

double NcMult(std::span<const double> factors) {
  double product = 1.0;
  for (double f : factors) product *= f;
  return product;
}

double NcScore(std::span<const double> v, const GaussianParams &params,
               bool smooth, DensityMode mode) {
  if (v.size() != params.size()) throw std::invalid_argument("dimension mismatch");
  double rectified = 1.0;
  double density = 1.0;
  for (size_t i = 0; i < v.size(); ++i) {
    double d = v[i] - params.mu[i];
    rectified *= smooth ? Softplus(d) : std::max(0.0, d);
    if (mode == DensityMode::kStandardized) {
      density *= NormalDensity(d / std::sqrt(params.sigma2[i]), 0.0, 1.0);
    } else {
      density *= NormalDensity(v[i], params.mu[i], params.sigma2[i]);
    }
  }
  return rectified * (1.0 - density);
}

std::vector<std::string> SelectFeatures(const FeatureMatrix &matrix,
                                        std::span<const double> gold) {
  if (gold.size() != matrix.rows()) {
    throw std::invalid_argument("gold scores are not aligned with the matrix");
  }
  std::vector<std::string> selected;
  for (size_t c = 0; c < matrix.cols(); ++c) {
    std::vector<double> column = matrix.Column(c);
    double rho;
    try {
      rho = Spearman(column, gold).rho;
    } catch (const std::invalid_argument &) {
      continue;  // constant column: no correlation
    }
    if (rho > 0) selected.push_back(matrix.feature_names()[c]);
  }
  if (selected.empty()) {
    throw std::invalid_argument("no positively correlated features");
  }
  return selected;
}

FeatureMatrix PrepareFeatures(const FeatureMatrix &matrix,
                              const PipelineOptions &options) {
  FeatureMatrix out = matrix.Select(options.features);
  for (size_t c = 0; c < out.cols(); ++c) {
    std::vector<double> column = out.Column(c);
    const std::string &name = out.feature_names()[c];
    bool log = std::find(options.log_features.begin(),
                         options.log_features.end(),
                         name) != options.log_features.end();
    if (options.gaussianize_all) {
      out.SetColumn(c, Gaussianize(column), Transform::kGaussianize);
    } else if (log) {
      LogTransformResult t = LogTransform(column);
      out.SetColumn(c, t.values, Transform::kLog, t.shift);
    }
  }
  out.Validate();
  return out;
}

FeatureMatrix ApplyTransforms(const FeatureMatrix &matrix,
                              const GaussianParams &params) {
  FeatureMatrix out = matrix.Select(params.features);
  for (size_t c = 0; c < out.cols(); ++c) {
    std::vector<double> column = out.Column(c);
    switch (params.transforms[c]) {
      case Transform::kNone:
        break;
      case Transform::kLog:
        out.SetColumn(c, LogTransform(column, params.log_shifts[c]),
                      Transform::kLog, params.log_shifts[c]);
        break;
      case Transform::kGaussianize:
        out.SetColumn(c, Gaussianize(column), Transform::kGaussianize);
        break;
    }
  }
  out.Validate();
  return out;
}

std::vector<double> ModelScores(const FeatureMatrix &matrix,
                                std::string_view model,
                                const PipelineOptions &options,
                                const GaussianParams *params) {
  const auto &combined = CombinedModels();
  if (std::find(combined.begin(), combined.end(), model) == combined.end()) {
    return matrix.Column(model);
  }

  FeatureMatrix prepared = params != nullptr ? ApplyTransforms(matrix, *params)
                                             : PrepareFeatures(matrix, options);
  std::vector<double> scores(prepared.rows());
  if (model == "nc_mult") {
    for (size_t r = 0; r < prepared.rows(); ++r) scores[r] = NcMult(prepared.row(r));
    return scores;
  }
  GaussianParams fitted = params != nullptr ? *params : FitGaussians(prepared);
  const bool smooth = model == "nc_smooth";
  for (size_t r = 0; r < prepared.rows(); ++r) {
    scores[r] = NcScore(prepared.row(r), fitted, smooth, options.density);
  }
  return scores;
}

}  // namespace noncomp
