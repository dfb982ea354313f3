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

#include "noncomp/compositionality.h"

#include <cmath>
#include <stdexcept>

#include "noncomp/embedding_store.h"

namespace noncomp {

double AdditiveScore(std::span<const double> v1, std::span<const double> v2,
                     std::span<const double> phrase) {
  if (v1.size() != v2.size() || v1.size() != phrase.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  std::vector<double> sum(v1.size());
  bool nonzero = false;
  for (size_t i = 0; i < v1.size(); ++i) {
    sum[i] = v1[i] + v2[i];
    nonzero |= sum[i] != 0.0;
  }
  if (!nonzero) throw std::invalid_argument("degenerate sum");
  return 1.0 - Cosine(sum, phrase);
}

Eigen::VectorXd CompositionModel::Features(std::span<const double> v1,
                                           std::span<const double> v2) {
  if (v1.size() != v2.size()) throw std::invalid_argument("dimension mismatch");
  const Eigen::Index d = static_cast<Eigen::Index>(v1.size());
  Eigen::VectorXd phi(3 * d + 1);
  for (Eigen::Index i = 0; i < d; ++i) {
    phi[i] = v1[i];
    phi[d + i] = v2[i];
    phi[2 * d + i] = v1[i] * v2[i];
  }
  phi[3 * d] = 1.0;
  return phi;
}

CompositionModel CompositionModel::Train(
    std::span<const CompositionExample> examples, double lambda) {
  if (examples.empty()) throw std::invalid_argument("no training pairs");
  if (!(lambda >= 0)) throw std::invalid_argument("lambda must be >= 0");
  const size_t d = examples.front().v1.size();
  if (d == 0) throw std::invalid_argument("empty vectors");
  const Eigen::Index f = static_cast<Eigen::Index>(3 * d + 1);

  // Accumulate Phi^T Phi and Phi^T Y without materialising Phi.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(f, f);
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(f, static_cast<Eigen::Index>(d));
  for (const auto &ex : examples) {
    if (ex.v1.size() != d || ex.v2.size() != d || ex.phrase.size() != d) {
      throw std::invalid_argument("dimension mismatch in training pairs");
    }
    Eigen::VectorXd phi = Features(ex.v1, ex.v2);
    Eigen::Map<const Eigen::VectorXd> y(ex.phrase.data(),
                                        static_cast<Eigen::Index>(d));
    gram.selfadjointView<Eigen::Lower>().rankUpdate(phi);
    cross.noalias() += phi * y.transpose();
  }
  gram.triangularView<Eigen::StrictlyUpper>() =
      gram.triangularView<Eigen::StrictlyLower>().transpose();
  gram.diagonal().array() += lambda;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.rcond() < 1e-13) {
    throw std::runtime_error(
        "singular normal equations; use a positive ridge lambda");
  }

  CompositionModel model;
  model.weights_ = ldlt.solve(cross).transpose();
  if (!model.weights_.allFinite()) {
    throw std::runtime_error("non-finite regression weights");
  }
  model.dimension_ = static_cast<int>(d);
  model.lambda_ = lambda;
  model.trained_ = true;
  return model;
}

std::vector<double> CompositionModel::Predict(std::span<const double> v1,
                                              std::span<const double> v2) const {
  if (!trained_) throw std::logic_error("composition model is not trained");
  if (v1.size() != static_cast<size_t>(dimension_)) {
    throw std::invalid_argument("dimension mismatch");
  }
  Eigen::VectorXd out = weights_ * Features(v1, v2);
  return std::vector<double>(out.data(), out.data() + out.size());
}

double CompositionModel::Error(std::span<const double> v1,
                               std::span<const double> v2,
                               std::span<const double> phrase,
                               ErrorMetric metric) const {
  if (phrase.size() != static_cast<size_t>(dimension_)) {
    throw std::invalid_argument("dimension mismatch");
  }
  std::vector<double> predicted = Predict(v1, v2);
  if (metric == ErrorMetric::kCosine) return 1.0 - Cosine(predicted, phrase);
  double sum = 0;
  for (size_t i = 0; i < predicted.size(); ++i) {
    double r = predicted[i] - phrase[i];
    sum += r * r;
  }
  return std::sqrt(sum);
}

}  // namespace noncomp
