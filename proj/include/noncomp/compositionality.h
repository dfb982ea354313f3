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

// Semantic non-compositionality scores comparing an observed phrase vector
// with a vector composed from its two word vectors. Both scores grow as the
// phrase drifts away from its composition.

#ifndef NONCOMP_COMPOSITIONALITY_H_
#define NONCOMP_COMPOSITIONALITY_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace noncomp {

// 1 - cos(v1 + v2, phrase), in [0, 2].
double AdditiveScore(std::span<const double> v1, std::span<const double> v2,
                     std::span<const double> phrase);

struct CompositionExample {
  std::vector<double> v1;
  std::vector<double> v2;
  std::vector<double> phrase;
};

enum class ErrorMetric { kEuclidean, kCosine };

inline constexpr double kDefaultRidgeLambda = 1e-3;

// Linear map from phi(v1, v2) = [v1, v2, v1 * v2, 1] (elementwise product
// for the interaction block) to the phrase vector, fitted by ridge
// regression:
//
//   W = argmin sum_j |W phi_j - y_j|^2 + lambda |W|_F^2
//
// The bias column is penalised like every other weight.
class CompositionModel {
 public:
  CompositionModel() = default;

  // Solves the regularised normal equations. Throws std::invalid_argument
  // on empty or ragged input and std::runtime_error when lambda = 0 leaves
  // the system singular.
  static CompositionModel Train(std::span<const CompositionExample> examples,
                                double lambda = kDefaultRidgeLambda);

  bool trained() const { return trained_; }
  int dimension() const { return dimension_; }
  double lambda() const { return lambda_; }
  // dimension x (3 dimension + 1).
  const Eigen::MatrixXd &weights() const { return weights_; }

  static Eigen::VectorXd Features(std::span<const double> v1,
                                  std::span<const double> v2);
  std::vector<double> Predict(std::span<const double> v1,
                              std::span<const double> v2) const;

  // |W phi - phrase|_2 (Euclidean) or 1 - cos(W phi, phrase) (cosine).
  double Error(std::span<const double> v1, std::span<const double> v2,
               std::span<const double> phrase,
               ErrorMetric metric = ErrorMetric::kEuclidean) const;

 private:
  bool trained_ = false;
  int dimension_ = 0;
  double lambda_ = 0;
  Eigen::MatrixXd weights_;
};

inline CompositionModel TrainComposition(
    std::span<const CompositionExample> examples,
    double lambda = kDefaultRidgeLambda) {
  return CompositionModel::Train(examples, lambda);
}

inline double CompErrScore(const CompositionModel &model,
                           std::span<const double> v1,
                           std::span<const double> v2,
                           std::span<const double> phrase,
                           ErrorMetric metric = ErrorMetric::kEuclidean) {
  return model.Error(v1, v2, phrase, metric);
}

}  // namespace noncomp

#endif  // NONCOMP_COMPOSITIONALITY_H_
