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

// Assembles the per-compound feature matrix from corpus counts, neighbour
// sets and word/phrase vectors.
//
// Row flags:
//   oov_modifier / oov_head   w1 / w2 has no vector or neighbour set
//   oov_phrase                the joined "w1_w2" phrase vector is missing
//   unseen                    C(w1,w2) = 0; pmi set to the column minimum
//   degenerate                chi2 undefined (empty marginal), reported as 0
//   clamped                   a contingency cell went negative and was zeroed
//   imputed                   add/comp_err set to the column mean
//   numerator_floored         raw numerator requested for an unseen pair

#ifndef NONCOMP_FEATURE_BUILDER_H_
#define NONCOMP_FEATURE_BUILDER_H_

#include <span>
#include <string>
#include <vector>

#include "noncomp/compositionality.h"
#include "noncomp/corpus_counts.h"
#include "noncomp/embedding_store.h"
#include "noncomp/multivariate.h"
#include "noncomp/substitutability.h"

namespace noncomp {

const std::vector<std::string> &KnownFeatures();

struct FeatureSources {
  const BigramStatistics *stats = nullptr;
  const NeighborSource *neighbors = nullptr;
  const EmbeddingTable *word_vectors = nullptr;
  const EmbeddingTable *phrase_vectors = nullptr;
};

struct FeatureOptions {
  std::vector<std::string> features = KnownFeatures();
  SdmaOptions sdma;
  double ridge_lambda = kDefaultRidgeLambda;
  ErrorMetric error_metric = ErrorMetric::kEuclidean;
  // 0 = hardware concurrency.
  unsigned threads = 0;
};

// Throws std::invalid_argument for unknown features or when a requested
// feature lacks its input source.
FeatureMatrix BuildFeatureMatrix(std::span<const Compound> compounds,
                                 const FeatureSources &sources,
                                 const FeatureOptions &options);

}  // namespace noncomp

#endif  // NONCOMP_FEATURE_BUILDER_H_
