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

#include "noncomp/feature_builder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "noncomp/association.h"
#include "noncomp/parallel.h"

namespace noncomp {

const std::vector<std::string> &KnownFeatures() {
  static const std::vector<std::string> kFeatures = {
      "pmi",   "npmi",  "tscore", "chi2", "llr",      "dice",
      "sdma1", "sdma2", "sdma3",  "add",  "comp_err"};
  return kFeatures;
}

namespace {

enum Feature {
  kPmi, kNpmi, kTScore, kChi2, kLlr, kDice, kSdma1, kSdma2, kSdma3, kAdd,
  kCompErr, kFeatureCount
};

struct RowResult {
  double values[kFeatureCount] = {};
  bool has_composition = false;
  bool unseen = false;
  bool degenerate = false;
  bool clamped = false;
  bool oov_modifier = false;
  bool oov_head = false;
  bool oov_phrase = false;
  bool numerator_floored = false;
};

struct WordVectors {
  std::optional<std::vector<double>> v1, v2, phrase;
};

WordVectors LookupVectors(const FeatureSources &sources, const Compound &c) {
  WordVectors out;
  auto get = [](const EmbeddingTable *table,
                const std::string &token) -> std::optional<std::vector<double>> {
    if (table == nullptr || !table->Contains(token)) return std::nullopt;
    return table->Vector(token);
  };
  out.v1 = get(sources.word_vectors, c.w1);
  out.v2 = get(sources.word_vectors, c.w2);
  out.phrase = get(sources.phrase_vectors, c.Joined());
  return out;
}

bool AnyOf(const std::vector<bool> &wanted, std::initializer_list<Feature> fs) {
  for (Feature f : fs) {
    if (wanted[f]) return true;
  }
  return false;
}

}  // namespace

FeatureMatrix BuildFeatureMatrix(std::span<const Compound> compounds,
                                 const FeatureSources &sources,
                                 const FeatureOptions &options) {
  const auto &known = KnownFeatures();
  std::vector<bool> wanted(kFeatureCount, false);
  std::vector<int> columns;
  for (const auto &name : options.features) {
    auto it = std::find(known.begin(), known.end(), name);
    if (it == known.end()) {
      throw std::invalid_argument("unknown feature '" + name + "'");
    }
    int f = static_cast<int>(it - known.begin());
    if (wanted[f]) throw std::invalid_argument("duplicate feature '" + name + "'");
    wanted[f] = true;
    columns.push_back(f);
  }
  const bool need_am = AnyOf(wanted, {kPmi, kNpmi, kTScore, kChi2, kLlr, kDice});
  const bool need_sdma = AnyOf(wanted, {kSdma1, kSdma2, kSdma3});
  const bool need_comp = AnyOf(wanted, {kAdd, kCompErr});
  if ((need_am || need_sdma) && sources.stats == nullptr) {
    throw std::invalid_argument("association and sdma features need counts");
  }
  if (need_sdma && sources.neighbors == nullptr) {
    throw std::invalid_argument("sdma features need embeddings or a neighbour cache");
  }
  if (need_comp &&
      (sources.word_vectors == nullptr || sources.phrase_vectors == nullptr)) {
    throw std::invalid_argument("add and comp_err need word and phrase vectors");
  }

  // The regression is trained on every compound with complete vectors.
  CompositionModel model;
  if (wanted[kCompErr]) {
    std::vector<CompositionExample> examples;
    for (const auto &c : compounds) {
      WordVectors v = LookupVectors(sources, c);
      if (v.v1 && v.v2 && v.phrase) {
        examples.push_back({std::move(*v.v1), std::move(*v.v2), std::move(*v.phrase)});
      }
    }
    if (examples.empty()) {
      throw std::invalid_argument("comp_err: no compound has word and phrase vectors");
    }
    model = CompositionModel::Train(examples, options.ridge_lambda);
  }

  std::vector<RowResult> rows(compounds.size());
  ParallelFor(compounds.size(), options.threads, [&](size_t i) {
    const Compound &c = compounds[i];
    RowResult &row = rows[i];
    if (need_am) {
      int64_t clamped = 0;
      ContingencyTable t = Contingency(*sources.stats, c.w1, c.w2, &clamped);
      AssociationScores s = ComputeAssociation(t);
      row.values[kPmi] = s.pmi;
      row.values[kNpmi] = s.npmi;
      row.values[kTScore] = s.tscore;
      row.values[kChi2] = s.chi_squared;
      row.values[kLlr] = s.llr;
      row.values[kDice] = s.dice;
      row.unseen = t.o11 == 0;
      row.degenerate = s.degenerate;
      row.clamped = clamped > 0;
    }
    if (need_sdma) {
      SdmaResult r = ComputeSdma(*sources.stats, *sources.neighbors, c.w1, c.w2,
                                 options.sdma);
      row.values[kSdma1] = r.scores.sdma1;
      row.values[kSdma2] = r.scores.sdma2;
      row.values[kSdma3] = r.scores.sdma3;
      row.oov_modifier |= r.alternatives.oov_modifier;
      row.oov_head |= r.alternatives.oov_head;
      row.numerator_floored = r.numerator_floored;
    }
    if (need_comp) {
      WordVectors v = LookupVectors(sources, c);
      row.oov_modifier |= !v.v1.has_value();
      row.oov_head |= !v.v2.has_value();
      row.oov_phrase = !v.phrase.has_value();
      if (v.v1 && v.v2 && v.phrase) {
        row.has_composition = true;
        if (wanted[kAdd]) row.values[kAdd] = AdditiveScore(*v.v1, *v.v2, *v.phrase);
        if (wanted[kCompErr]) {
          row.values[kCompErr] =
              model.Error(*v.v1, *v.v2, *v.phrase, options.error_metric);
        }
      }
    }
  });

  // Fill cells that could not be computed so the matrix has no gaps.
  double pmi_floor = std::numeric_limits<double>::infinity();
  double add_sum = 0, comp_sum = 0;
  size_t comp_rows = 0;
  for (const auto &row : rows) {
    if (std::isfinite(row.values[kPmi])) pmi_floor = std::min(pmi_floor, row.values[kPmi]);
    if (row.has_composition) {
      add_sum += row.values[kAdd];
      comp_sum += row.values[kCompErr];
      ++comp_rows;
    }
  }
  if (!std::isfinite(pmi_floor)) pmi_floor = 0.0;
  if (need_comp && comp_rows == 0) {
    throw std::invalid_argument("add/comp_err: no compound has word and phrase vectors");
  }

  FeatureMatrix matrix(options.features);
  for (size_t i = 0; i < compounds.size(); ++i) {
    RowResult &row = rows[i];
    std::vector<std::string> flags;
    if (row.oov_modifier) flags.push_back("oov_modifier");
    if (row.oov_head) flags.push_back("oov_head");
    if (need_comp && row.oov_phrase) flags.push_back("oov_phrase");
    if (need_am && row.unseen) flags.push_back("unseen");
    if (wanted[kChi2] && row.degenerate) flags.push_back("degenerate");
    if (need_am && row.clamped) flags.push_back("clamped");
    if (need_comp && !row.has_composition) {
      flags.push_back("imputed");
      row.values[kAdd] = add_sum / static_cast<double>(comp_rows);
      row.values[kCompErr] = comp_sum / static_cast<double>(comp_rows);
    }
    if (row.numerator_floored) flags.push_back("numerator_floored");
    if (!std::isfinite(row.values[kPmi])) row.values[kPmi] = pmi_floor;

    std::vector<double> values;
    for (int f : columns) values.push_back(row.values[f]);
    matrix.AddRow(compounds[i], std::move(values), std::move(flags));
  }
  matrix.Validate();
  return matrix;
}

}  // namespace noncomp
