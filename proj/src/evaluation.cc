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
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "noncomp/text_io.h"

namespace noncomp {

std::vector<Compound> GoldDataset::Compounds() const {
  std::vector<Compound> out;
  out.reserve(entries.size());
  for (const auto &e : entries) out.push_back(e.compound);
  return out;
}

VoteColumns VoteColumns::Default(int judges) {
  VoteColumns c;
  c.noncomp.clear();
  c.conventional.clear();
  for (int j = 0; j < judges; ++j) {
    c.noncomp.push_back(2 + j);
    c.conventional.push_back(2 + judges + j);
  }
  return c;
}

namespace {

[[noreturn]] void GoldError(const std::filesystem::path &path, size_t line,
                            const std::string &what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           what);
}

bool ParseBit(std::string_view field, bool *bit) {
  if (field == "1") {
    *bit = true;
  } else if (field == "0") {
    *bit = false;
  } else {
    return false;
  }
  return true;
}

template <typename Fn>
void ForEachDataLine(const std::filesystem::path &path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    fn(Split(view, '\t'), lineno);
  }
}

}  // namespace

GoldDataset LoadVoteGold(const std::filesystem::path &path,
                         const VoteColumns &columns) {
  if (columns.noncomp.empty()) {
    throw std::invalid_argument("vote columns: no judge columns configured");
  }
  if (!columns.conventional.empty() &&
      columns.conventional.size() != columns.noncomp.size()) {
    throw std::invalid_argument(
        "vote columns: judge counts differ between label groups");
  }
  GoldDataset data;
  data.kind = GoldKind::kVotes;
  data.judges = static_cast<int>(columns.noncomp.size());
  bool first = true;
  ForEachDataLine(path, [&](const std::vector<std::string_view> &fields,
                            size_t lineno) {
    auto field = [&](int col) -> std::string_view {
      if (col < 0 || static_cast<size_t>(col) >= fields.size()) {
        GoldError(path, lineno, "missing column " + std::to_string(col + 1));
      }
      return fields[col];
    };
    GoldEntry entry;
    entry.compound = {ToLower(field(columns.w1)), ToLower(field(columns.w2))};
    bool ok = true;
    for (int col : columns.noncomp) {
      bool bit = false;
      ok &= ParseBit(field(col), &bit);
      entry.noncomp.push_back(bit);
    }
    for (int col : columns.conventional) {
      bool bit = false;
      ok &= ParseBit(field(col), &bit);
      entry.conventional.push_back(bit);
    }
    if (!ok) {
      if (first) {
        first = false;
        return;  // header row
      }
      GoldError(path, lineno, "judge labels must be 0 or 1");
    }
    first = false;
    data.entries.push_back(std::move(entry));
  });
  return data;
}

GoldDataset LoadGradedGold(const std::filesystem::path &path) {
  GoldDataset data;
  data.kind = GoldKind::kGraded;
  bool first = true;
  ForEachDataLine(path, [&](const std::vector<std::string_view> &fields,
                            size_t lineno) {
    double score;
    if (fields.size() < 3 || !ParseDouble(fields[2], &score)) {
      if (first) {
        first = false;
        return;
      }
      GoldError(path, lineno, "expected w1<TAB>w2<TAB>score");
    }
    first = false;
    if (score < 0 || score > kGradedMax) {
      GoldError(path, lineno, "graded score outside [0, 5]");
    }
    GoldEntry entry;
    entry.compound = {ToLower(fields[0]), ToLower(fields[1])};
    entry.graded = score;
    data.entries.push_back(std::move(entry));
  });
  return data;
}

int VoteScore(const GoldEntry &entry, VoteCriterion criterion) {
  if (entry.graded.has_value()) {
    throw std::invalid_argument("vote score requested for a graded entry");
  }
  int score = 0;
  for (size_t j = 0; j < entry.noncomp.size(); ++j) {
    bool marked = entry.noncomp[j];
    if (criterion == VoteCriterion::kIdiosyncrasyAny &&
        j < entry.conventional.size()) {
      marked = marked || entry.conventional[j];
    }
    score += marked ? 1 : 0;
  }
  return score;
}

std::set<Compound> GoldPositives(const GoldDataset &dataset, int threshold,
                                 VoteCriterion criterion) {
  std::set<Compound> positives;
  for (const auto &e : dataset.entries) {
    if (VoteScore(e, criterion) >= threshold) positives.insert(e.compound);
  }
  return positives;
}

double InvertGraded(double score) {
  if (!(score >= 0 && score <= kGradedMax)) {
    throw std::out_of_range("graded score outside [0, 5]");
  }
  return kGradedMax - score;
}

std::vector<size_t> RankOrder(std::span<const Compound> compounds,
                              std::span<const double> scores) {
  if (compounds.size() != scores.size()) {
    throw std::invalid_argument("compounds and scores differ in length");
  }
  std::vector<size_t> order(compounds.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return compounds[a] < compounds[b];
  });
  return order;
}

std::vector<PrecisionPoint> PrecisionAtK(std::span<const Compound> ranking,
                                         const std::set<Compound> &positives,
                                         std::span<const int> ks) {
  std::vector<int> sorted(ks.begin(), ks.end());
  std::sort(sorted.begin(), sorted.end());
  // Prefix counts of positives.
  std::vector<int> hits(ranking.size() + 1, 0);
  for (size_t i = 0; i < ranking.size(); ++i) {
    hits[i + 1] = hits[i] + (positives.contains(ranking[i]) ? 1 : 0);
  }
  std::vector<PrecisionPoint> curve;
  for (int requested : sorted) {
    if (requested < 1) throw std::invalid_argument("k must be >= 1");
    PrecisionPoint point;
    point.k = std::min(requested, static_cast<int>(ranking.size()));
    point.clamped = point.k != requested;
    if (point.k == 0) continue;
    if (!curve.empty() && curve.back().k == point.k) continue;
    point.precision = static_cast<double>(hits[point.k]) / point.k;
    curve.push_back(point);
  }
  return curve;
}

std::vector<int> DefaultKs(size_t length, int step) {
  std::vector<int> ks;
  for (size_t k = step; k <= length; k += step) ks.push_back(static_cast<int>(k));
  if (ks.empty() && length > 0) ks.push_back(static_cast<int>(length));
  return ks;
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share rank mean(i+1 .. j+1).
    double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

double Pearson(std::span<const double> x, std::span<const double> y) {
  const double m = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw std::invalid_argument("undefined correlation");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double TApproxPValue(double rho, size_t m) {
  double df = static_cast<double>(m) - 2.0;
  if (std::abs(rho) >= 1.0) return std::numeric_limits<double>::min();
  double t = rho * std::sqrt(df / (1.0 - rho * rho));
  boost::math::students_t dist(df);
  double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

double PermutationPValue(std::span<const double> rx, std::span<const double> ry,
                         double rho) {
  if (rx.size() > 12) {
    throw std::invalid_argument("exact permutation p-value needs m <= 12");
  }
  // Every permutation of ry shares the rank sums, so rho is an affine
  // function of sum(rx * ry_perm); compare via Pearson on the rank vectors.
  std::vector<double> perm(ry.begin(), ry.end());
  std::sort(perm.begin(), perm.end());
  const double threshold = std::abs(rho) - 1e-12;
  uint64_t total = 0, extreme = 0;
  do {
    ++total;
    if (std::abs(Pearson(rx, perm)) >= threshold) ++extreme;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

SpearmanResult Spearman(std::span<const double> xs, std::span<const double> ys,
                        PValueMethod method) {
  if (xs.size() != ys.size()) throw std::invalid_argument("length mismatch");
  if (xs.size() < 3) throw std::invalid_argument("need at least 3 pairs");
  std::vector<double> rx = AverageRanks(xs);
  std::vector<double> ry = AverageRanks(ys);
  SpearmanResult result;
  result.rho = Pearson(rx, ry);
  result.p_value = method == PValueMethod::kExactPermutation
                       ? PermutationPValue(rx, ry, result.rho)
                       : TApproxPValue(result.rho, xs.size());
  return result;
}

std::vector<HistogramBin> Histogram(std::span<const double> values,
                                    const std::vector<bool> &positive,
                                    int bins) {
  if (bins < 1) throw std::invalid_argument("need at least one bin");
  if (values.empty()) throw std::invalid_argument("no values to bin");
  if (!positive.empty() && positive.size() != values.size()) {
    throw std::invalid_argument("positive mask is not aligned with values");
  }
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi == lo) hi = lo + 1.0;
  const double width = (hi - lo) / bins;
  std::vector<HistogramBin> out(static_cast<size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[b].lo = lo + width * b;
    out[b].hi = b + 1 == bins ? hi : lo + width * (b + 1);
  }
  for (size_t i = 0; i < values.size(); ++i) {
    int b = static_cast<int>((values[i] - lo) / width);
    b = std::clamp(b, 0, bins - 1);
    ++out[b].count;
    if (!positive.empty() && positive[i]) ++out[b].positives;
  }
  for (auto &bin : out) {
    bin.mass = static_cast<double>(bin.count) / static_cast<double>(values.size());
    bin.positive_fraction =
        bin.count == 0 ? 0.0 : static_cast<double>(bin.positives) / bin.count;
  }
  return out;
}

void WritePrecisionCsv(std::span<const EvalReport> reports,
                       const std::filesystem::path &path) {
  std::ostringstream out;
  out << "model,k,precision\n";
  for (const auto &r : reports) {
    for (const auto &p : r.p_at_k) {
      out << r.model_name << ',' << p.k << ',' << FormatDouble(p.precision)
          << '\n';
    }
  }
  WriteFileAtomically(path, out.str());
}

void WriteSpearmanCsv(std::span<const EvalReport> reports,
                      const std::filesystem::path &path) {
  std::ostringstream out;
  out << "model,rho,pvalue\n";
  for (const auto &r : reports) {
    if (!r.spearman) continue;
    out << r.model_name << ',' << FormatDouble(r.spearman->rho) << ','
        << FormatDouble(r.spearman->p_value) << '\n';
  }
  WriteFileAtomically(path, out.str());
}

}  // namespace noncomp
