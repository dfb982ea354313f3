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

// Command-line workflows:
//
//   count              corpus -> counts snapshot
//   knn-cache          embeddings + compound list -> neighbour cache
//   score              counts + vectors + compound list -> feature matrix
//   fit                feature matrix -> Gaussian parameters
//   rank               feature matrix (+ parameters) -> ranked compounds
//   eval               rankings + gold -> P@k / Spearman CSV
//   rewrite-compounds  corpus + compound list -> corpus with w1_w2 tokens
//   export-dists       feature matrix (+ gold) -> histogram CSV
//
// Options may also come from a key=value file given with --config; flags on
// the command line take precedence.

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "noncomp/compound_rewriter.h"
#include "noncomp/corpus_counts.h"
#include "noncomp/embedding_store.h"
#include "noncomp/evaluation.h"
#include "noncomp/feature_builder.h"
#include "noncomp/feature_io.h"
#include "noncomp/multivariate.h"
#include "noncomp/parallel.h"
#include "noncomp/text_io.h"

namespace noncomp {
namespace {

namespace fs = std::filesystem;

// Bad invocation or configuration: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void RequireFile(const std::string &path, std::string_view what) {
  if (path.empty()) throw UsageError(std::string(what) + ": no path given");
  if (!fs::exists(path)) {
    throw UsageError(std::string(what) + ": no such file: " + path);
  }
}

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> out;
  for (auto field : Split(text, ',')) {
    if (!field.empty()) out.emplace_back(field);
  }
  return out;
}

// First two columns of a TSV (or whitespace-separated) file. Comment lines
// and a "w1 w2" header are skipped.
std::vector<Compound> LoadCompoundList(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<Compound> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = view.find('\t') != std::string_view::npos
                      ? Split(view, '\t')
                      : SplitWhitespace(view);
    if (fields.size() < 2) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected at least two columns");
    }
    if (out.empty() && fields[0] == "w1" && fields[1] == "w2") continue;
    out.push_back({ToLower(fields[0]), ToLower(fields[1])});
  }
  return out;
}

// ---------------------------------------------------------------------------

struct CountConfig {
  std::string corpus;
  std::string out;
  int64_t min_count = 1;
  int64_t laplace = 0;
};

void CmdCount(const CountConfig &cfg, std::ostream &err) {
  RequireFile(cfg.corpus, "--corpus");
  std::ifstream in(cfg.corpus);
  if (!in) throw std::runtime_error("cannot open " + cfg.corpus);
  BigramStatistics stats = BuildCounts(in, {.min_count = cfg.min_count});
  if (cfg.laplace > 0) stats.OverrideLaplace(cfg.laplace);
  WriteCountsSnapshot(stats, cfg.out);
  err << "count: N=" << stats.total_pairs() << " V=" << stats.vocab_size()
      << " L=" << stats.laplace() << "\n";
}

// ---------------------------------------------------------------------------

struct KnnConfig {
  std::string embeddings;
  std::string words;
  std::string out;
  int k = kDefaultNeighbors;
  unsigned threads = 0;
};

void CmdKnnCache(const KnnConfig &cfg, std::ostream &err) {
  RequireFile(cfg.embeddings, "--embeddings");
  RequireFile(cfg.words, "--compounds");
  if (cfg.k < 1) throw UsageError("--k must be >= 1");
  EmbeddingTable table = EmbeddingTable::Load(cfg.embeddings);
  std::set<std::string> unique;
  for (const auto &c : LoadCompoundList(cfg.words)) {
    unique.insert(c.w1);
    unique.insert(c.w2);
  }
  std::vector<std::string> words;
  size_t oov = 0;
  for (const auto &w : unique) {
    if (table.Contains(w)) {
      words.push_back(w);
    } else {
      ++oov;
    }
  }
  std::vector<NeighborSet> sets(words.size());
  ParallelFor(words.size(), cfg.threads,
              [&](size_t i) { sets[i] = table.KNearest(words[i], cfg.k); });
  WriteNeighborCache(sets, cfg.out);
  err << "knn-cache: " << sets.size() << " words cached, " << oov
      << " out of vocabulary\n";
}

// ---------------------------------------------------------------------------

struct ScoreConfig {
  std::string counts;
  std::string embeddings;
  std::string neighbors;
  std::string phrase_vectors;
  std::string compounds;
  std::string features;
  std::string out;
  int k = kDefaultNeighbors;
  int64_t laplace = 0;
  bool raw_numerator = false;
  double lambda = kDefaultRidgeLambda;
  std::string error_metric = "euclidean";
  unsigned threads = 0;
};

void CmdScore(const ScoreConfig &cfg, std::ostream &err) {
  RequireFile(cfg.compounds, "--compounds");
  if (cfg.k < 1) throw UsageError("--k must be >= 1");

  FeatureOptions options;
  if (!cfg.features.empty()) options.features = SplitList(cfg.features);
  const auto &known = KnownFeatures();
  for (const auto &f : options.features) {
    if (std::find(known.begin(), known.end(), f) == known.end()) {
      throw UsageError("unknown feature '" + f + "'");
    }
  }
  if (cfg.error_metric == "euclidean") {
    options.error_metric = ErrorMetric::kEuclidean;
  } else if (cfg.error_metric == "cosine") {
    options.error_metric = ErrorMetric::kCosine;
  } else {
    throw UsageError("--error-metric must be euclidean or cosine");
  }
  options.sdma = {.k = cfg.k, .raw_numerator = cfg.raw_numerator};
  options.ridge_lambda = cfg.lambda;
  options.threads = cfg.threads;

  auto wants = [&](std::initializer_list<const char *> names) {
    for (const char *n : names) {
      if (std::find(options.features.begin(), options.features.end(), n) !=
          options.features.end())
        return true;
    }
    return false;
  };
  const bool need_counts = wants({"pmi", "npmi", "tscore", "chi2", "llr", "dice",
                                  "sdma1", "sdma2", "sdma3"});
  const bool need_neighbors = wants({"sdma1", "sdma2", "sdma3"});
  const bool need_vectors = wants({"add", "comp_err"});

  FeatureSources sources;
  std::optional<BigramStatistics> stats;
  std::optional<EmbeddingTable> words, phrases;
  std::unique_ptr<NeighborSource> neighbors;
  if (need_counts) {
    RequireFile(cfg.counts, "--counts");
    stats = ReadCountsSnapshot(cfg.counts);
    if (cfg.laplace > 0) stats->OverrideLaplace(cfg.laplace);
    sources.stats = &*stats;
  }
  if (need_vectors || (need_neighbors && cfg.neighbors.empty())) {
    RequireFile(cfg.embeddings, "--embeddings");
    words = EmbeddingTable::Load(cfg.embeddings);
    sources.word_vectors = &*words;
  }
  if (need_neighbors) {
    if (!cfg.neighbors.empty()) {
      RequireFile(cfg.neighbors, "--neighbors");
      neighbors = std::make_unique<CachedNeighbors>(ReadNeighborCache(cfg.neighbors));
    } else {
      neighbors = std::make_unique<TableNeighbors>(*words);
    }
    sources.neighbors = neighbors.get();
  }
  if (need_vectors) {
    RequireFile(cfg.phrase_vectors, "--phrase-vectors");
    phrases = EmbeddingTable::Load(cfg.phrase_vectors);
    sources.phrase_vectors = &*phrases;
  }

  std::vector<Compound> compounds = LoadCompoundList(cfg.compounds);
  FeatureMatrix matrix = BuildFeatureMatrix(compounds, sources, options);
  WriteFeatureMatrix(matrix, cfg.out);
  size_t flagged = 0;
  for (size_t r = 0; r < matrix.rows(); ++r) flagged += !matrix.flags(r).empty();
  err << "score: " << matrix.rows() << " compounds, " << flagged
      << " flagged\n";
}

// ---------------------------------------------------------------------------

struct PipelineConfig {
  std::string nc_features = "comp_err,sdma1,npmi";
  std::string log_features = "comp_err";
  bool gaussianize_all = false;
  bool raw_density = false;

  PipelineOptions ToOptions() const {
    PipelineOptions o;
    o.features = SplitList(nc_features);
    o.log_features = SplitList(log_features);
    o.gaussianize_all = gaussianize_all;
    o.density = raw_density ? DensityMode::kRaw : DensityMode::kStandardized;
    return o;
  }
};

void AddPipelineOptions(CLI::App *cmd, PipelineConfig *cfg) {
  cmd->add_option("--nc-features", cfg->nc_features,
                  "Comma-separated features combined by nc_mult/nc/nc_smooth")
      ->capture_default_str();
  cmd->add_option("--log", cfg->log_features,
                  "Comma-separated features to log-transform")
      ->capture_default_str();
  cmd->add_flag("--gaussianize-all", cfg->gaussianize_all,
                "Rank-based inverse normal transform on every feature");
  cmd->add_flag("--raw-density", cfg->raw_density,
                "Use the unstandardised density product in nc/nc_smooth");
}

void CheckFeatures(const FeatureMatrix &matrix,
                   const std::vector<std::string> &names) {
  std::string missing;
  for (const auto &n : names) {
    if (matrix.FeatureIndex(n) < 0) missing += (missing.empty() ? "" : ", ") + n;
  }
  if (!missing.empty()) {
    throw UsageError("feature matrix lacks required features: " + missing);
  }
}

struct FitConfig {
  std::string matrix;
  std::string out;
  std::string select_gold;
  PipelineConfig pipeline;
};

void CmdFit(const FitConfig &cfg, std::ostream &err) {
  RequireFile(cfg.matrix, "--matrix");
  FeatureMatrix matrix = ReadFeatureMatrix(cfg.matrix);
  PipelineOptions options = cfg.pipeline.ToOptions();
  CheckFeatures(matrix, options.features);

  if (!cfg.select_gold.empty()) {
    RequireFile(cfg.select_gold, "--select-by-gold");
    GoldDataset gold = LoadGradedGold(cfg.select_gold);
    std::map<Compound, double> scores;
    for (const auto &e : gold.entries) scores[e.compound] = InvertGraded(*e.graded);
    std::vector<size_t> keep;
    std::vector<double> aligned;
    for (size_t r = 0; r < matrix.rows(); ++r) {
      auto it = scores.find(matrix.compound(r));
      if (it == scores.end()) continue;
      keep.push_back(r);
      aligned.push_back(it->second);
    }
    FeatureMatrix candidates = PrepareFeatures(matrix, options);
    FeatureMatrix subset(candidates.feature_names());
    for (size_t r : keep) {
      subset.AddRow(candidates.compound(r),
                    std::vector<double>(candidates.row(r).begin(),
                                        candidates.row(r).end()));
    }
    options.features = SelectFeatures(subset, aligned);
    err << "fit: selected features";
    for (const auto &f : options.features) err << ' ' << f;
    err << "\n";
  }

  FeatureMatrix prepared = PrepareFeatures(matrix, options);
  GaussianParams params = FitGaussians(prepared);
  WriteGaussianParams(params, cfg.out);
}

// ---------------------------------------------------------------------------

struct RankConfig {
  std::string matrix;
  std::string params;
  std::string model;
  std::string out;
  PipelineConfig pipeline;
};

bool IsKnownModel(const std::string &model) {
  const auto &known = KnownFeatures();
  const auto &combined = CombinedModels();
  return std::find(known.begin(), known.end(), model) != known.end() ||
         std::find(combined.begin(), combined.end(), model) != combined.end();
}

void CmdRank(const RankConfig &cfg, std::ostream &err) {
  RequireFile(cfg.matrix, "--matrix");
  if (!IsKnownModel(cfg.model)) throw UsageError("unknown model '" + cfg.model + "'");
  FeatureMatrix matrix = ReadFeatureMatrix(cfg.matrix);
  PipelineOptions options = cfg.pipeline.ToOptions();

  std::optional<GaussianParams> params;
  const auto &combined = CombinedModels();
  bool is_combined =
      std::find(combined.begin(), combined.end(), cfg.model) != combined.end();
  if (is_combined) {
    if (!cfg.params.empty()) {
      RequireFile(cfg.params, "--params");
      params = ReadGaussianParams(cfg.params);
      CheckFeatures(matrix, params->features);
    } else {
      CheckFeatures(matrix, options.features);
    }
  } else {
    CheckFeatures(matrix, {cfg.model});
  }

  std::vector<double> scores =
      ModelScores(matrix, cfg.model, options, params ? &*params : nullptr);
  std::vector<size_t> order = RankOrder(matrix.compounds(), scores);

  std::ostringstream out;
  out << "# model=" << cfg.model << "\n";
  out << "rank\tw1\tw2\tscore\tflags\n";
  for (size_t i = 0; i < order.size(); ++i) {
    size_t r = order[i];
    out << i + 1 << '\t' << matrix.compound(r).w1 << '\t'
        << matrix.compound(r).w2 << '\t' << FormatDouble(scores[r]) << '\t';
    const auto &flags = matrix.flags(r);
    if (flags.empty()) out << '-';
    for (size_t f = 0; f < flags.size(); ++f) out << (f ? "," : "") << flags[f];
    out << '\n';
  }
  WriteFileAtomically(cfg.out, out.str());
  err << "rank: " << order.size() << " compounds ranked by " << cfg.model << "\n";
}

// ---------------------------------------------------------------------------

struct Ranking {
  std::string model;
  std::vector<Compound> order;
  std::vector<double> scores;
};

// "name=path" or a path whose "# model=" header names the model.
Ranking ReadRanking(const std::string &arg) {
  std::string path = arg;
  std::string name;
  size_t eq = arg.find('=');
  if (eq != std::string::npos && !fs::exists(arg)) {
    name = arg.substr(0, eq);
    path = arg.substr(eq + 1);
  }
  RequireFile(path, "--ranking");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Ranking ranking;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    if (view.starts_with("# model=")) {
      if (name.empty()) name = std::string(view.substr(8));
      continue;
    }
    if (view.front() == '#' || view.starts_with("rank\t")) continue;
    auto fields = Split(view, '\t');
    double score;
    if (fields.size() < 4 || !ParseDouble(fields[3], &score)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected rank<TAB>w1<TAB>w2<TAB>score");
    }
    ranking.order.push_back({std::string(fields[1]), std::string(fields[2])});
    ranking.scores.push_back(score);
  }
  ranking.model = name.empty() ? fs::path(path).stem().string() : name;
  return ranking;
}

VoteColumns ParseColumns(const std::string &arg, int judges) {
  VoteColumns columns = VoteColumns::Default(judges);
  if (arg.empty()) return columns;
  for (const auto &item : SplitList(arg)) {
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bad --columns entry '" + item + "'");
    std::string key = item.substr(0, eq);
    std::vector<int> cols;
    for (auto f : Split(std::string_view(item).substr(eq + 1), ':')) {
      int64_t v;
      if (!ParseInt64(f, &v) || v < 0) {
        throw UsageError("bad column index in '" + item + "'");
      }
      cols.push_back(static_cast<int>(v));
    }
    if (key == "w1" && cols.size() == 1) {
      columns.w1 = cols[0];
    } else if (key == "w2" && cols.size() == 1) {
      columns.w2 = cols[0];
    } else if (key == "noncomp") {
      columns.noncomp = cols;
    } else if (key == "conv") {
      columns.conventional = cols;
    } else {
      throw UsageError("unknown --columns key '" + key + "'");
    }
  }
  return columns;
}

VoteCriterion ParseCriterion(const std::string &name) {
  if (name == "noncomp") return VoteCriterion::kNoncompOnly;
  if (name == "any") return VoteCriterion::kIdiosyncrasyAny;
  throw UsageError("--criterion must be noncomp or any");
}

struct EvalConfig {
  std::string gold;
  std::string gold_kind = "votes";
  std::vector<std::string> rankings;
  std::string metric;
  std::string ks;
  int k_step = 10;
  int threshold = kDefaultVoteThreshold;
  std::string criterion = "noncomp";
  int judges = 4;
  std::string columns;
  bool exact_pvalue = false;
  std::string out_prefix;
};

GoldDataset LoadGold(const std::string &path, const std::string &kind,
                     const std::string &columns, int judges) {
  RequireFile(path, "--gold");
  if (kind == "votes") return LoadVoteGold(path, ParseColumns(columns, judges));
  if (kind == "graded") return LoadGradedGold(path);
  throw UsageError("--gold-kind must be votes or graded");
}

void CmdEval(const EvalConfig &cfg, std::ostream &out, std::ostream &err) {
  if (cfg.gold_kind != "votes" && cfg.gold_kind != "graded") {
    throw UsageError("--gold-kind must be votes or graded");
  }
  std::string metric = cfg.metric;
  if (metric.empty()) metric = cfg.gold_kind == "votes" ? "patk" : "spearman";
  if (metric != "patk" && metric != "spearman") {
    throw UsageError("--metric must be patk or spearman");
  }
  if (metric == "patk" && cfg.gold_kind == "graded") {
    throw UsageError("P@k needs vote-based gold; use --metric spearman");
  }
  if (metric == "spearman" && cfg.gold_kind == "votes") {
    throw UsageError(
        "Spearman correlation is not applicable to vote-based gold; use P@k");
  }
  if (cfg.rankings.empty()) throw UsageError("no --ranking given");
  const VoteCriterion criterion = ParseCriterion(cfg.criterion);
  GoldDataset gold = LoadGold(cfg.gold, cfg.gold_kind, cfg.columns, cfg.judges);

  std::vector<EvalReport> reports;
  for (const auto &arg : cfg.rankings) {
    Ranking ranking = ReadRanking(arg);
    EvalReport report;
    report.model_name = ranking.model;
    if (metric == "patk") {
      std::set<Compound> positives = GoldPositives(gold, cfg.threshold, criterion);
      report.positives = static_cast<int>(positives.size());
      std::vector<int> ks;
      if (cfg.ks.empty()) {
        ks = DefaultKs(ranking.order.size(), cfg.k_step);
      } else {
        for (const auto &k : SplitList(cfg.ks)) {
          int64_t v;
          if (!ParseInt64(k, &v) || v < 1) throw UsageError("bad k '" + k + "'");
          ks.push_back(static_cast<int>(v));
        }
      }
      report.p_at_k = PrecisionAtK(ranking.order, positives, ks);
      for (const auto &p : report.p_at_k) {
        if (p.clamped) {
          err << "eval: " << report.model_name << ": k clamped to ranking length "
              << p.k << "\n";
        }
      }
    } else {
      std::map<Compound, double> scores;
      for (size_t i = 0; i < ranking.order.size(); ++i) {
        scores[ranking.order[i]] = ranking.scores[i];
      }
      std::vector<double> xs, ys;
      size_t missing = 0;
      for (const auto &e : gold.entries) {
        auto it = scores.find(e.compound);
        if (it == scores.end()) {
          ++missing;
          continue;
        }
        xs.push_back(it->second);
        ys.push_back(InvertGraded(*e.graded));
      }
      if (missing > 0) {
        err << "eval: " << report.model_name << ": " << missing
            << " gold compounds absent from the ranking\n";
      }
      report.spearman = Spearman(xs, ys, cfg.exact_pvalue
                                             ? PValueMethod::kExactPermutation
                                             : PValueMethod::kTApproximation);
    }
    reports.push_back(std::move(report));
  }

  if (metric == "patk") {
    if (!cfg.out_prefix.empty()) {
      WritePrecisionCsv(reports, cfg.out_prefix + ".patk.csv");
    }
    out << "model,k,precision\n";
    for (const auto &r : reports) {
      for (const auto &p : r.p_at_k) {
        out << r.model_name << ',' << p.k << ',' << FormatDouble(p.precision) << '\n';
      }
    }
  } else {
    if (!cfg.out_prefix.empty()) {
      WriteSpearmanCsv(reports, cfg.out_prefix + ".spearman.csv");
    }
    out << "model,rho,pvalue\n";
    for (const auto &r : reports) {
      out << r.model_name << ',' << FormatDouble(r.spearman->rho) << ','
          << FormatDouble(r.spearman->p_value) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

struct RewriteConfig {
  std::string corpus;
  std::string compounds;
  std::string out;
};

void CmdRewrite(const RewriteConfig &cfg, std::ostream &err) {
  RequireFile(cfg.corpus, "--corpus");
  RequireFile(cfg.compounds, "--compounds");
  CompoundRewriter rewriter(LoadCompoundList(cfg.compounds));
  std::ifstream in(cfg.corpus);
  if (!in) throw std::runtime_error("cannot open " + cfg.corpus);
  std::ostringstream out;
  size_t joined = rewriter.Rewrite(in, out);
  WriteFileAtomically(cfg.out, out.str());
  err << "rewrite-compounds: " << joined << " occurrences joined\n";
}

// ---------------------------------------------------------------------------

struct DistsConfig {
  std::string matrix;
  std::string features;
  std::string log_features;
  bool gaussianize = false;
  std::string gold;
  std::string gold_kind = "votes";
  std::string criterion = "noncomp";
  int threshold = kDefaultVoteThreshold;
  int judges = 4;
  std::string columns;
  int bins = 30;
  std::string out;
};

void CmdExportDists(const DistsConfig &cfg, std::ostream &err) {
  RequireFile(cfg.matrix, "--matrix");
  if (cfg.bins < 1) throw UsageError("--bins must be >= 1");
  FeatureMatrix matrix = ReadFeatureMatrix(cfg.matrix);
  std::vector<std::string> names =
      cfg.features.empty() ? matrix.feature_names() : SplitList(cfg.features);
  CheckFeatures(matrix, names);

  // Gold positives: vote threshold, or for graded gold any compound whose
  // inverted score is above the mean inverted score.
  std::vector<bool> positive;
  if (!cfg.gold.empty()) {
    GoldDataset gold = LoadGold(cfg.gold, cfg.gold_kind, cfg.columns, cfg.judges);
    std::set<Compound> positives;
    if (gold.kind == GoldKind::kVotes) {
      positives = GoldPositives(gold, cfg.threshold, ParseCriterion(cfg.criterion));
    } else {
      double mean = 0;
      for (const auto &e : gold.entries) mean += InvertGraded(*e.graded);
      mean /= static_cast<double>(std::max<size_t>(1, gold.entries.size()));
      for (const auto &e : gold.entries) {
        if (InvertGraded(*e.graded) > mean) positives.insert(e.compound);
      }
    }
    for (size_t r = 0; r < matrix.rows(); ++r) {
      positive.push_back(positives.contains(matrix.compound(r)));
    }
  }

  PipelineOptions options;
  options.features = names;
  options.log_features = SplitList(cfg.log_features);
  options.gaussianize_all = cfg.gaussianize;
  FeatureMatrix prepared = PrepareFeatures(matrix, options);

  std::ostringstream out;
  out << "feature,transform,bin_lo,bin_hi,count,mass,positives,positive_fraction\n";
  for (size_t c = 0; c < prepared.cols(); ++c) {
    for (const auto &bin : Histogram(prepared.Column(c), positive, cfg.bins)) {
      out << prepared.feature_names()[c] << ',' << TransformName(prepared.transform(c))
          << ',' << FormatDouble(bin.lo) << ',' << FormatDouble(bin.hi) << ','
          << bin.count << ',' << FormatDouble(bin.mass) << ',' << bin.positives
          << ',' << FormatDouble(bin.positive_fraction) << '\n';
    }
  }
  WriteFileAtomically(cfg.out, out.str());
  err << "export-dists: " << prepared.cols() << " features, " << cfg.bins
      << " bins\n";
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Non-compositionality scoring for noun compounds", "noncomp"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  CountConfig count;
  auto *count_cmd = app.add_subcommand("count", "Count unigrams and bigrams");
  count_cmd->add_option("--corpus", count.corpus, "One sentence per line")->required();
  count_cmd->add_option("--out", count.out, "Bigram snapshot path")->required();
  count_cmd->add_option("--min-count", count.min_count)->capture_default_str();
  count_cmd->add_option("--laplace", count.laplace, "Override the V^2 smoothing mass");

  KnnConfig knn;
  auto *knn_cmd = app.add_subcommand("knn-cache", "Cache nearest neighbours");
  knn_cmd->add_option("--embeddings", knn.embeddings)->required();
  knn_cmd->add_option("--compounds", knn.words, "Compound list")->required();
  knn_cmd->add_option("--out", knn.out)->required();
  knn_cmd->add_option("--k", knn.k)->capture_default_str();
  knn_cmd->add_option("--threads", knn.threads, "0 = all cores");

  ScoreConfig score;
  auto *score_cmd = app.add_subcommand("score", "Compute the feature matrix");
  score_cmd->add_option("--counts", score.counts, "Counts snapshot");
  score_cmd->add_option("--embeddings", score.embeddings, "Word vectors");
  score_cmd->add_option("--neighbors", score.neighbors, "Neighbour cache");
  score_cmd->add_option("--phrase-vectors", score.phrase_vectors,
                        "Vectors for w1_w2 tokens");
  score_cmd->add_option("--compounds", score.compounds, "Compound list")->required();
  score_cmd->add_option("--features", score.features,
                        "Comma-separated subset of pmi,npmi,tscore,chi2,llr,"
                        "dice,sdma1,sdma2,sdma3,add,comp_err");
  score_cmd->add_option("--out", score.out)->required();
  score_cmd->add_option("--k", score.k)->capture_default_str();
  score_cmd->add_option("--laplace", score.laplace);
  score_cmd->add_flag("--raw-numerator", score.raw_numerator,
                      "Unsmoothed C(w1,w2)/N numerator for sdma");
  score_cmd->add_option("--lambda", score.lambda, "Ridge penalty")->capture_default_str();
  score_cmd->add_option("--error-metric", score.error_metric)->capture_default_str();
  score_cmd->add_option("--threads", score.threads, "0 = all cores");

  FitConfig fit;
  auto *fit_cmd = app.add_subcommand("fit", "Fit per-feature Gaussians");
  fit_cmd->add_option("--matrix", fit.matrix)->required();
  fit_cmd->add_option("--out", fit.out)->required();
  fit_cmd->add_option("--select-by-gold", fit.select_gold,
                      "Graded gold; keep only positively correlated features");
  AddPipelineOptions(fit_cmd, &fit.pipeline);

  RankConfig rank;
  auto *rank_cmd = app.add_subcommand("rank", "Rank compounds by a model");
  rank_cmd->add_option("--matrix", rank.matrix)->required();
  rank_cmd->add_option("--model", rank.model,
                       "Feature name, nc_mult, nc or nc_smooth")->required();
  rank_cmd->add_option("--params", rank.params, "Fitted parameters");
  rank_cmd->add_option("--out", rank.out)->required();
  AddPipelineOptions(rank_cmd, &rank.pipeline);

  EvalConfig eval;
  auto *eval_cmd = app.add_subcommand("eval", "Evaluate rankings against gold");
  eval_cmd->add_option("--gold", eval.gold)->required();
  eval_cmd->add_option("--gold-kind", eval.gold_kind, "votes or graded")
      ->capture_default_str();
  eval_cmd->add_option("--ranking", eval.rankings, "[name=]path, repeatable")
      ->required();
  eval_cmd->add_option("--metric", eval.metric, "patk or spearman");
  eval_cmd->add_option("--ks", eval.ks, "Comma-separated k values");
  eval_cmd->add_option("--k-step", eval.k_step)->capture_default_str();
  eval_cmd->add_option("--threshold", eval.threshold)->capture_default_str();
  eval_cmd->add_option("--criterion", eval.criterion, "noncomp or any")
      ->capture_default_str();
  eval_cmd->add_option("--judges", eval.judges)->capture_default_str();
  eval_cmd->add_option("--columns", eval.columns,
                       "e.g. w1=0,w2=1,noncomp=2:3:4:5,conv=6:7:8:9");
  eval_cmd->add_flag("--exact-pvalue", eval.exact_pvalue,
                     "Permutation p-value (at most 12 compounds)");
  eval_cmd->add_option("--out-prefix", eval.out_prefix, "Write <prefix>.*.csv");

  RewriteConfig rewrite;
  auto *rewrite_cmd =
      app.add_subcommand("rewrite-compounds", "Join compounds into w1_w2 tokens");
  rewrite_cmd->add_option("--corpus", rewrite.corpus)->required();
  rewrite_cmd->add_option("--compounds", rewrite.compounds)->required();
  rewrite_cmd->add_option("--out", rewrite.out)->required();

  DistsConfig dists;
  auto *dists_cmd = app.add_subcommand("export-dists", "Histogram data per feature");
  dists_cmd->add_option("--matrix", dists.matrix)->required();
  dists_cmd->add_option("--features", dists.features);
  dists_cmd->add_option("--log", dists.log_features);
  dists_cmd->add_flag("--gaussianize", dists.gaussianize);
  dists_cmd->add_option("--gold", dists.gold);
  dists_cmd->add_option("--gold-kind", dists.gold_kind)->capture_default_str();
  dists_cmd->add_option("--criterion", dists.criterion)->capture_default_str();
  dists_cmd->add_option("--threshold", dists.threshold)->capture_default_str();
  dists_cmd->add_option("--judges", dists.judges)->capture_default_str();
  dists_cmd->add_option("--columns", dists.columns);
  dists_cmd->add_option("--bins", dists.bins)->capture_default_str();
  dists_cmd->add_option("--out", dists.out)->required();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "noncomp: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*count_cmd) CmdCount(count, err);
    if (*knn_cmd) CmdKnnCache(knn, err);
    if (*score_cmd) CmdScore(score, err);
    if (*fit_cmd) CmdFit(fit, err);
    if (*rank_cmd) CmdRank(rank, err);
    if (*eval_cmd) CmdEval(eval, out, err);
    if (*rewrite_cmd) CmdRewrite(rewrite, err);
    if (*dists_cmd) CmdExportDists(dists, err);
  } catch (const UsageError &e) {
    err << "noncomp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "noncomp: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace noncomp
