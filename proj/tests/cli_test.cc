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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gtest/gtest.h"

namespace noncomp {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("noncomp_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    Write("corpus.txt",
          "red tape slows the office\n"
          "red tape again and again\n"
          "the red car and the blue tape\n"
          "olive oil and olive paste\n"
          "the office car is red\n"
          "night owl sees the red car\n"
          "a blue car and a night train\n");
    Write("words.vec",
          "10 3\nred 1 0 0\nblue 0.9 0.1 0\ntape 0 1 0\npaste 0.1 0.9 0\n"
          "olive 0 0 1\noil 0.5 0.5 0.5\ncar 1 1 0\noffice 0 1 1\n"
          "night 0.3 0 1\nowl 0.2 0.7 0.4\n");
    Write("phrases.vec",
          "red_tape 0.2 0.1 0.9\nolive_oil 0.4 0.6 1.2\nred_car 1.8 1.1 0.1\n"
          "office_car 1 2 1\nnight_owl 0.1 0.1 0.1\n");
    Write("compounds.tsv",
          "w1\tw2\nred\ttape\nolive\toil\nred\tcar\noffice\tcar\nnight\towl\n");
    Write("votes.tsv",
          "red\ttape\t1\t1\t1\t0\t0\t0\t0\t0\n"
          "olive\toil\t0\t0\t0\t0\t1\t1\t0\t0\n"
          "red\tcar\t0\t0\t0\t0\t0\t0\t0\t0\n"
          "office\tcar\t0\t1\t0\t0\t0\t0\t0\t0\n"
          "night\towl\t1\t1\t0\t0\t0\t0\t0\t0\n");
    Write("graded.tsv",
          "red\ttape\t0.5\nolive\toil\t4.5\nred\tcar\t5\noffice\tcar\t3\nnight\towl\t1\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string &name) const { return (dir_ / name).string(); }

  void Write(const std::string &name, const std::string &text) {
    std::ofstream out(dir_ / name);
    out << text;
  }

  std::string Read(const std::string &name) const {
    std::ifstream in(dir_ / name);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  // count + score with every feature.
  void BuildMatrix() {
    ASSERT_EQ(Run({"count", "--corpus", P("corpus.txt"), "--out", P("counts.tsv")}),
              kExitOk)
        << err_.str();
    ASSERT_EQ(Run({"score", "--counts", P("counts.tsv"), "--embeddings",
                   P("words.vec"), "--phrase-vectors", P("phrases.vec"),
                   "--compounds", P("compounds.tsv"), "--lambda", "0.1", "--out",
                   P("matrix.tsv")}),
              kExitOk)
        << err_.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, CountWritesHeaderAndIsDeterministic) {
  ASSERT_EQ(Run({"count", "--corpus", P("corpus.txt"), "--out", P("a.tsv")}), kExitOk);
  ASSERT_EQ(Run({"count", "--corpus", P("corpus.txt"), "--out", P("b.tsv")}), kExitOk);
  std::string a = Read("a.tsv");
  EXPECT_NE(a.find("#N="), std::string::npos);
  EXPECT_NE(a.find("#V="), std::string::npos);
  EXPECT_NE(a.find("#L="), std::string::npos);
  EXPECT_EQ(a, Read("b.tsv"));
  EXPECT_EQ(Read("a.tsv.unigrams"), Read("b.tsv.unigrams"));
}

TEST_F(CliTest, MissingCorpusIsUsageError) {
  EXPECT_EQ(Run({"count", "--corpus", P("nope.txt"), "--out", P("a.tsv")}), kExitUsage);
  EXPECT_NE(err_.str().find("nope.txt"), std::string::npos);
}

TEST_F(CliTest, ParseErrorsAndHelp) {
  EXPECT_EQ(Run({}), kExitUsage);
  EXPECT_EQ(Run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Run({"count", "--bogus"}), kExitUsage);
  EXPECT_EQ(Run({"--help"}), kExitOk);
  EXPECT_NE(out_.str().find("rewrite-compounds"), std::string::npos);
}

TEST_F(CliTest, ScoreNpmiOnly) {
  ASSERT_EQ(Run({"count", "--corpus", P("corpus.txt"), "--out", P("counts.tsv")}), kExitOk);
  ASSERT_EQ(Run({"score", "--counts", P("counts.tsv"), "--compounds",
                 P("compounds.tsv"), "--features", "npmi", "--out", P("m.tsv")}),
            kExitOk)
      << err_.str();
  std::istringstream in(Read("m.tsv"));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "w1\tw2\tnpmi\tflags");
  std::string line;
  std::vector<std::string> order;
  while (std::getline(in, line)) order.push_back(line.substr(0, line.find('\t', line.find('\t') + 1)));
  EXPECT_EQ(order, (std::vector<std::string>{"red\ttape", "olive\toil", "red\tcar",
                                             "office\tcar", "night\towl"}));
}

TEST_F(CliTest, ScoreUnknownFeature) {
  ASSERT_EQ(Run({"count", "--corpus", P("corpus.txt"), "--out", P("counts.tsv")}), kExitOk);
  EXPECT_EQ(Run({"score", "--counts", P("counts.tsv"), "--compounds",
                 P("compounds.tsv"), "--features", "npmi,magic", "--out", P("m.tsv")}),
            kExitUsage);
  EXPECT_NE(err_.str().find("magic"), std::string::npos);
}

TEST_F(CliTest, ScoreFlagsOovHead) {
  Write("oov.tsv", "red\tzebra\n");
  ASSERT_EQ(Run({"count", "--corpus", P("corpus.txt"), "--out", P("counts.tsv")}), kExitOk);
  ASSERT_EQ(Run({"score", "--counts", P("counts.tsv"), "--embeddings", P("words.vec"),
                 "--compounds", P("oov.tsv"), "--features", "sdma1", "--out", P("m.tsv")}),
            kExitOk)
      << err_.str();
  EXPECT_NE(Read("m.tsv").find("oov_head"), std::string::npos);
}

TEST_F(CliTest, KnnCacheMatchesLiveNeighbours) {
  ASSERT_EQ(Run({"count", "--corpus", P("corpus.txt"), "--out", P("counts.tsv")}), kExitOk);
  ASSERT_EQ(Run({"knn-cache", "--embeddings", P("words.vec"), "--compounds",
                 P("compounds.tsv"), "--k", "3", "--out", P("nn.tsv")}),
            kExitOk)
      << err_.str();
  std::vector<std::string> base = {"score", "--counts", P("counts.tsv"),
                                   "--compounds", P("compounds.tsv"), "--features",
                                   "sdma1,sdma2,sdma3", "--k", "3"};
  auto live = base, cached = base;
  live.insert(live.end(), {"--embeddings", P("words.vec"), "--out", P("live.tsv")});
  cached.insert(cached.end(), {"--neighbors", P("nn.tsv"), "--out", P("cached.tsv")});
  ASSERT_EQ(Run(live), kExitOk) << err_.str();
  ASSERT_EQ(Run(cached), kExitOk) << err_.str();
  EXPECT_EQ(Read("live.tsv"), Read("cached.tsv"));
}

TEST_F(CliTest, FitRankEvalPipeline) {
  BuildMatrix();
  ASSERT_EQ(Run({"fit", "--matrix", P("matrix.tsv"), "--out", P("params.txt")}), kExitOk)
      << err_.str();
  EXPECT_NE(Read("params.txt").find("comp_err"), std::string::npos);
  for (const std::string model : {"nc", "nc_smooth", "nc_mult", "add", "comp_err",
                                  "npmi", "chi2", "sdma1", "sdma2", "sdma3"}) {
    ASSERT_EQ(Run({"rank", "--matrix", P("matrix.tsv"), "--model", model, "--out",
                   P(model + ".rank")}),
              kExitOk)
        << model << ": " << err_.str();
    std::string text = Read(model + ".rank");
    EXPECT_EQ(text.rfind("# model=" + model + "\nrank\tw1\tw2\tscore\tflags\n", 0), 0u);
  }
  ASSERT_EQ(Run({"rank", "--matrix", P("matrix.tsv"), "--model", "nc", "--params",
                 P("params.txt"), "--out", P("nc_params.rank")}),
            kExitOk);
  EXPECT_EQ(Read("nc_params.rank"), Read("nc.rank"));

  ASSERT_EQ(Run({"eval", "--gold", P("votes.tsv"), "--ranking", P("nc.rank"),
                 "--ranking", "baseline=" + P("add.rank"), "--ks", "1,2,3",
                 "--out-prefix", P("report")}),
            kExitOk)
      << err_.str();
  std::string csv = Read("report.patk.csv");
  EXPECT_EQ(csv.rfind("model,k,precision\nnc,1,", 0), 0u);
  EXPECT_NE(csv.find("baseline,3,"), std::string::npos);

  ASSERT_EQ(Run({"eval", "--gold", P("graded.tsv"), "--gold-kind", "graded",
                 "--ranking", P("add.rank"), "--out-prefix", P("report")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(Read("report.spearman.csv").rfind("model,rho,pvalue\nadd,", 0), 0u);
}

TEST_F(CliTest, RankNcMultIsProductOfColumns) {
  BuildMatrix();
  ASSERT_EQ(Run({"rank", "--matrix", P("matrix.tsv"), "--model", "nc_mult", "--log",
                 "", "--out", P("m.rank")}),
            kExitOk)
      << err_.str();
  // Product of the raw columns when nothing is log-transformed.
  std::istringstream matrix(Read("matrix.tsv"));
  std::string line;
  std::getline(matrix, line);
  std::map<std::string, double> want;
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string f;
    while (std::getline(h, f, '\t')) header.push_back(f);
  }
  while (std::getline(matrix, line)) {
    std::istringstream row(line);
    std::vector<std::string> f;
    std::string x;
    while (std::getline(row, x, '\t')) f.push_back(x);
    double prod = 1;
    for (size_t i = 0; i < header.size(); ++i) {
      if (header[i] == "comp_err" || header[i] == "sdma1" || header[i] == "npmi") {
        prod *= std::stod(f[i]);
      }
    }
    want[f[0] + " " + f[1]] = prod;
  }
  std::istringstream ranked(Read("m.rank"));
  std::getline(ranked, line);
  std::getline(ranked, line);
  int rows = 0;
  while (std::getline(ranked, line)) {
    std::istringstream row(line);
    std::string rank, w1, w2, score;
    row >> rank >> w1 >> w2 >> score;
    EXPECT_NEAR(std::stod(score), want.at(w1 + " " + w2), 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST_F(CliTest, RankMissingFeatures) {
  ASSERT_EQ(Run({"count", "--corpus", P("corpus.txt"), "--out", P("counts.tsv")}), kExitOk);
  ASSERT_EQ(Run({"score", "--counts", P("counts.tsv"), "--compounds",
                 P("compounds.tsv"), "--features", "npmi", "--out", P("m.tsv")}),
            kExitOk);
  EXPECT_EQ(Run({"rank", "--matrix", P("m.tsv"), "--model", "nc", "--out", P("r")}),
            kExitUsage);
  EXPECT_NE(err_.str().find("comp_err"), std::string::npos);
  EXPECT_NE(err_.str().find("sdma1"), std::string::npos);
  EXPECT_EQ(Run({"rank", "--matrix", P("m.tsv"), "--model", "add", "--out", P("r")}),
            kExitUsage);
  EXPECT_EQ(Run({"rank", "--matrix", P("m.tsv"), "--model", "nope", "--out", P("r")}),
            kExitUsage);
}

TEST_F(CliTest, EvalMetricMismatch) {
  BuildMatrix();
  ASSERT_EQ(Run({"rank", "--matrix", P("matrix.tsv"), "--model", "add", "--out",
                 P("add.rank")}),
            kExitOk);
  EXPECT_EQ(Run({"eval", "--gold", P("graded.tsv"), "--gold-kind", "graded",
                 "--metric", "patk", "--ranking", P("add.rank")}),
            kExitUsage);
  EXPECT_EQ(Run({"eval", "--gold", P("votes.tsv"), "--metric", "spearman",
                 "--ranking", P("add.rank")}),
            kExitUsage);
}

TEST_F(CliTest, FitSelectByGold) {
  BuildMatrix();
  ASSERT_EQ(Run({"fit", "--matrix", P("matrix.tsv"), "--nc-features",
                 "add,comp_err,npmi,sdma1", "--gaussianize-all", "--select-by-gold",
                 P("graded.tsv"), "--out", P("params.txt")}),
            kExitOk)
      << err_.str();
  EXPECT_NE(err_.str().find("selected features"), std::string::npos);
  EXPECT_NE(Read("params.txt").find("gaussianize"), std::string::npos);
}

TEST_F(CliTest, RewriteCompounds) {
  Write("list.tsv", "red\ttape\nnight\towl\n");
  ASSERT_EQ(Run({"rewrite-compounds", "--corpus", P("corpus.txt"), "--compounds",
                 P("list.tsv"), "--out", P("rewritten.txt")}),
            kExitOk);
  std::string text = Read("rewritten.txt");
  EXPECT_EQ(text.rfind("red_tape slows the office\nred_tape again", 0), 0u);
  EXPECT_NE(text.find("night_owl sees"), std::string::npos);
}

TEST_F(CliTest, ExportDists) {
  BuildMatrix();
  ASSERT_EQ(Run({"export-dists", "--matrix", P("matrix.tsv"), "--features",
                 "comp_err,npmi", "--log", "comp_err", "--gold", P("votes.tsv"),
                 "--bins", "4", "--out", P("dists.csv")}),
            kExitOk)
      << err_.str();
  std::istringstream in(Read("dists.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "feature,transform,bin_lo,bin_hi,count,mass,positives,positive_fraction");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 8);
  EXPECT_NE(Read("dists.csv").find("comp_err,log,"), std::string::npos);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  Write("count.ini", "[count]\ncorpus=" + P("corpus.txt") + "\nout=" +
                         P("from_config.tsv") + "\n");
  ASSERT_EQ(Run({"--config", P("count.ini"), "count"}), kExitOk) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "from_config.tsv"));
  ASSERT_EQ(Run({"--config", P("count.ini"), "count", "--out", P("override.tsv")}),
            kExitOk)
      << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "override.tsv"));
  EXPECT_EQ(Read("override.tsv"), Read("from_config.tsv"));
}

TEST_F(CliTest, RuntimeErrorExitCode) {
  Write("broken.vec", "a 1 2\nb 1\n");
  EXPECT_EQ(Run({"knn-cache", "--embeddings", P("broken.vec"), "--compounds",
                 P("compounds.tsv"), "--out", P("nn.tsv")}),
            kExitRuntime);
  EXPECT_NE(err_.str().find(":2:"), std::string::npos);
}

}  // namespace
}  // namespace noncomp
