// tests/test_cli.cpp

// Copyright 2026  spdml authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <Eigen/Dense>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spdml/descriptor.hpp"
#include "spdml/io.hpp"
#include "spdml/version.hpp"

namespace {

using namespace spdml;
namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir() = fs::path(::testing::TempDir()) / "spdml_cli_test";
    fs::remove_all(dir());
    fs::create_directories(dir());
  }

  static fs::path& dir() {
    static fs::path d;
    return d;
  }

  static std::string path(const std::string& name) {
    return (dir() / name).string();
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  static std::string write_file(const std::string& name,
                                const std::string& content) {
    const std::string p = path(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

  static CliResult run(const std::string& args) {
    const std::string out_p = path("last_stdout");
    const std::string err_p = path("last_stderr");
    const std::string cmd = std::string(SPDML_CLI_PATH) + " " + args + " >" +
                            out_p + " 2>" + err_p;
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_p);
    r.err = slurp(err_p);
    return r;
  }

  // Two small SPD matrix files used by several dist tests.
  static std::string matrix_2i(int n) {
    const std::string p = path("m_2i_" + std::to_string(n) + ".txt");
    save_matrix(p, 2.0 * Eigen::MatrixXd::Identity(n, n));
    return p;
  }

  static std::string matrix_i(int n) {
    const std::string p = path("m_i_" + std::to_string(n) + ".txt");
    save_matrix(p, Eigen::MatrixXd::Identity(n, n));
    return p;
  }

  // Count of data tokens on the "accuracy (%)" row of a report table.
  static int accuracy_columns(const std::string& table) {
    std::istringstream in(table);
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("accuracy (%)", 0) == 0) {
        std::istringstream row(line);
        std::string tok;
        int count = 0;
        while (row >> tok) {
          ++count;
        }
        return count - 2;  // "accuracy" and "(%)"
      }
    }
    return -1;
  }
};

TEST_F(CliTest, HelpAndVersionExitZero) {
  const CliResult help = run("--help");
  EXPECT_EQ(help.exit_code, 0);
  EXPECT_NE(help.out.find("Usage"), std::string::npos);
  EXPECT_NE(help.out.find("dist"), std::string::npos);

  const CliResult version = run("--version");
  EXPECT_EQ(version.exit_code, 0);
  EXPECT_EQ(version.out, std::string(kVersion) + "\n");
}

TEST_F(CliTest, NoSubcommandIsAnInputError) {
  const CliResult r = run("");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(CliTest, DistClosedFormGoesToStdoutOnly) {
  const CliResult r = run("dist --kind log-frobenius --a " + matrix_2i(2) +
                          " --b " + matrix_i(2));
  EXPECT_EQ(r.exit_code, 0);
  // sqrt(2) * ln 2 printed with %.12g and nothing else.
  EXPECT_EQ(r.out, "0.980258143469\n");

  const CliResult j = run("dist --kind j-divergence --a " + matrix_2i(2) +
                          " --b " + matrix_i(2));
  EXPECT_EQ(j.exit_code, 0);
  EXPECT_EQ(j.out, "0.5\n");
}

TEST_F(CliTest, DistInputErrorsExitTwo) {
  const std::string a = matrix_2i(2);
  const std::string b = matrix_i(2);
  EXPECT_EQ(run("dist --kind warp --a " + a + " --b " + b).exit_code, 2);
  EXPECT_EQ(run("dist --kind frobenius --a " + path("nope.txt") + " --b " + b)
                .exit_code,
            2);
  EXPECT_EQ(run("dist --kind frobenius --a " + a).exit_code, 2);
  EXPECT_EQ(run("dist --kind learned --a " + a + " --b " + b).exit_code, 2);

  Eigen::MatrixXd indef(2, 2);
  indef << 1.0, 0.0, 0.0, -4.0;
  const std::string bad = path("indef.txt");
  save_matrix(bad, indef);
  EXPECT_EQ(run("dist --kind frobenius --a " + bad + " --b " + b).exit_code,
            2);
}

TEST_F(CliTest, DistOrderMismatchExitsFour) {
  const CliResult r = run("dist --kind affine-invariant --a " + matrix_2i(2) +
                          " --b " + matrix_i(3));
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, SynthLearnDistRoundTrip) {
  const std::string ds = path("pairs_ds");
  const CliResult synth = run("--seed 5 synth --mode pairs --n 3 --per-class 6"
                              " --pairs-per-label 12 --folds 3 --out " + ds);
  ASSERT_EQ(synth.exit_code, 0) << synth.err;
  EXPECT_TRUE(fs::exists(fs::path(ds) / "descriptors.txt"));
  EXPECT_TRUE(fs::exists(fs::path(ds) / "pairs.txt"));

  const std::string model = path("model.json");
  const CliResult learn = run("--seed 5 learn --descriptors " + ds +
                              "/descriptors.txt --constraints " + ds +
                              "/pairs.txt --gamma 100 --out " + model);
  ASSERT_EQ(learn.exit_code, 0) << learn.err;
  const ModelFile mf = load_model(model);
  EXPECT_EQ(mf.n, 3);
  EXPECT_EQ(mf.d, 6);
  EXPECT_EQ(mf.similar_constraints, 12);
  EXPECT_EQ(mf.dissimilar_constraints, 12);
  EXPECT_EQ(mf.training_items, 18);
  EXPECT_GT(mf.sweeps, 0);

  const CliResult dist = run("dist --kind learned --model " + model +
                             " --a " + matrix_2i(3) + " --b " + matrix_i(3));
  ASSERT_EQ(dist.exit_code, 0) << dist.err;
  const double d = std::stod(dist.out);
  EXPECT_GT(d, 0.0);

  // The model fixes the matrix order; other orders are a shape error.
  const CliResult mismatch = run("dist --kind learned --model " + model +
                                 " --a " + matrix_2i(2) + " --b " +
                                 matrix_i(2));
  EXPECT_EQ(mismatch.exit_code, 4);
}

TEST_F(CliTest, LearnRejectsOutOfRangeConstraintIndex) {
  const std::string ds = path("cluster_ds_small");
  ASSERT_EQ(run("--seed 2 synth --mode cluster --n 3 --k 2 --per-class 3 "
                "--out " + ds).exit_code,
            0);
  const std::string bad = write_file("bad_pairs.txt", "0 99 s\n1 2 d\n");
  const CliResult r = run("learn --descriptors " + ds +
                          "/descriptors.txt --constraints " + bad +
                          " --out " + path("never.json"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("99"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("never.json")));
}

TEST_F(CliTest, MatchEvalWritesReportsAndIsDeterministic) {
  const std::string ds = path("me_ds");
  ASSERT_EQ(run("--seed 7 synth --mode pairs --n 3 --per-class 6"
                " --pairs-per-label 12 --folds 3 --out " + ds).exit_code,
            0);
  const std::string out = path("me_report");
  const std::string args = "match-eval --descriptors " + ds +
                           "/descriptors.txt --pairs " + ds +
                           "/pairs.txt --folds 3 --gamma 100 --out " + out;
  const CliResult first = run("--seed 7 --threads 2 " + args);
  ASSERT_EQ(first.exit_code, 0) << first.err;
  EXPECT_EQ(accuracy_columns(first.out), 9);

  const std::string report_txt = slurp(out + "/report.txt");
  EXPECT_EQ(report_txt, first.out);
  const std::string structured = slurp(out + "/report.structured");
  EXPECT_NE(structured.find("\"command\": \"match-eval\""),
            std::string::npos);
  EXPECT_NE(structured.find("\"mean_gain\""), std::string::npos);
  EXPECT_NE(structured.find("log-euclidean"), std::string::npos);

  // Byte-identical rerun, also under a different thread count.
  const CliResult again = run("--seed 7 --threads 1 " + args);
  ASSERT_EQ(again.exit_code, 0) << again.err;
  EXPECT_EQ(slurp(out + "/report.structured"), structured);
}

TEST_F(CliTest, MatchEvalUnlearnedModeHasOneColumnPerRepresentation) {
  const std::string ds = path("me_ds_u");
  ASSERT_EQ(run("--seed 8 synth --mode pairs --n 3 --per-class 6"
                " --pairs-per-label 10 --folds 2 --out " + ds).exit_code,
            0);
  const CliResult r = run("--seed 8 match-eval --unlearned --descriptors " +
                          ds + "/descriptors.txt --pairs " + ds +
                          "/pairs.txt --folds 2 --out " + path("me_report_u"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(accuracy_columns(r.out), 3);
  const std::string structured = slurp(path("me_report_u") +
                                       "/report.structured");
  EXPECT_EQ(structured.find("mean_learned"), std::string::npos);
  EXPECT_NE(structured.find("mean_unlearned"), std::string::npos);
}

TEST_F(CliTest, MatchEvalFoldWithoutTrainingPairsExitsFive) {
  const std::string ds = path("me_ds_bad");
  ASSERT_EQ(run("--seed 9 synth --mode pairs --n 3 --per-class 6"
                " --pairs-per-label 6 --folds 2 --out " + ds).exit_code,
            0);
  // Force every pair into fold 0: fold 0 then has no training pairs.
  const PairsFile pf = load_pairs(ds + "/pairs.txt");
  std::vector<int> zeros(pf.pairs.size(), 0);
  save_pairs(ds + "/pairs0.txt", pf.pairs, zeros);
  const CliResult r = run("--seed 9 match-eval --descriptors " + ds +
                          "/descriptors.txt --pairs " + ds +
                          "/pairs0.txt --folds 2 --out " + path("me_bad_out"));
  EXPECT_EQ(r.exit_code, 5);
}

TEST_F(CliTest, ClusterEvalSmokeAndDeterminism) {
  const std::string ds = path("ce_ds");
  ASSERT_EQ(run("--seed 11 synth --mode cluster --n 3 --k 3 --per-class 8 "
                "--out " + ds).exit_code,
            0);
  const std::string out = path("ce_report");
  const std::string args = "cluster-eval --descriptors " + ds +
                           "/descriptors.txt --labels " + ds +
                           "/labels.txt --k 3 --repeats 1 --restarts 3"
                           " --gamma-grid 100 --out " + out;
  const CliResult first = run("--seed 11 --threads 2 " + args);
  ASSERT_EQ(first.exit_code, 0) << first.err;
  EXPECT_EQ(accuracy_columns(first.out), 9);
  const std::string structured = slurp(out + "/report.structured");
  EXPECT_NE(structured.find("\"command\": \"cluster-eval\""),
            std::string::npos);
  EXPECT_NE(structured.find("\"constraints\""), std::string::npos);

  const CliResult again = run("--seed 11 --threads 1 " + args);
  ASSERT_EQ(again.exit_code, 0) << again.err;
  EXPECT_EQ(slurp(out + "/report.structured"), structured);
}

TEST_F(CliTest, ClusterEvalLabelOutsideKExitsFour) {
  const std::string ds = path("ce_ds_bad");
  ASSERT_EQ(run("--seed 12 synth --mode cluster --n 3 --k 2 --per-class 3 "
                "--out " + ds).exit_code,
            0);
  std::ostringstream labels;
  labels << "0 7\n";
  for (int i = 1; i < 6; ++i) {
    labels << i << " 0\n";
  }
  const std::string bad = write_file("ce_bad_labels.txt", labels.str());
  const CliResult r = run("cluster-eval --descriptors " + ds +
                          "/descriptors.txt --labels " + bad +
                          " --k 2 --repeats 1 --restarts 2 --gamma-grid 10"
                          " --out " + path("ce_bad_out"));
  EXPECT_EQ(r.exit_code, 4);
}

TEST_F(CliTest, ExtractProducesLoadableDescriptors) {
  std::vector<double> px;
  const int w = 8;
  const int h = 8;
  px.reserve(3 * w * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      px.push_back(static_cast<double>(x) / (w - 1));
      px.push_back(static_cast<double>(y) / (h - 1));
      px.push_back(0.25);
    }
  }
  const ImageBuffer img(w, h, px);
  const std::string img_a = path("img_a.ppm");
  const std::string img_b = path("img_b.ppm");
  save_ppm(img_a, img);
  save_ppm(img_b, img);
  const std::string manifest =
      write_file("manifest.txt", img_a + " 0\n" + img_b + " 1\n");
  const std::string out = path("extracted.txt");
  const CliResult r = run("extract --manifest " + manifest +
                          " --resize 16x16 --out " + out);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const DescriptorFile df = load_descriptors(out);
  EXPECT_EQ(df.order, kDescriptorFeatures);
  EXPECT_EQ(df.convention, kDescriptorConventionImage);
  ASSERT_EQ(df.records.size(), 2u);
  EXPECT_EQ(df.records[0].id, img_a);
  EXPECT_GT(df.records[0].matrix.min_eigenvalue(), 0.0);
}

TEST_F(CliTest, ExtractInputErrors) {
  const std::string empty = write_file("empty_manifest.txt", "# nothing\n\n");
  EXPECT_EQ(run("extract --manifest " + empty + " --out " +
                path("x.txt")).exit_code,
            2);
  const std::string manifest =
      write_file("missing_manifest.txt", path("absent.ppm") + "\n");
  EXPECT_EQ(run("extract --manifest " + manifest + " --out " +
                path("x.txt")).exit_code,
            2);
  EXPECT_EQ(run("extract --manifest " + manifest + " --resize bogus --out " +
                path("x.txt")).exit_code,
            2);
}

TEST_F(CliTest, SynthRejectsImpossiblePairRequest) {
  const CliResult r = run("synth --mode pairs --n 3 --k 2 --per-class 2"
                          " --pairs-per-label 100 --out " +
                          path("synth_bad"));
  EXPECT_EQ(r.exit_code, 2);
  const CliResult m = run("synth --mode waves --out " + path("synth_bad2"));
  EXPECT_EQ(m.exit_code, 2);
}

}  // namespace
