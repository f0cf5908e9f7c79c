// tools/spdml_main.cpp

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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spdml/descriptor.hpp"
#include "spdml/distances.hpp"
#include "spdml/errors.hpp"
#include "spdml/eval.hpp"
#include "spdml/io.hpp"
#include "spdml/itml.hpp"
#include "spdml/random.hpp"
#include "spdml/version.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace spdml;

// Exit codes: 0 success, 2 input/parse, 3 internal invariant, 4 shape/config,
// 5 solver/protocol.
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitShapeConfig = 4;
constexpr int kExitSolver = 5;

// Seed streams for the evaluation commands.
constexpr std::uint64_t kStreamRepeatBase = 0xE0000;
constexpr std::uint64_t kStreamRepeatRepBase = 0x50;

struct GlobalOpts {
  std::uint64_t seed = 0;
  int threads = 0;  // 0 picks the hardware thread count
  bool verbose = false;

  int resolved_threads() const {
    if (threads > 0) {
      return threads;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }
};

void echo_config(const std::string& command,
                 const std::vector<std::pair<std::string, std::string>>& kv) {
  std::cerr << "config: command=" << command;
  for (const auto& [k, v] : kv) {
    std::cerr << " " << k << "=" << v;
  }
  std::cerr << "\n";
}

std::string fmt_double(double v) { return format_value(v); }

json config_json(const std::vector<std::pair<std::string, std::string>>& kv) {
  json j = json::object();
  for (const auto& [k, v] : kv) {
    j[k] = v;
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw ParseError("failed while writing '" + path + "'");
  }
}

void check_pair_indices(const std::vector<PairConstraint>& pairs,
                        int item_count, const std::string& source) {
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const PairConstraint& c = pairs[p];
    if (c.i < 0 || c.i >= item_count || c.j < 0 || c.j >= item_count) {
      std::ostringstream msg;
      msg << source << ": pair " << p << " references item (" << c.i << ", "
          << c.j << ") but only " << item_count << " descriptors are present";
      throw ParseError(msg.str());
    }
    if (c.i == c.j) {
      std::ostringstream msg;
      msg << source << ": pair " << p << " relates item " << c.i
          << " to itself";
      throw ParseError(msg.str());
    }
  }
}

Eigen::MatrixXd embed_rows(const std::vector<Eigen::VectorXd>& points) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(points.size()),
                      points.front().size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  }
  return out;
}

// ---------------------------------------------------------------------------
// extract

struct ExtractOpts {
  std::string manifest;
  std::string out;
  std::string resize = "64x64";
  double epsilon = 1e-6;
};

DescriptorConfig descriptor_config(const ExtractOpts& opts) {
  DescriptorConfig dc;
  dc.epsilon_scale = opts.epsilon;
  if (opts.resize != "none") {
    const std::size_t x = opts.resize.find('x');
    if (x == std::string::npos) {
      throw ParseError("--resize expects WxH or 'none', got '" + opts.resize +
                       "'");
    }
    int w = 0;
    int h = 0;
    try {
      w = std::stoi(opts.resize.substr(0, x));
      h = std::stoi(opts.resize.substr(x + 1));
    } catch (const std::exception&) {
      throw ParseError("--resize expects WxH or 'none', got '" + opts.resize +
                       "'");
    }
    dc.resize_to = {w, h};
  }
  return dc;
}

int cmd_extract(const GlobalOpts& g, const ExtractOpts& opts) {
  echo_config("extract", {{"manifest", opts.manifest},
                          {"out", opts.out},
                          {"resize", opts.resize},
                          {"epsilon", fmt_double(opts.epsilon)},
                          {"seed", std::to_string(g.seed)}});
  const std::vector<ManifestEntry> entries = load_manifest(opts.manifest);
  if (entries.empty()) {
    throw ParseError("'" + opts.manifest + "': empty manifest");
  }
  const DescriptorConfig dc = descriptor_config(opts);
  DescriptorFile df;
  df.order = kDescriptorFeatures;
  df.convention = kDescriptorConventionImage;
  for (const ManifestEntry& entry : entries) {
    const ImageBuffer img = load_ppm(entry.path);
    df.records.push_back({entry.path, extract(img, dc)});
    if (g.verbose) {
      std::cerr << "extracted " << entry.path << "\n";
    }
  }
  save_descriptors(opts.out, df);
  std::cerr << "wrote " << df.records.size() << " descriptors to " << opts.out
            << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// dist

struct DistOpts {
  std::string kind;
  std::string a;
  std::string b;
  std::string model;
};

int cmd_dist(const GlobalOpts&, const DistOpts& opts) {
  const SpdMatrix a = load_spd_matrix(opts.a);
  const SpdMatrix b = load_spd_matrix(opts.b);
  double d = 0.0;
  if (opts.kind == "learned") {
    if (opts.model.empty()) {
      throw ParseError("kind 'learned' requires --model");
    }
    const ModelFile mf = load_model(opts.model);
    const MahalanobisMetric metric = metric_from_model(mf);
    const RepresentationKind tag =
        parse_representation_kind(mf.representation);
    if (mf.n > 0 && (a.order() != mf.n || b.order() != mf.n)) {
      std::ostringstream msg;
      msg << "model expects order " << mf.n << " matrices, got " << a.order()
          << " and " << b.order();
      throw ShapeError(msg.str());
    }
    d = mahalanobis_dist(metric, represent(a, tag), represent(b, tag));
  } else {
    const std::optional<DistanceKind> kind = parse_distance_kind(opts.kind);
    if (!kind) {
      throw ParseError("unknown distance kind '" + opts.kind + "'");
    }
    d = distance(*kind, a, b);
  }
  std::printf("%.12g\n", d);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// learn

struct LearnOpts {
  std::string descriptors;
  std::string constraints;
  std::string representation = "log-euclidean";
  double gamma = kDefaultGamma;
  double a = 5.0;
  double b = 95.0;
  double conv_tol = 1e-3;
  int max_sweeps = 0;
  std::string out;
};

int cmd_learn(const GlobalOpts& g, const LearnOpts& opts) {
  echo_config("learn", {{"descriptors", opts.descriptors},
                        {"constraints", opts.constraints},
                        {"representation", opts.representation},
                        {"gamma", fmt_double(opts.gamma)},
                        {"a", fmt_double(opts.a)},
                        {"b", fmt_double(opts.b)},
                        {"conv_tol", fmt_double(opts.conv_tol)},
                        {"max_sweeps", std::to_string(opts.max_sweeps)},
                        {"out", opts.out},
                        {"seed", std::to_string(g.seed)}});
  const DescriptorFile df = load_descriptors(opts.descriptors);
  const PairsFile pf = load_pairs(opts.constraints);
  check_pair_indices(pf.pairs, static_cast<int>(df.records.size()),
                     "'" + opts.constraints + "'");
  const RepresentationKind tag =
      parse_representation_kind(opts.representation);

  const std::vector<SpdMatrix> items = matrices_of(df);
  const Eigen::MatrixXd points = embed_rows(represent_all(items, tag));
  ItmlConfig cfg;
  cfg.gamma = opts.gamma;
  cfg.percentile_a = opts.a;
  cfg.percentile_b = opts.b;
  cfg.conv_tol = opts.conv_tol;
  cfg.max_sweeps = opts.max_sweeps;
  cfg.seed = g.seed;
  const auto [metric, report] = itml_fit(points, pf.pairs, cfg);

  ModelFile mf;
  mf.representation = name(tag);
  mf.n = df.order;
  mf.d = metric.dim();
  mf.convention = metric.convention();
  mf.m = metric.m().mat();
  mf.config = cfg;
  mf.l = report.l;
  mf.u = report.u;
  mf.converged = report.converged;
  mf.sweeps = report.sweeps;
  mf.objective = report.objective;
  mf.training_items = static_cast<int>(df.records.size());
  for (const PairConstraint& c : pf.pairs) {
    (c.kind == PairLabel::kSimilar ? mf.similar_constraints
                                   : mf.dissimilar_constraints)++;
  }
  mf.library_version = kVersion;
  save_model(opts.out, mf);
  std::cerr << "model written to " << opts.out << " (converged="
            << (report.converged ? "yes" : "no") << " sweeps=" << report.sweeps
            << " objective=" << fmt_double(report.objective) << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// match-eval

struct MatchEvalOpts {
  std::string descriptors;
  std::string pairs;
  int folds = 10;
  std::vector<std::string> representations;
  bool learned_only = false;
  bool unlearned_only = false;
  bool both = false;
  double gamma = kDefaultGamma;
  double a = 5.0;
  double b = 95.0;
  double conv_tol = 1e-3;
  int max_sweeps = 0;
  std::string out;
};

// Identity-metric protocol only; mirrors the fold handling of
// kfold_match_eval without running the solver.
MatchEvalResult unlearned_match_eval(const PairDataset& ds,
                                     RepresentationKind tag, int folds,
                                     std::uint64_t seed) {
  if (folds < 2) {
    throw ConfigError("fold count must be at least 2, got " +
                      std::to_string(folds));
  }
  validate_pair_dataset(ds, ds.fold_of_pair.empty() ? 0 : folds);
  if (ds.pairs.empty()) {
    throw InsufficientDataError("match-eval: dataset has no pairs");
  }
  const std::vector<int> fold_of =
      ds.fold_of_pair.empty() ? assign_folds_stratified(ds.pairs, folds, seed)
                              : ds.fold_of_pair;
  const std::vector<Eigen::VectorXd> points = represent_all(ds.items, tag);
  MatchEvalResult out;
  out.tag = tag;
  out.seed = seed;
  out.folds.resize(folds);
  int scored = 0;
  for (int f = 0; f < folds; ++f) {
    MatchFoldResult& fr = out.folds[f];
    fr.fold = f;
    std::vector<double> train_d;
    std::vector<PairLabel> train_l;
    std::vector<int> test_ids;
    for (std::size_t p = 0; p < ds.pairs.size(); ++p) {
      const PairConstraint& c = ds.pairs[p];
      if (fold_of[p] == f) {
        test_ids.push_back(static_cast<int>(p));
      } else {
        train_d.push_back((points[c.i] - points[c.j]).norm());
        train_l.push_back(c.kind);
      }
    }
    fr.train_pairs = static_cast<int>(train_d.size());
    fr.test_pairs = static_cast<int>(test_ids.size());
    if (train_d.empty()) {
      throw SolverError("fold " + std::to_string(f) +
                        " has no training pairs");
    }
    const ThresholdResult tr = best_threshold(train_d, train_l);
    fr.unlearned_threshold = tr.threshold;
    if (!test_ids.empty()) {
      int ok = 0;
      for (int p : test_ids) {
        const PairConstraint& c = ds.pairs[p];
        const double d = (points[c.i] - points[c.j]).norm();
        ok += ((d <= tr.threshold) == (c.kind == PairLabel::kSimilar)) ? 1 : 0;
      }
      fr.unlearned_accuracy =
          static_cast<double>(ok) / static_cast<double>(test_ids.size());
      out.mean_unlearned += fr.unlearned_accuracy;
      ++scored;
    }
  }
  if (scored == 0) {
    throw SolverError("match-eval: no fold had held-out pairs");
  }
  out.mean_unlearned /= scored;
  return out;
}

std::vector<RepresentationKind> parse_representations(
    const std::vector<std::string>& tokens) {
  if (tokens.empty()) {
    return all_representation_kinds();
  }
  std::vector<RepresentationKind> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) {
    out.push_back(parse_representation_kind(t));
  }
  return out;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
  return buf;
}

// Table 5 / Table 6 shaped text: one block of {dist, itml, gain} columns per
// representation.
std::string accuracy_table(const std::vector<RepresentationKind>& reps,
                           const std::vector<double>& unlearned,
                           const std::vector<double>& learned,
                           const std::string& row_label, bool show_unlearned,
                           bool show_learned) {
  std::ostringstream out;
  const int label_w = 16;
  const int col_w = 10;
  out << std::string(label_w, ' ');
  for (RepresentationKind r : reps) {
    int block = 0;
    block += show_unlearned ? col_w : 0;
    block += show_learned ? col_w : 0;
    block += (show_unlearned && show_learned) ? col_w : 0;
    std::string title = name(r);
    if (static_cast<int>(title.size()) > block - 2) {
      title = title.substr(0, block - 2);
    }
    out << "  " << title << std::string(block - 2 - title.size(), ' ');
  }
  out << "\n" << std::string(label_w, ' ');
  for (std::size_t i = 0; i < reps.size(); ++i) {
    char buf[64];
    if (show_unlearned) {
      std::snprintf(buf, sizeof(buf), "%*s", col_w, "dist");
      out << buf;
    }
    if (show_learned) {
      std::snprintf(buf, sizeof(buf), "%*s", col_w, "itml");
      out << buf;
    }
    if (show_unlearned && show_learned) {
      std::snprintf(buf, sizeof(buf), "%*s", col_w, "gain");
      out << buf;
    }
  }
  out << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-*s", label_w, row_label.c_str());
  out << buf;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (show_unlearned) {
      std::snprintf(buf, sizeof(buf), "%*s", col_w, percent(unlearned[i]).c_str());
      out << buf;
    }
    if (show_learned) {
      std::snprintf(buf, sizeof(buf), "%*s", col_w, percent(learned[i]).c_str());
      out << buf;
    }
    if (show_unlearned && show_learned) {
      std::snprintf(buf, sizeof(buf), "%*s", col_w,
                    percent(learned[i] - unlearned[i]).c_str());
      out << buf;
    }
  }
  out << "\n";
  return out.str();
}

int cmd_match_eval(const GlobalOpts& g, const MatchEvalOpts& opts) {
  const bool show_learned = !opts.unlearned_only;
  const bool show_unlearned = !opts.learned_only;
  const std::string mode = opts.unlearned_only
                               ? "unlearned"
                               : (opts.learned_only ? "learned" : "both");
  std::vector<std::pair<std::string, std::string>> kv = {
      {"descriptors", opts.descriptors},
      {"pairs", opts.pairs},
      {"folds", std::to_string(opts.folds)},
      {"mode", mode},
      {"gamma", fmt_double(opts.gamma)},
      {"a", fmt_double(opts.a)},
      {"b", fmt_double(opts.b)},
      {"conv_tol", fmt_double(opts.conv_tol)},
      {"max_sweeps", std::to_string(opts.max_sweeps)},
      {"out", opts.out},
      {"seed", std::to_string(g.seed)}};
  const std::vector<RepresentationKind> reps =
      parse_representations(opts.representations);
  {
    std::string rep_names;
    for (RepresentationKind r : reps) {
      rep_names += rep_names.empty() ? "" : ",";
      rep_names += name(r);
    }
    kv.push_back({"representations", rep_names});
  }
  echo_config("match-eval", kv);

  const DescriptorFile df = load_descriptors(opts.descriptors);
  const PairsFile pf = load_pairs(opts.pairs);
  check_pair_indices(pf.pairs, static_cast<int>(df.records.size()),
                     "'" + opts.pairs + "'");
  PairDataset ds;
  ds.items = matrices_of(df);
  ds.pairs = pf.pairs;
  ds.fold_of_pair = pf.folds;

  ItmlConfig cfg;
  cfg.gamma = opts.gamma;
  cfg.percentile_a = opts.a;
  cfg.percentile_b = opts.b;
  cfg.conv_tol = opts.conv_tol;
  cfg.max_sweeps = opts.max_sweeps;
  cfg.seed = g.seed;

  std::vector<MatchEvalResult> results;
  for (RepresentationKind tag : reps) {
    if (opts.unlearned_only) {
      results.push_back(unlearned_match_eval(ds, tag, opts.folds, g.seed));
    } else {
      results.push_back(kfold_match_eval(ds, tag, cfg, opts.folds, g.seed,
                                         g.resolved_threads()));
    }
    if (g.verbose) {
      std::cerr << "representation " << name(tag) << ": unlearned "
                << percent(results.back().mean_unlearned) << " learned "
                << percent(results.back().mean_learned) << "\n";
    }
  }

  std::vector<double> mean_u;
  std::vector<double> mean_l;
  for (const MatchEvalResult& r : results) {
    mean_u.push_back(r.mean_unlearned);
    mean_l.push_back(r.mean_learned);
  }
  const std::string table = accuracy_table(reps, mean_u, mean_l,
                                           "accuracy (%)", show_unlearned,
                                           show_learned);
  std::cout << table;

  json j;
  j["command"] = "match-eval";
  j["config"] = config_json(kv);
  j["seed"] = g.seed;
  j["results"] = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const MatchEvalResult& r = results[i];
    json jr;
    jr["representation"] = name(reps[i]);
    if (show_unlearned) {
      jr["mean_unlearned"] = r.mean_unlearned;
    }
    if (show_learned) {
      jr["mean_learned"] = r.mean_learned;
      jr["mean_gain"] = r.mean_learned - r.mean_unlearned;
    }
    jr["folds"] = json::array();
    for (const MatchFoldResult& f : r.folds) {
      json jf;
      jf["fold"] = f.fold;
      jf["train_pairs"] = f.train_pairs;
      jf["test_pairs"] = f.test_pairs;
      if (show_unlearned) {
        jf["unlearned_threshold"] = f.unlearned_threshold;
        jf["unlearned_accuracy"] = f.unlearned_accuracy;
      }
      if (show_learned) {
        jf["learned_threshold"] = f.learned_threshold;
        jf["learned_accuracy"] = f.learned_accuracy;
        jf["converged"] = f.converged;
        jf["sweeps"] = f.sweeps;
      }
      jr["folds"].push_back(jf);
    }
    j["results"].push_back(jr);
  }

  fs::create_directories(opts.out);
  write_text_file((fs::path(opts.out) / "report.txt").string(), table);
  write_text_file((fs::path(opts.out) / "report.structured").string(),
                  j.dump(2) + "\n");
  std::cerr << "reports written to " << opts.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// cluster-eval

struct ClusterEvalOpts {
  std::string descriptors;
  std::string labels;
  double train_fraction = 0.5;
  int k = 0;
  int restarts = 20;
  int repeats = 5;
  std::vector<std::string> representations;
  std::vector<double> gamma_grid;
  double a = 5.0;
  double b = 95.0;
  double conv_tol = 1e-3;
  int max_sweeps = 0;
  std::string out;
};

int cmd_cluster_eval(const GlobalOpts& g, const ClusterEvalOpts& opts) {
  const std::vector<RepresentationKind> reps =
      parse_representations(opts.representations);
  const std::vector<double> grid =
      opts.gamma_grid.empty() ? default_gamma_grid() : opts.gamma_grid;

  std::vector<std::pair<std::string, std::string>> kv = {
      {"descriptors", opts.descriptors},
      {"labels", opts.labels},
      {"train_fraction", fmt_double(opts.train_fraction)},
      {"k", std::to_string(opts.k)},
      {"restarts", std::to_string(opts.restarts)},
      {"repeats", std::to_string(opts.repeats)},
      {"a", fmt_double(opts.a)},
      {"b", fmt_double(opts.b)},
      {"conv_tol", fmt_double(opts.conv_tol)},
      {"max_sweeps", std::to_string(opts.max_sweeps)},
      {"out", opts.out},
      {"seed", std::to_string(g.seed)}};
  {
    std::string names;
    for (RepresentationKind r : reps) {
      names += names.empty() ? "" : ",";
      names += name(r);
    }
    kv.push_back({"representations", names});
    std::string gg;
    for (double v : grid) {
      gg += gg.empty() ? "" : ",";
      gg += fmt_double(v);
    }
    kv.push_back({"gamma_grid", gg});
  }
  echo_config("cluster-eval", kv);

  if (opts.repeats < 1) {
    throw ConfigError("--repeats must be positive");
  }
  const DescriptorFile df = load_descriptors(opts.descriptors);
  ClusterDataset base;
  base.items = matrices_of(df);
  base.labels =
      load_labels(opts.labels, static_cast<int>(df.records.size()));
  validate_cluster_dataset(base, opts.k);

  ItmlConfig cfg0;
  cfg0.percentile_a = opts.a;
  cfg0.percentile_b = opts.b;
  cfg0.conv_tol = opts.conv_tol;
  cfg0.max_sweeps = opts.max_sweeps;

  struct Cell {
    int repeat = 0;
    std::uint64_t seed = 0;
    double gamma = 0.0;
    double unlearned = 0.0;
    double learned = 0.0;
    double unlearned_cost = 0.0;
    double learned_cost = 0.0;
    int constraints = 0;
  };
  std::vector<std::vector<Cell>> cells(reps.size());

  for (int r = 0; r < opts.repeats; ++r) {
    const std::uint64_t seed_r =
        mix_seed(g.seed, kStreamRepeatBase + static_cast<std::uint64_t>(r));
    ClusterDataset ds = base;
    assign_train_mask(ds, opts.train_fraction, seed_r);
    std::vector<int> train_ids;
    for (std::size_t i = 0; i < ds.train_mask.size(); ++i) {
      if (ds.train_mask[i]) {
        train_ids.push_back(static_cast<int>(i));
      }
    }
    for (std::size_t ti = 0; ti < reps.size(); ++ti) {
      const RepresentationKind tag = reps[ti];
      const std::uint64_t seed_rt =
          mix_seed(seed_r, kStreamRepeatRepBase + ti);
      const ClusterOutcome unlearned =
          cluster_spd(ds, tag, false, cfg0, opts.k, opts.restarts, seed_rt,
                      g.resolved_threads());

      double gamma = grid.front();
      if (grid.size() > 1) {
        std::vector<Eigen::VectorXd> train_points;
        std::vector<int> train_labels;
        for (int id : train_ids) {
          train_points.push_back(represent(ds.items[id], tag));
          train_labels.push_back(ds.labels[id]);
        }
        gamma = select_gamma_cv(train_points, train_labels, grid, cfg0,
                                seed_rt, g.resolved_threads());
      }
      ItmlConfig cfg = cfg0;
      cfg.gamma = gamma;
      const ClusterOutcome learned =
          cluster_spd(ds, tag, true, cfg, opts.k, opts.restarts, seed_rt,
                      g.resolved_threads());

      Cell cell;
      cell.repeat = r;
      cell.seed = seed_rt;
      cell.gamma = gamma;
      cell.unlearned = unlearned.accuracy;
      cell.learned = learned.accuracy;
      cell.unlearned_cost = unlearned.result.cost;
      cell.learned_cost = learned.result.cost;
      cell.constraints = learned.constraints_used;
      cells[ti].push_back(cell);
      if (g.verbose) {
        std::cerr << "repeat " << r << " " << name(tag) << ": unlearned "
                  << percent(cell.unlearned) << " learned "
                  << percent(cell.learned) << " (gamma "
                  << fmt_double(gamma) << ")\n";
      }
    }
  }

  std::vector<double> mean_u(reps.size(), 0.0);
  std::vector<double> mean_l(reps.size(), 0.0);
  for (std::size_t ti = 0; ti < reps.size(); ++ti) {
    for (const Cell& c : cells[ti]) {
      mean_u[ti] += c.unlearned;
      mean_l[ti] += c.learned;
    }
    mean_u[ti] /= opts.repeats;
    mean_l[ti] /= opts.repeats;
  }

  const std::string table =
      accuracy_table(reps, mean_u, mean_l, "accuracy (%)", true, true);
  std::cout << table;

  json j;
  j["command"] = "cluster-eval";
  j["config"] = config_json(kv);
  j["seed"] = g.seed;
  j["results"] = json::array();
  for (std::size_t ti = 0; ti < reps.size(); ++ti) {
    json jr;
    jr["representation"] = name(reps[ti]);
    jr["mean_unlearned"] = mean_u[ti];
    jr["mean_learned"] = mean_l[ti];
    jr["mean_gain"] = mean_l[ti] - mean_u[ti];
    jr["repeats"] = json::array();
    for (const Cell& c : cells[ti]) {
      json jc;
      jc["repeat"] = c.repeat;
      jc["seed"] = c.seed;
      jc["gamma"] = c.gamma;
      jc["unlearned_accuracy"] = c.unlearned;
      jc["learned_accuracy"] = c.learned;
      jc["unlearned_cost"] = c.unlearned_cost;
      jc["learned_cost"] = c.learned_cost;
      jc["constraints"] = c.constraints;
      jr["repeats"].push_back(jc);
    }
    j["results"].push_back(jr);
  }

  fs::create_directories(opts.out);
  write_text_file((fs::path(opts.out) / "report.txt").string(), table);
  write_text_file((fs::path(opts.out) / "report.structured").string(),
                  j.dump(2) + "\n");
  std::cerr << "reports written to " << opts.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOpts {
  int n = 3;
  int k = 3;
  int per_class = 40;
  double spread = kDefaultSynthSpread;
  double nuisance = kDefaultSynthNuisance;
  std::string mode = "cluster";
  int pairs_per_label = 300;
  int folds = 10;
  std::string out;
};

int cmd_synth(const GlobalOpts& g, const SynthOpts& opts) {
  echo_config("synth", {{"n", std::to_string(opts.n)},
                        {"k", std::to_string(opts.k)},
                        {"per_class", std::to_string(opts.per_class)},
                        {"spread", fmt_double(opts.spread)},
                        {"nuisance", fmt_double(opts.nuisance)},
                        {"mode", opts.mode},
                        {"pairs_per_label",
                         std::to_string(opts.pairs_per_label)},
                        {"folds", std::to_string(opts.folds)},
                        {"out", opts.out},
                        {"seed", std::to_string(g.seed)}});
  if (opts.mode != "cluster" && opts.mode != "pairs") {
    throw ParseError("--mode must be 'cluster' or 'pairs', got '" +
                     opts.mode + "'");
  }
  SynthConfig cfg;
  cfg.order = opts.n;
  cfg.k = opts.k;
  cfg.per_class = opts.per_class;
  cfg.spread = opts.spread;
  cfg.nuisance = opts.nuisance;
  try {
    fs::create_directories(opts.out);
    DescriptorFile df;
    df.order = opts.n;
    df.convention = kDescriptorConventionSynthetic;
    const auto id_of = [](std::size_t i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "synth-%04zu", i);
      return std::string(buf);
    };
    if (opts.mode == "cluster") {
      const ClusterDataset ds = synth_spd_clusters(cfg, g.seed);
      for (std::size_t i = 0; i < ds.items.size(); ++i) {
        df.records.push_back({id_of(i), ds.items[i]});
      }
      save_descriptors((fs::path(opts.out) / "descriptors.txt").string(), df);
      save_labels((fs::path(opts.out) / "labels.txt").string(), ds.labels);
      std::cerr << "wrote " << ds.items.size() << " items ("
                << opts.k << " classes) to " << opts.out << "\n";
    } else {
      const PairDataset ds =
          synth_spd_pairs(cfg, opts.pairs_per_label, opts.folds, g.seed);
      for (std::size_t i = 0; i < ds.items.size(); ++i) {
        df.records.push_back({id_of(i), ds.items[i]});
      }
      save_descriptors((fs::path(opts.out) / "descriptors.txt").string(), df);
      save_pairs((fs::path(opts.out) / "pairs.txt").string(), ds.pairs,
                 ds.fold_of_pair);
      std::cerr << "wrote " << ds.items.size() << " items and "
                << ds.pairs.size() << " pairs to " << opts.out << "\n";
    }
  } catch (const ConfigError& e) {
    // Bad generator parameters are an input problem for this command.
    throw ParseError(e.what());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int dispatch(int argc, char** argv) {
  CLI::App app{"SPD matrix distances, log-Euclidean metric learning and "
               "evaluation protocols"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Master seed for all randomized steps")
      ->capture_default_str();
  app.add_option("--threads", g.threads,
                 "Worker threads (0 = hardware count)")
      ->capture_default_str();
  app.add_flag("--verbose", g.verbose, "Progress detail on standard error");

  ExtractOpts ex;
  CLI::App* s_extract =
      app.add_subcommand("extract", "Covariance descriptors from images");
  s_extract->add_option("--manifest", ex.manifest,
                        "Image manifest: one \"path [label]\" per line")
      ->required();
  s_extract->add_option("--out", ex.out, "Descriptor file to write")
      ->required();
  s_extract->add_option("--resize", ex.resize, "WxH resize target or 'none'")
      ->capture_default_str();
  s_extract->add_option("--epsilon", ex.epsilon,
                        "Covariance regularizer scale")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  DistOpts di;
  CLI::App* s_dist =
      app.add_subcommand("dist", "Distance between two SPD matrices");
  s_dist->add_option("--kind", di.kind,
                     "frobenius | cholesky-frobenius | j-divergence | jbld | "
                     "affine-invariant | log-frobenius | learned")
      ->required();
  s_dist->add_option("--a", di.a, "First matrix file")->required();
  s_dist->add_option("--b", di.b, "Second matrix file")->required();
  s_dist->add_option("--model", di.model, "Model file for kind 'learned'");

  LearnOpts le;
  CLI::App* s_learn =
      app.add_subcommand("learn", "Fit a Mahalanobis metric from constraints");
  s_learn->add_option("--descriptors", le.descriptors, "Descriptor file")
      ->required();
  s_learn->add_option("--constraints", le.constraints,
                      "Constraint file: \"i j s|d\" per line")
      ->required();
  s_learn->add_option("--representation", le.representation,
                      "euclidean-cov | cholesky | log-euclidean")
      ->capture_default_str();
  s_learn->add_option("--gamma", le.gamma, "Slack tradeoff")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_learn->add_option("--a", le.a, "Similar-pair percentile")
      ->capture_default_str();
  s_learn->add_option("--b", le.b, "Dissimilar-pair percentile")
      ->capture_default_str();
  s_learn->add_option("--conv-tol", le.conv_tol, "Convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_learn->add_option("--max-sweeps", le.max_sweeps,
                      "Sweep budget (0 = automatic)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  s_learn->add_option("--out", le.out, "Model file to write")->required();

  MatchEvalOpts me;
  CLI::App* s_match =
      app.add_subcommand("match-eval", "K-fold pair matching evaluation");
  s_match->add_option("--descriptors", me.descriptors, "Descriptor file")
      ->required();
  s_match->add_option("--pairs", me.pairs,
                      "Pairs file: \"i j s|d [fold]\" per line")
      ->required();
  s_match->add_option("--folds", me.folds, "Cross-validation folds")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  s_match->add_option("--representations", me.representations,
                      "Comma-separated representation list")
      ->delimiter(',');
  CLI::Option* f_learned =
      s_match->add_flag("--learned", me.learned_only, "Learned metric only");
  CLI::Option* f_unlearned = s_match->add_flag("--unlearned",
                                               me.unlearned_only,
                                               "Unlearned baseline only");
  CLI::Option* f_both =
      s_match->add_flag("--both", me.both, "Learned and unlearned (default)");
  f_learned->excludes(f_unlearned)->excludes(f_both);
  f_unlearned->excludes(f_both);
  s_match->add_option("--gamma", me.gamma, "Slack tradeoff")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_match->add_option("--a", me.a, "Similar-pair percentile")
      ->capture_default_str();
  s_match->add_option("--b", me.b, "Dissimilar-pair percentile")
      ->capture_default_str();
  s_match->add_option("--conv-tol", me.conv_tol, "Convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_match->add_option("--max-sweeps", me.max_sweeps,
                      "Sweep budget (0 = automatic)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  s_match->add_option("--out", me.out, "Report directory")->required();

  ClusterEvalOpts ce;
  CLI::App* s_cluster = app.add_subcommand(
      "cluster-eval", "Semi-supervised K-means clustering evaluation");
  s_cluster->add_option("--descriptors", ce.descriptors, "Descriptor file")
      ->required();
  s_cluster->add_option("--labels", ce.labels,
                        "Labels file: \"item_index label\" per line")
      ->required();
  s_cluster->add_option("--train-fraction", ce.train_fraction,
                        "Per-class supervised fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  s_cluster->add_option("--k", ce.k, "Number of clusters")
      ->required()
      ->check(CLI::PositiveNumber);
  s_cluster->add_option("--restarts", ce.restarts, "K-means restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_cluster->add_option("--repeats", ce.repeats, "Protocol repetitions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_cluster->add_option("--representations", ce.representations,
                        "Comma-separated representation list")
      ->delimiter(',');
  s_cluster->add_option("--gamma-grid", ce.gamma_grid,
                        "Comma-separated gamma candidates (one value skips "
                        "cross-validation)")
      ->delimiter(',');
  s_cluster->add_option("--a", ce.a, "Similar-pair percentile")
      ->capture_default_str();
  s_cluster->add_option("--b", ce.b, "Dissimilar-pair percentile")
      ->capture_default_str();
  s_cluster->add_option("--conv-tol", ce.conv_tol, "Convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_cluster->add_option("--max-sweeps", ce.max_sweeps,
                        "Sweep budget (0 = automatic)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  s_cluster->add_option("--out", ce.out, "Report directory")->required();

  SynthOpts sy;
  CLI::App* s_synth =
      app.add_subcommand("synth", "Synthetic SPD dataset generator");
  s_synth->add_option("--n", sy.n, "Matrix order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_synth->add_option("--k", sy.k, "Number of classes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_synth->add_option("--per-class", sy.per_class, "Items per class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_synth->add_option("--spread", sy.spread, "Signal-coordinate noise scale")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  s_synth->add_option("--nuisance", sy.nuisance,
                      "Nuisance-coordinate noise scale")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  s_synth->add_option("--mode", sy.mode, "cluster | pairs")
      ->capture_default_str();
  s_synth->add_option("--pairs-per-label", sy.pairs_per_label,
                      "Pairs of each label in pairs mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_synth->add_option("--folds", sy.folds, "Fold count in pairs mode")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  s_synth->add_option("--out", sy.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (*s_extract) {
    return cmd_extract(g, ex);
  }
  if (*s_dist) {
    return cmd_dist(g, di);
  }
  if (*s_learn) {
    return cmd_learn(g, le);
  }
  if (*s_match) {
    return cmd_match_eval(g, me);
  }
  if (*s_cluster) {
    return cmd_cluster_eval(g, ce);
  }
  if (*s_synth) {
    return cmd_synth(g, sy);
  }
  std::cerr << "error: no command selected\n";
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitShapeConfig;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitShapeConfig;
  } catch (const Error& e) {
    // InternalError, NumericalError and NotSpdError signal violated
    // invariants at this level.
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
