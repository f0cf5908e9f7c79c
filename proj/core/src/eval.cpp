// core/src/eval.cpp

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

#include "spdml/eval.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "spdml/errors.hpp"
#include "spdml/linalg.hpp"
#include "spdml/random.hpp"

namespace spdml {

namespace {

// Stream indices for mix_seed, one per independent random decision.
constexpr std::uint64_t kStreamFolds = 0xF01D;
constexpr std::uint64_t kStreamFoldFitBase = 0x17310000;
constexpr std::uint64_t kStreamClusterFit = 0x17B1;
constexpr std::uint64_t kStreamKmeans = 0x03A7;
constexpr std::uint64_t kStreamTrainMask = 0x7A51;
constexpr std::uint64_t kStreamSynthItems = 0x5D47;
constexpr std::uint64_t kStreamSynthPairs = 0x9A12;
constexpr std::uint64_t kStreamGammaCvSplit = 0x6C57;
constexpr std::uint64_t kStreamGammaCvFitBase = 0x6A000000;

void parallel_for(int count, int threads,
                  const std::function<void(int)>& body) {
  if (count <= 0) {
    return;
  }
  const int workers = std::min(std::max(threads, 1), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

Eigen::MatrixXd rows_from(const std::vector<Eigen::VectorXd>& points,
                          const std::vector<int>& ids) {
  if (ids.empty()) {
    throw InsufficientDataError("no points selected");
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()),
                      points[ids.front()].size());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = points[ids[r]].transpose();
  }
  return out;
}

// Maps the global item ids touched by `pairs` to a compact local range and
// rewrites the constraints accordingly. Returns the sorted global ids.
std::vector<int> localize_constraints(const std::vector<PairConstraint>& pairs,
                                      std::vector<PairConstraint>* local) {
  std::set<int> used;
  for (const PairConstraint& p : pairs) {
    used.insert(p.i);
    used.insert(p.j);
  }
  std::vector<int> ids(used.begin(), used.end());
  std::map<int, int> to_local;
  for (std::size_t r = 0; r < ids.size(); ++r) {
    to_local[ids[r]] = static_cast<int>(r);
  }
  local->clear();
  local->reserve(pairs.size());
  for (const PairConstraint& p : pairs) {
    local->push_back({to_local[p.i], to_local[p.j], p.kind});
  }
  return ids;
}

}  // namespace

const char* name(RepresentationKind kind) {
  switch (kind) {
    case RepresentationKind::kEuclideanCov:
      return "euclidean-cov";
    case RepresentationKind::kCholesky:
      return "cholesky";
    case RepresentationKind::kLogEuclidean:
      return "log-euclidean";
  }
  throw InternalError("name: unknown representation kind");
}

RepresentationKind parse_representation_kind(const std::string& token) {
  for (RepresentationKind kind : all_representation_kinds()) {
    if (token == name(kind)) {
      return kind;
    }
  }
  throw ParseError("unknown representation '" + token +
                   "' (expected euclidean-cov, cholesky or log-euclidean)");
}

const std::vector<RepresentationKind>& all_representation_kinds() {
  static const std::vector<RepresentationKind> kinds = {
      RepresentationKind::kEuclideanCov,
      RepresentationKind::kCholesky,
      RepresentationKind::kLogEuclidean,
  };
  return kinds;
}

Eigen::VectorXd represent(const SpdMatrix& p, RepresentationKind tag) {
  switch (tag) {
    case RepresentationKind::kEuclideanCov:
      return vec(p.sym()).coords();
    case RepresentationKind::kCholesky: {
      const Eigen::MatrixXd l = cholesky(p);
      const int n = p.order();
      Eigen::VectorXd out(sym_vec_dim(n));
      int at = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
          out(at++) = l(i, j);
        }
      }
      return out;
    }
    case RepresentationKind::kLogEuclidean:
      return embed(p).coords();
  }
  throw InternalError("represent: unknown representation kind");
}

std::vector<Eigen::VectorXd> represent_all(const std::vector<SpdMatrix>& items,
                                           RepresentationKind tag) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(items.size());
  for (const SpdMatrix& p : items) {
    out.push_back(represent(p, tag));
  }
  return out;
}

double representation_dist(const Representation& rep, const Eigen::VectorXd& v1,
                           const Eigen::VectorXd& v2) {
  if (rep.learned) {
    return mahalanobis_dist(*rep.learned, v1, v2);
  }
  if (v1.size() != v2.size()) {
    throw ShapeError("representation_dist: vector sizes differ");
  }
  return (v1 - v2).norm();
}

void validate_pair_dataset(const PairDataset& ds, int folds) {
  const int n = static_cast<int>(ds.items.size());
  for (std::size_t p = 0; p < ds.pairs.size(); ++p) {
    const PairConstraint& c = ds.pairs[p];
    if (c.i < 0 || c.i >= n || c.j < 0 || c.j >= n) {
      std::ostringstream msg;
      msg << "pair " << p << " references item (" << c.i << ", " << c.j
          << ") outside the dataset of " << n << " items";
      throw ConfigError(msg.str());
    }
    if (c.i == c.j) {
      std::ostringstream msg;
      msg << "pair " << p << " relates item " << c.i << " to itself";
      throw ConfigError(msg.str());
    }
  }
  if (!ds.fold_of_pair.empty()) {
    if (ds.fold_of_pair.size() != ds.pairs.size()) {
      throw ConfigError("fold assignment length does not match pair count");
    }
    if (folds > 0) {
      for (std::size_t p = 0; p < ds.fold_of_pair.size(); ++p) {
        if (ds.fold_of_pair[p] < 0 || ds.fold_of_pair[p] >= folds) {
          std::ostringstream msg;
          msg << "pair " << p << " has fold " << ds.fold_of_pair[p]
              << " outside [0, " << folds << ")";
          throw ConfigError(msg.str());
        }
      }
    }
  }
}

ThresholdResult best_threshold(const std::vector<double>& distances,
                               const std::vector<PairLabel>& labels) {
  if (distances.size() != labels.size()) {
    throw ShapeError("best_threshold: distance and label counts differ");
  }
  if (distances.empty()) {
    throw InsufficientDataError("best_threshold: no pairs given");
  }
  for (double d : distances) {
    if (!std::isfinite(d)) {
      throw NumericalError("best_threshold: non-finite distance");
    }
  }
  const int n = static_cast<int>(distances.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return distances[a] < distances[b];
  });

  int total_sim = 0;
  for (PairLabel l : labels) {
    total_sim += (l == PairLabel::kSimilar) ? 1 : 0;
  }
  const int total_dis = n - total_sim;

  // Walk thresholds in increasing order, keeping the count of similar pairs
  // at or below the threshold and dissimilar pairs above it.
  double best_t = distances[order.front()] - 1.0;
  int best_correct = total_dis;
  int sims_le = 0;
  int dis_le = 0;
  int at = 0;
  while (at < n) {
    const double d = distances[order[at]];
    while (at < n && distances[order[at]] == d) {
      if (labels[order[at]] == PairLabel::kSimilar) {
        ++sims_le;
      } else {
        ++dis_le;
      }
      ++at;
    }
    const double t = (at < n) ? 0.5 * (d + distances[order[at]]) : d + 1.0;
    const int correct = sims_le + (total_dis - dis_le);
    if (correct > best_correct) {
      best_correct = correct;
      best_t = t;
    }
  }
  return {best_t, static_cast<double>(best_correct) / n};
}

std::vector<int> assign_folds_stratified(
    const std::vector<PairConstraint>& pairs, int folds, std::uint64_t seed) {
  if (folds < 2) {
    throw ConfigError("fold count must be at least 2, got " +
                      std::to_string(folds));
  }
  std::vector<int> sim_ids;
  std::vector<int> dis_ids;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    (pairs[p].kind == PairLabel::kSimilar ? sim_ids : dis_ids)
        .push_back(static_cast<int>(p));
  }
  auto rng = make_rng(seed, kStreamFolds);
  shuffle_inplace(sim_ids, rng);
  shuffle_inplace(dis_ids, rng);
  std::vector<int> fold_of(pairs.size(), 0);
  for (std::size_t r = 0; r < sim_ids.size(); ++r) {
    fold_of[sim_ids[r]] = static_cast<int>(r % folds);
  }
  for (std::size_t r = 0; r < dis_ids.size(); ++r) {
    fold_of[dis_ids[r]] = static_cast<int>(r % folds);
  }
  return fold_of;
}

namespace {

MatchFoldResult eval_one_fold(const PairDataset& ds,
                              const std::vector<Eigen::VectorXd>& points,
                              const std::vector<int>& fold_of, int fold,
                              const ItmlConfig& config, std::uint64_t seed) {
  MatchFoldResult out;
  out.fold = fold;
  std::vector<PairConstraint> train;
  std::vector<int> test_ids;
  for (std::size_t p = 0; p < ds.pairs.size(); ++p) {
    if (fold_of[p] == fold) {
      test_ids.push_back(static_cast<int>(p));
    } else {
      train.push_back(ds.pairs[p]);
    }
  }
  out.train_pairs = static_cast<int>(train.size());
  out.test_pairs = static_cast<int>(test_ids.size());
  if (train.empty()) {
    throw SolverError("fold " + std::to_string(fold) +
                      " has no training pairs");
  }

  std::vector<PairConstraint> local;
  const std::vector<int> ids = localize_constraints(train, &local);
  ItmlConfig fold_cfg = config;
  fold_cfg.seed = mix_seed(seed, kStreamFoldFitBase +
                                     static_cast<std::uint64_t>(fold));
  const auto [metric, report] = itml_fit(rows_from(points, ids), local,
                                         fold_cfg);
  out.converged = report.converged;
  out.sweeps = report.sweeps;

  std::vector<double> train_learned;
  std::vector<double> train_unlearned;
  std::vector<PairLabel> train_labels;
  train_learned.reserve(train.size());
  train_unlearned.reserve(train.size());
  train_labels.reserve(train.size());
  for (const PairConstraint& c : train) {
    train_learned.push_back(mahalanobis_dist(metric, points[c.i], points[c.j]));
    train_unlearned.push_back((points[c.i] - points[c.j]).norm());
    train_labels.push_back(c.kind);
  }
  const ThresholdResult learned_t = best_threshold(train_learned, train_labels);
  const ThresholdResult unlearned_t =
      best_threshold(train_unlearned, train_labels);
  out.learned_threshold = learned_t.threshold;
  out.unlearned_threshold = unlearned_t.threshold;

  if (!test_ids.empty()) {
    int learned_ok = 0;
    int unlearned_ok = 0;
    for (int p : test_ids) {
      const PairConstraint& c = ds.pairs[p];
      const bool is_sim = (c.kind == PairLabel::kSimilar);
      const double dl = mahalanobis_dist(metric, points[c.i], points[c.j]);
      const double du = (points[c.i] - points[c.j]).norm();
      learned_ok += ((dl <= learned_t.threshold) == is_sim) ? 1 : 0;
      unlearned_ok += ((du <= unlearned_t.threshold) == is_sim) ? 1 : 0;
    }
    out.learned_accuracy =
        static_cast<double>(learned_ok) / static_cast<double>(test_ids.size());
    out.unlearned_accuracy = static_cast<double>(unlearned_ok) /
                             static_cast<double>(test_ids.size());
  }
  return out;
}

}  // namespace

MatchEvalResult kfold_match_eval(const PairDataset& ds, RepresentationKind tag,
                                 const ItmlConfig& config, int folds,
                                 std::uint64_t seed, int threads) {
  if (folds < 2) {
    throw ConfigError("fold count must be at least 2, got " +
                      std::to_string(folds));
  }
  validate_pair_dataset(ds, ds.fold_of_pair.empty() ? 0 : folds);
  if (ds.pairs.empty()) {
    throw InsufficientDataError("kfold_match_eval: dataset has no pairs");
  }
  const std::vector<int> fold_of = ds.fold_of_pair.empty()
                                       ? assign_folds_stratified(ds.pairs,
                                                                 folds, seed)
                                       : ds.fold_of_pair;
  const std::vector<Eigen::VectorXd> points = represent_all(ds.items, tag);

  MatchEvalResult out;
  out.tag = tag;
  out.seed = seed;
  out.folds.resize(folds);
  parallel_for(folds, threads, [&](int f) {
    out.folds[f] = eval_one_fold(ds, points, fold_of, f, config, seed);
  });

  int scored = 0;
  for (const MatchFoldResult& f : out.folds) {
    if (f.test_pairs > 0) {
      out.mean_unlearned += f.unlearned_accuracy;
      out.mean_learned += f.learned_accuracy;
      ++scored;
    }
  }
  if (scored == 0) {
    throw SolverError("kfold_match_eval: no fold had held-out pairs");
  }
  out.mean_unlearned /= scored;
  out.mean_learned /= scored;
  return out;
}

void validate_cluster_dataset(const ClusterDataset& ds, int k) {
  if (ds.labels.size() != ds.items.size()) {
    throw ConfigError("label count does not match item count");
  }
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    if (ds.labels[i] < 0 || (k > 0 && ds.labels[i] >= k)) {
      std::ostringstream msg;
      msg << "item " << i << " has label " << ds.labels[i];
      if (k > 0) {
        msg << " outside [0, " << k << ")";
      }
      throw ConfigError(msg.str());
    }
  }
  if (!ds.train_mask.empty() && ds.train_mask.size() != ds.items.size()) {
    throw ConfigError("train mask length does not match item count");
  }
}

void assign_train_mask(ClusterDataset& ds, double fraction,
                       std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ConfigError("train fraction must lie in [0, 1], got " +
                      std::to_string(fraction));
  }
  validate_cluster_dataset(ds, 0);
  std::map<int, std::vector<int>> by_label;
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    by_label[ds.labels[i]].push_back(static_cast<int>(i));
  }
  auto rng = make_rng(seed, kStreamTrainMask);
  ds.train_mask.assign(ds.items.size(), false);
  for (auto& [label, ids] : by_label) {
    shuffle_inplace(ids, rng);
    int take = static_cast<int>(
        std::lround(fraction * static_cast<double>(ids.size())));
    if (fraction > 0.0) {
      take = std::max(take, 1);
    }
    take = std::min(take, static_cast<int>(ids.size()));
    for (int r = 0; r < take; ++r) {
      ds.train_mask[ids[r]] = true;
    }
  }
}

namespace {

constexpr int kMaxLloydIterations = 1000;

ClusterResult run_one_restart(const std::vector<Eigen::VectorXd>& x, int k,
                              std::mt19937_64 rng,
                              std::vector<double>* cost_trace) {
  const int n = static_cast<int>(x.size());
  const Eigen::Index dim = x.front().size();

  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  for (int c = 0; c < k; ++c) {
    const auto pick =
        c + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(
                                                    n - c)));
    std::swap(ids[c], ids[pick]);
  }
  std::vector<Eigen::VectorXd> centroids(k);
  for (int c = 0; c < k; ++c) {
    centroids[c] = x[ids[c]];
  }

  std::vector<int> assign(n, -1);
  std::vector<int> counts(k, 0);
  double prev_cost = std::numeric_limits<double>::infinity();
  double cost = 0.0;
  for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
    bool changed = false;
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (x[i] - centroids[0]).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (x[i] - centroids[c]).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
      ++counts[best];
    }
    // Empty-cluster repair: hand the point farthest from its centroid to the
    // empty cluster (it must come from a cluster of at least two points).
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        continue;
      }
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (counts[assign[i]] < 2) {
          continue;
        }
        const double d = (x[i] - centroids[assign[i]]).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far < 0) {
        throw InternalError("kmeans: empty-cluster repair found no donor");
      }
      --counts[assign[far]];
      assign[far] = c;
      ++counts[c];
      centroids[c] = x[far];
      changed = true;
    }
    for (int c = 0; c < k; ++c) {
      centroids[c] = Eigen::VectorXd::Zero(dim);
    }
    for (int i = 0; i < n; ++i) {
      centroids[assign[i]] += x[i];
    }
    for (int c = 0; c < k; ++c) {
      centroids[c] /= static_cast<double>(counts[c]);
    }
    cost = 0.0;
    for (int i = 0; i < n; ++i) {
      cost += (x[i] - centroids[assign[i]]).squaredNorm();
    }
    if (cost_trace != nullptr) {
      cost_trace->push_back(cost);
    }
    assert(cost <= prev_cost + 1e-9 * std::max(1.0, prev_cost));
    if (!changed) {
      break;
    }
    prev_cost = cost;
  }

  ClusterResult out;
  out.assignments = std::move(assign);
  out.cost = cost;
  out.restarts_run = 1;
  return out;
}

void check_kmeans_input(const std::vector<Eigen::VectorXd>& vectors, int k,
                        int restarts) {
  if (vectors.empty()) {
    throw InsufficientDataError("kmeans: no points given");
  }
  const Eigen::Index dim = vectors.front().size();
  if (dim == 0) {
    throw ShapeError("kmeans: points are empty vectors");
  }
  for (const Eigen::VectorXd& v : vectors) {
    if (v.size() != dim) {
      throw ShapeError("kmeans: points have mixed dimensions");
    }
  }
  if (k < 1 || k > static_cast<int>(vectors.size())) {
    std::ostringstream msg;
    msg << "kmeans: k = " << k << " must lie in [1, " << vectors.size()
        << "]";
    throw ConfigError(msg.str());
  }
  if (restarts < 1) {
    throw ConfigError("kmeans: restart count must be positive, got " +
                      std::to_string(restarts));
  }
}

}  // namespace

ClusterResult kmeans(const std::vector<Eigen::VectorXd>& vectors, int k,
                     int restarts, std::uint64_t seed, int threads) {
  check_kmeans_input(vectors, k, restarts);
  std::vector<ClusterResult> runs(restarts);
  parallel_for(restarts, threads, [&](int r) {
    runs[r] = run_one_restart(vectors, k,
                              make_rng(seed, static_cast<std::uint64_t>(r)),
                              nullptr);
  });
  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    if (runs[r].cost < runs[best].cost) {
      best = r;
    }
  }
  ClusterResult out = std::move(runs[best]);
  out.restarts_run = restarts;
  out.seed = seed;
  return out;
}

ClusterResult kmeans_restart(const std::vector<Eigen::VectorXd>& vectors,
                             int k, std::uint64_t seed, int restart_index,
                             std::vector<double>* cost_trace) {
  check_kmeans_input(vectors, k, 1);
  if (restart_index < 0) {
    throw ConfigError("kmeans_restart: restart index must be nonnegative");
  }
  ClusterResult out = run_one_restart(
      vectors, k, make_rng(seed, static_cast<std::uint64_t>(restart_index)),
      cost_trace);
  out.seed = seed;
  return out;
}

double cluster_accuracy(const std::vector<int>& assignments,
                        const std::vector<int>& labels) {
  if (assignments.size() != labels.size()) {
    throw ShapeError("cluster_accuracy: assignment and label counts differ");
  }
  if (assignments.empty()) {
    throw InsufficientDataError("cluster_accuracy: no items");
  }
  int m = 0;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] < 0 || labels[i] < 0) {
      throw ConfigError("cluster_accuracy: negative cluster or class index");
    }
    m = std::max(m, std::max(assignments[i], labels[i]) + 1);
  }
  constexpr int kMaxExhaustive = 10;
  if (m > kMaxExhaustive) {
    std::ostringstream msg;
    msg << "cluster_accuracy: " << m << " clusters/classes exceeds the "
        << "exhaustive-search limit of " << kMaxExhaustive
        << "; use an assignment-problem (Hungarian) implementation for "
        << "larger instances";
    throw ConfigError(msg.str());
  }
  std::vector<std::vector<int>> confusion(m, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    ++confusion[assignments[i]][labels[i]];
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  int best = 0;
  do {
    int correct = 0;
    for (int c = 0; c < m; ++c) {
      correct += confusion[c][perm[c]];
    }
    best = std::max(best, correct);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(assignments.size());
}

namespace {

std::vector<PairConstraint> constraints_from_mask(
    const ClusterDataset& ds) {
  std::vector<int> train_ids;
  for (std::size_t i = 0; i < ds.train_mask.size(); ++i) {
    if (ds.train_mask[i]) {
      train_ids.push_back(static_cast<int>(i));
    }
  }
  std::vector<PairConstraint> out;
  out.reserve(train_ids.size() * (train_ids.size() - 1) / 2);
  for (std::size_t a = 0; a < train_ids.size(); ++a) {
    for (std::size_t b = a + 1; b < train_ids.size(); ++b) {
      const int i = train_ids[a];
      const int j = train_ids[b];
      out.push_back({i, j,
                     (ds.labels[i] == ds.labels[j]) ? PairLabel::kSimilar
                                                    : PairLabel::kDissimilar});
    }
  }
  return out;
}

}  // namespace

ClusterOutcome cluster_spd(const ClusterDataset& ds, RepresentationKind tag,
                           bool learned, const ItmlConfig& config, int k,
                           int restarts, std::uint64_t seed, int threads) {
  if (k < 1) {
    throw ConfigError("cluster_spd: k must be positive, got " +
                      std::to_string(k));
  }
  validate_cluster_dataset(ds, k);
  if (ds.items.empty()) {
    throw InsufficientDataError("cluster_spd: dataset has no items");
  }
  std::vector<Eigen::VectorXd> points = represent_all(ds.items, tag);

  ClusterOutcome out;
  if (learned) {
    if (ds.train_mask.size() != ds.items.size()) {
      throw ConfigError(
          "cluster_spd: learned clustering needs a train mask over all items");
    }
    const std::vector<PairConstraint> constraints = constraints_from_mask(ds);
    if (constraints.empty()) {
      throw SolverError(
          "cluster_spd: train mask yields no pair constraints to learn from");
    }
    out.constraints_used = static_cast<int>(constraints.size());
    std::vector<PairConstraint> local;
    const std::vector<int> ids = localize_constraints(constraints, &local);
    ItmlConfig fit_cfg = config;
    fit_cfg.seed = mix_seed(seed, kStreamClusterFit);
    auto [metric, report] = itml_fit(rows_from(points, ids), local, fit_cfg);
    out.fit = report;

    Eigen::LLT<Eigen::MatrixXd> llt(metric.m().mat());
    if (llt.info() != Eigen::Success) {
      throw NumericalError("cluster_spd: Cholesky of the learned M failed");
    }
    const Eigen::MatrixXd lt = llt.matrixU();
    for (Eigen::VectorXd& v : points) {
      v = lt * v;
    }
  }

  out.result =
      kmeans(points, k, restarts, mix_seed(seed, kStreamKmeans), threads);
  out.accuracy = cluster_accuracy(out.result.assignments, ds.labels);
  return out;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> grid;
  for (int e = 0; e <= 8; ++e) {
    grid.push_back(std::pow(10.0, 0.5 * e));
  }
  return grid;
}

double select_gamma_cv(const std::vector<Eigen::VectorXd>& points,
                       const std::vector<int>& labels,
                       const std::vector<double>& grid,
                       const ItmlConfig& base, std::uint64_t seed,
                       int threads) {
  if (grid.empty()) {
    throw ConfigError("select_gamma_cv: empty gamma grid");
  }
  if (points.size() != labels.size()) {
    throw ShapeError("select_gamma_cv: point and label counts differ");
  }
  if (points.size() < 4) {
    throw InsufficientDataError(
        "select_gamma_cv: need at least 4 labeled points for a 2-fold split");
  }
  if (grid.size() == 1) {
    return grid.front();
  }

  // Stratified half split.
  std::map<int, std::vector<int>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_label[labels[i]].push_back(static_cast<int>(i));
  }
  auto rng = make_rng(seed, kStreamGammaCvSplit);
  std::vector<std::vector<int>> half(2);
  for (auto& [label, ids] : by_label) {
    shuffle_inplace(ids, rng);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      half[r % 2].push_back(ids[r]);
    }
  }

  struct HalfData {
    Eigen::MatrixXd fit_points;
    std::vector<PairConstraint> fit_constraints;  // local indices
    std::vector<std::pair<int, int>> eval_pairs;  // global indices
    std::vector<PairLabel> eval_labels;
  };
  std::vector<HalfData> sides(2);
  for (int s = 0; s < 2; ++s) {
    const std::vector<int>& fit_ids = half[s];
    const std::vector<int>& eval_ids = half[1 - s];
    HalfData& hd = sides[s];
    hd.fit_points = rows_from(points, fit_ids);
    for (std::size_t a = 0; a < fit_ids.size(); ++a) {
      for (std::size_t b = a + 1; b < fit_ids.size(); ++b) {
        hd.fit_constraints.push_back(
            {static_cast<int>(a), static_cast<int>(b),
             (labels[fit_ids[a]] == labels[fit_ids[b]])
                 ? PairLabel::kSimilar
                 : PairLabel::kDissimilar});
      }
    }
    for (std::size_t a = 0; a < eval_ids.size(); ++a) {
      for (std::size_t b = a + 1; b < eval_ids.size(); ++b) {
        hd.eval_pairs.emplace_back(eval_ids[a], eval_ids[b]);
        hd.eval_labels.push_back((labels[eval_ids[a]] == labels[eval_ids[b]])
                                     ? PairLabel::kSimilar
                                     : PairLabel::kDissimilar);
      }
    }
    if (hd.fit_constraints.empty() || hd.eval_pairs.empty()) {
      throw InsufficientDataError(
          "select_gamma_cv: a half split has no pairs");
    }
  }

  const int tasks = static_cast<int>(grid.size()) * 2;
  std::vector<double> scores(tasks, 0.0);
  parallel_for(tasks, threads, [&](int t) {
    const int gi = t / 2;
    const int s = t % 2;
    const HalfData& hd = sides[s];
    ItmlConfig cfg = base;
    cfg.gamma = grid[gi];
    cfg.seed = mix_seed(seed, kStreamGammaCvFitBase +
                                  static_cast<std::uint64_t>(t));
    const auto [metric, report] = itml_fit(hd.fit_points,
                                           hd.fit_constraints, cfg);
    std::vector<double> fit_dists;
    std::vector<PairLabel> fit_labels;
    fit_dists.reserve(hd.fit_constraints.size());
    for (const PairConstraint& c : hd.fit_constraints) {
      fit_dists.push_back(mahalanobis_dist(metric,
                                           hd.fit_points.row(c.i).transpose(),
                                           hd.fit_points.row(c.j).transpose()));
      fit_labels.push_back(c.kind);
    }
    const ThresholdResult tr = best_threshold(fit_dists, fit_labels);
    int ok = 0;
    for (std::size_t p = 0; p < hd.eval_pairs.size(); ++p) {
      const auto& [i, j] = hd.eval_pairs[p];
      const double d = mahalanobis_dist(metric, points[i], points[j]);
      const bool is_sim = (hd.eval_labels[p] == PairLabel::kSimilar);
      ok += ((d <= tr.threshold) == is_sim) ? 1 : 0;
    }
    scores[t] = static_cast<double>(ok) /
                static_cast<double>(hd.eval_pairs.size());
  });

  int best = 0;
  double best_score = -1.0;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double score = 0.5 * (scores[2 * gi] + scores[2 * gi + 1]);
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(gi);
    }
  }
  return grid[best];
}

int synth_signal_dims(int embed_dim) {
  return std::max(1, embed_dim / 3);
}

namespace {

void check_synth_config(const SynthConfig& config) {
  if (config.order < 1) {
    throw ConfigError("synth: matrix order must be positive");
  }
  if (config.k < 1) {
    throw ConfigError("synth: class count must be positive");
  }
  if (config.per_class < 1) {
    throw ConfigError("synth: per-class count must be positive");
  }
  if (!(config.spread >= 0.0) || !(config.nuisance >= 0.0)) {
    throw ConfigError("synth: spread and nuisance must be nonnegative");
  }
}

// Draws k centers in the signal subspace, keeping candidates that clear a
// minimum pairwise separation when possible (best candidate of a bounded
// attempt budget otherwise, so generation always terminates).
std::vector<Eigen::VectorXd> draw_centers(int k, int signal,
                                          std::mt19937_64& rng) {
  constexpr double kBox = 2.0;
  constexpr double kMinSeparation = 1.5;
  constexpr int kAttempts = 200;
  std::vector<Eigen::VectorXd> centers;
  centers.reserve(k);
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd best;
    double best_sep = -1.0;
    for (int t = 0; t < kAttempts; ++t) {
      Eigen::VectorXd cand(signal);
      for (int s = 0; s < signal; ++s) {
        cand(s) = kBox * (2.0 * uniform_real(rng) - 1.0);
      }
      double sep = std::numeric_limits<double>::infinity();
      for (const Eigen::VectorXd& prev : centers) {
        sep = std::min(sep, (cand - prev).norm());
      }
      if (sep > best_sep) {
        best_sep = sep;
        best = cand;
      }
      if (best_sep >= kMinSeparation) {
        break;
      }
    }
    centers.push_back(best);
  }
  return centers;
}

}  // namespace

ClusterDataset synth_spd_clusters(const SynthConfig& config,
                                  std::uint64_t seed) {
  check_synth_config(config);
  const int d = sym_vec_dim(config.order);
  const int signal = synth_signal_dims(d);
  auto rng = make_rng(seed, kStreamSynthItems);
  const std::vector<Eigen::VectorXd> centers =
      draw_centers(config.k, signal, rng);

  ClusterDataset ds;
  ds.items.reserve(static_cast<std::size_t>(config.k) * config.per_class);
  ds.labels.reserve(ds.items.capacity());
  for (int c = 0; c < config.k; ++c) {
    for (int s = 0; s < config.per_class; ++s) {
      Eigen::VectorXd coords = Eigen::VectorXd::Zero(d);
      for (int t = 0; t < d; ++t) {
        const double scale = (t < signal) ? config.spread : config.nuisance;
        coords(t) = scale * gaussian(rng);
      }
      coords.head(signal) += centers[c];
      ds.items.push_back(sym_exp(unvec(SymVec(config.order, coords))));
      ds.labels.push_back(c);
    }
  }
  return ds;
}

PairDataset synth_spd_pairs(const SynthConfig& config, int pairs_per_label,
                            int folds, std::uint64_t seed) {
  check_synth_config(config);
  if (pairs_per_label < 1) {
    throw ConfigError("synth: pairs per label must be positive");
  }
  if (config.per_class < 2) {
    throw ConfigError("synth: pairs mode needs at least 2 items per class");
  }
  if (config.k < 2) {
    throw ConfigError("synth: pairs mode needs at least 2 classes");
  }
  const long max_similar = static_cast<long>(config.k) * config.per_class *
                           (config.per_class - 1) / 2;
  const long total = static_cast<long>(config.k) * config.per_class;
  const long max_dissimilar =
      total * (total - 1) / 2 - max_similar;
  if (pairs_per_label > max_similar || pairs_per_label > max_dissimilar) {
    std::ostringstream msg;
    msg << "synth: " << pairs_per_label << " pairs per label exceeds the "
        << "number of distinct pairs available (" << max_similar
        << " similar, " << max_dissimilar << " dissimilar)";
    throw ConfigError(msg.str());
  }

  ClusterDataset cds = synth_spd_clusters(config, seed);
  PairDataset ds;
  ds.items = std::move(cds.items);

  auto rng = make_rng(seed, kStreamSynthPairs);
  std::set<std::pair<int, int>> used;
  const auto item_of = [&](int cls, int member) {
    return cls * config.per_class + member;
  };
  const auto add_pair = [&](int i, int j, PairLabel kind) {
    const auto key = std::minmax(i, j);
    if (used.count(key) > 0) {
      return false;
    }
    used.insert(key);
    ds.pairs.push_back({key.first, key.second, kind});
    return true;
  };

  const long attempt_budget = 200L * pairs_per_label;
  int made = 0;
  for (long t = 0; made < pairs_per_label && t < attempt_budget; ++t) {
    const int c = static_cast<int>(uniform_below(rng, config.k));
    const int a = static_cast<int>(uniform_below(rng, config.per_class));
    int b = static_cast<int>(uniform_below(rng, config.per_class - 1));
    if (b >= a) {
      ++b;
    }
    made += add_pair(item_of(c, a), item_of(c, b), PairLabel::kSimilar) ? 1 : 0;
  }
  // Deterministic fill in index order if sampling hit the attempt budget.
  for (int c = 0; c < config.k && made < pairs_per_label; ++c) {
    for (int a = 0; a < config.per_class && made < pairs_per_label; ++a) {
      for (int b = a + 1; b < config.per_class && made < pairs_per_label;
           ++b) {
        made += add_pair(item_of(c, a), item_of(c, b), PairLabel::kSimilar)
                    ? 1
                    : 0;
      }
    }
  }

  made = 0;
  for (long t = 0; made < pairs_per_label && t < attempt_budget; ++t) {
    const int c1 = static_cast<int>(uniform_below(rng, config.k));
    int c2 = static_cast<int>(uniform_below(rng, config.k - 1));
    if (c2 >= c1) {
      ++c2;
    }
    const int a = static_cast<int>(uniform_below(rng, config.per_class));
    const int b = static_cast<int>(uniform_below(rng, config.per_class));
    made += add_pair(item_of(c1, a), item_of(c2, b), PairLabel::kDissimilar)
                ? 1
                : 0;
  }
  for (int i = 0; i < total && made < pairs_per_label; ++i) {
    for (int j = i + 1; j < total && made < pairs_per_label; ++j) {
      if (cds.labels[i] == cds.labels[j]) {
        continue;
      }
      made += add_pair(i, j, PairLabel::kDissimilar) ? 1 : 0;
    }
  }

  ds.fold_of_pair = assign_folds_stratified(ds.pairs, folds, seed);
  return ds;
}

}  // namespace spdml
