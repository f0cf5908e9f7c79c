// core/include/spdml/eval.hpp

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

#ifndef SPDML_EVAL_HPP_
#define SPDML_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spdml/geodesic.hpp"
#include "spdml/itml.hpp"
#include "spdml/types.hpp"

namespace spdml {

// Vector embeddings of SPD matrices used as inputs to metric learning and
// K-means. All three have dimension n(n+1)/2 for order-n input, and the plain
// Euclidean distance between embeddings reproduces a classical SPD distance:
// frobenius, cholesky-frobenius and log-frobenius respectively.
enum class RepresentationKind {
  kEuclideanCov,
  kCholesky,
  kLogEuclidean,
};

const char* name(RepresentationKind kind);
RepresentationKind parse_representation_kind(const std::string& token);
const std::vector<RepresentationKind>& all_representation_kinds();

/// An embedding choice together with an optional metric learned on top of it.
struct Representation {
  RepresentationKind tag = RepresentationKind::kLogEuclidean;
  std::optional<MahalanobisMetric> learned;
};

Eigen::VectorXd represent(const SpdMatrix& p, RepresentationKind tag);
std::vector<Eigen::VectorXd> represent_all(const std::vector<SpdMatrix>& items,
                                           RepresentationKind tag);

/// Distance between two items under a representation: Euclidean between the
/// embeddings, or the learned Mahalanobis distance when a metric is present.
double representation_dist(const Representation& rep, const Eigen::VectorXd& v1,
                           const Eigen::VectorXd& v2);

// ---------------------------------------------------------------------------
// Pair matching protocol.

struct PairDataset {
  std::vector<SpdMatrix> items;
  std::vector<PairConstraint> pairs;
  /// Empty, or one fold index per pair.
  std::vector<int> fold_of_pair;
};

/// Checks index validity and, when folds are present, that every pair carries
/// a fold index in [0, folds) (folds <= 0 skips the range check).
void validate_pair_dataset(const PairDataset& ds, int folds = 0);

struct ThresholdResult {
  double threshold = 0.0;
  double accuracy = 0.0;
};

/// Selects the threshold for the rule "predict similar iff distance <= t"
/// that maximizes accuracy. Candidates are midpoints of consecutive sorted
/// distinct distances plus one sentinel below the minimum and one above the
/// maximum; ties prefer the smallest threshold.
ThresholdResult best_threshold(const std::vector<double>& distances,
                               const std::vector<PairLabel>& labels);

/// Stratified seeded fold assignment: similar and dissimilar pairs are
/// permuted separately and dealt round-robin, so every fold has balanced
/// label counts.
std::vector<int> assign_folds_stratified(
    const std::vector<PairConstraint>& pairs, int folds, std::uint64_t seed);

struct MatchFoldResult {
  int fold = 0;
  int train_pairs = 0;
  int test_pairs = 0;
  double unlearned_threshold = 0.0;
  double unlearned_accuracy = 0.0;
  double learned_threshold = 0.0;
  double learned_accuracy = 0.0;
  bool converged = false;
  int sweeps = 0;
};

struct MatchEvalResult {
  RepresentationKind tag = RepresentationKind::kLogEuclidean;
  std::uint64_t seed = 0;
  std::vector<MatchFoldResult> folds;
  double mean_unlearned = 0.0;
  double mean_learned = 0.0;
};

/// K-fold pair-matching evaluation. Per fold: the metric is fit on the
/// training folds' pairs (restricted to items those pairs touch), the
/// threshold is selected on training distances, and accuracy is reported on
/// the held-out fold. The unlearned baseline scores the identity metric the
/// same way. Fold assignment comes from the dataset when present, otherwise
/// from assign_folds_stratified with the given seed.
MatchEvalResult kfold_match_eval(const PairDataset& ds, RepresentationKind tag,
                                 const ItmlConfig& config, int folds,
                                 std::uint64_t seed, int threads = 1);

// ---------------------------------------------------------------------------
// Clustering protocol.

struct ClusterDataset {
  std::vector<SpdMatrix> items;
  std::vector<int> labels;
  /// Empty, or one flag per item selecting the supervised subset.
  std::vector<bool> train_mask;
};

/// Checks label range against k and mask length (k <= 0 skips range checks).
void validate_cluster_dataset(const ClusterDataset& ds, int k = 0);

/// Marks a per-class stratified random fraction of items as training data.
/// Each class contributes round(fraction * class size) items, at least one
/// when the fraction is positive.
void assign_train_mask(ClusterDataset& ds, double fraction,
                       std::uint64_t seed);

struct ClusterResult {
  std::vector<int> assignments;
  double cost = 0.0;
  int restarts_run = 0;
  std::uint64_t seed = 0;
};

/// Best-of-restarts Lloyd K-means with Forgy initialization (k distinct
/// random points per restart) and farthest-point empty-cluster repair. Cost
/// is the sum of squared Euclidean distances to assigned centroids; ties
/// across restarts keep the lowest restart index.
ClusterResult kmeans(const std::vector<Eigen::VectorXd>& vectors, int k,
                     int restarts, std::uint64_t seed, int threads = 1);

/// Runs the single restart that kmeans would execute for this stream index
/// under the same master seed, so any restart of a multi-restart run can be
/// reproduced in isolation. cost_trace, when given, receives the cost after
/// every Lloyd iteration.
ClusterResult kmeans_restart(const std::vector<Eigen::VectorXd>& vectors,
                             int k, std::uint64_t seed, int restart_index,
                             std::vector<double>* cost_trace = nullptr);

/// Fraction of items correctly labeled under the best one-to-one mapping
/// between clusters and classes, found by exhaustive permutation search.
/// More than 10 clusters or classes is rejected; that regime needs an
/// assignment-problem solver instead.
double cluster_accuracy(const std::vector<int>& assignments,
                        const std::vector<int>& labels);

struct ClusterOutcome {
  ClusterResult result;
  double accuracy = 0.0;
  /// Present when a metric was learned for this run.
  std::optional<FitReport> fit;
  int constraints_used = 0;
};

/// Clusters the whole dataset under a representation. When learned is true,
/// fits the metric on all unordered pairs of train-mask items (same label
/// gives a similar constraint, different a dissimilar one), factors
/// M = L Lt and runs K-means on transformed embeddings v -> Lt v, which is
/// exactly Mahalanobis K-means under M. Accuracy is over all items.
ClusterOutcome cluster_spd(const ClusterDataset& ds, RepresentationKind tag,
                           bool learned, const ItmlConfig& config, int k,
                           int restarts, std::uint64_t seed, int threads = 1);

/// Two-fold cross-validated selection over a gamma grid: the train items are
/// split in half (stratified by label), a metric is fit on each half's pair
/// constraints and scored by held-out pair-classification accuracy with a
/// threshold chosen on the fitting half. Returns the grid value with the
/// best mean score; ties keep the earliest grid entry.
double select_gamma_cv(const std::vector<Eigen::VectorXd>& points,
                       const std::vector<int>& labels,
                       const std::vector<double>& grid,
                       const ItmlConfig& base, std::uint64_t seed,
                       int threads = 1);

/// Half-decade grid from 10^0 to 10^4.
std::vector<double> default_gamma_grid();

// ---------------------------------------------------------------------------
// Synthetic data.

/// Defaults chosen so that unlearned log-Euclidean K-means lands strictly
/// between chance and perfect on the calibration seeds, leaving headroom for
/// the learned metric to improve.
constexpr double kDefaultSynthSpread = 0.18;
constexpr double kDefaultSynthNuisance = 1.35;

struct SynthConfig {
  int order = 3;
  int k = 3;
  int per_class = 40;
  /// Noise scale on the class-signal tangent coordinates.
  double spread = kDefaultSynthSpread;
  /// Noise scale on the remaining coordinates, where class centers coincide.
  double nuisance = kDefaultSynthNuisance;
};

/// Returns the number of leading vec-coordinates that carry class signal for
/// a given embedding dimension (at least one, about a third of them).
int synth_signal_dims(int embed_dim);

/// Samples k class centers in the tangent space at the identity (separated
/// on the signal coordinates, zero elsewhere), adds per-coordinate Gaussian
/// noise scaled by spread / nuisance, and maps every sample through the
/// matrix exponential. The train mask is left empty.
ClusterDataset synth_spd_clusters(const SynthConfig& config,
                                  std::uint64_t seed);

/// Cluster generator plus balanced similar/dissimilar pair sampling with
/// stratified fold assignments; pairs_per_label of each label are drawn
/// without duplicates.
PairDataset synth_spd_pairs(const SynthConfig& config, int pairs_per_label,
                            int folds, std::uint64_t seed);

}  // namespace spdml

#endif  // SPDML_EVAL_HPP_
