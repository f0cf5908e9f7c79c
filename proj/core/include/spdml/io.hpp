// core/include/spdml/io.hpp

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

#ifndef SPDML_IO_HPP_
#define SPDML_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spdml/descriptor.hpp"
#include "spdml/itml.hpp"
#include "spdml/types.hpp"

namespace spdml {

// ---------------------------------------------------------------------------
// Matrix text format: first line "n", then n lines of n space-separated
// decimal values, row-major. Writes carry 17 significant digits so values
// round-trip exactly; the reader accepts any parseable float layout.

void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_text(std::istream& in, const std::string& what);

void save_matrix(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix(const std::string& path);
SpdMatrix load_spd_matrix(const std::string& path);

/// Formats one value with 17 significant digits (shared by all writers).
std::string format_value(double v);

// ---------------------------------------------------------------------------
// Pairs / constraint files: one line per pair, "i j s|d [fold]", zero-based
// item indices, '#' starts a comment. The fold column must be present on all
// lines or on none.

struct PairsFile {
  std::vector<PairConstraint> pairs;
  /// Empty when the file carries no fold column.
  std::vector<int> folds;
};

PairsFile load_pairs(const std::string& path);
void save_pairs(const std::string& path,
                const std::vector<PairConstraint>& pairs,
                const std::vector<int>& folds = {});

// ---------------------------------------------------------------------------
// Labels file: one line per item, "item_index label". Every item in
// [0, item_count) must be labeled exactly once.

std::vector<int> load_labels(const std::string& path, int item_count);
void save_labels(const std::string& path, const std::vector<int>& labels);

// ---------------------------------------------------------------------------
// Dataset manifest: one line per image, "path [label]". Paths must not
// contain whitespace.

struct ManifestEntry {
  std::string path;
  std::optional<int> label;
};

std::vector<ManifestEntry> load_manifest(const std::string& path);

// ---------------------------------------------------------------------------
// Descriptor file: header "spd-descriptors v1 n=<order> convention=<token>",
// then one record per item: an identifier line followed by the matrix text
// block.

/// Convention token for image-extracted descriptors: coordinate features are
/// raw 0-based pixel indices.
inline constexpr const char* kDescriptorConventionImage = "xy-raw-0-based";
/// Convention token for synthetic tangent-space data.
inline constexpr const char* kDescriptorConventionSynthetic =
    "synthetic-tangent";

struct DescriptorRecord {
  std::string id;
  SpdMatrix matrix;
};

struct DescriptorFile {
  int order = 0;
  std::string convention;
  std::vector<DescriptorRecord> records;
};

void save_descriptors(const std::string& path, const DescriptorFile& file);
DescriptorFile load_descriptors(const std::string& path);

std::vector<SpdMatrix> matrices_of(const DescriptorFile& file);

// ---------------------------------------------------------------------------
// PPM images: P3 (ascii) and P6 (binary), maxval up to 255.

ImageBuffer load_ppm(const std::string& path);
void save_ppm(const std::string& path, const ImageBuffer& img);

// ---------------------------------------------------------------------------
// Model file: structured (JSON) text holding the learned metric, the vec
// convention it assumes, the solver configuration echo and the fit report.
// Loading rejects files written under a different vec convention.

struct ModelFile {
  std::string representation = "log-euclidean";
  int n = 0;
  int d = 0;
  VecConvention convention;
  Eigen::MatrixXd m;
  ItmlConfig config;
  double l = 0.0;
  double u = 0.0;
  bool converged = false;
  int sweeps = 0;
  double objective = 0.0;
  int training_items = 0;
  int similar_constraints = 0;
  int dissimilar_constraints = 0;
  std::string library_version;
};

void save_model(const std::string& path, const ModelFile& model);
ModelFile load_model(const std::string& path);

/// Validates m against d and builds the metric (admission included).
MahalanobisMetric metric_from_model(const ModelFile& model);

}  // namespace spdml

#endif  // SPDML_IO_HPP_
