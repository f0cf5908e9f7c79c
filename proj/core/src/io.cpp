// core/src/io.cpp

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

#include "spdml/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spdml/errors.hpp"
#include "spdml/version.hpp"

namespace spdml {

namespace {

using nlohmann::json;

std::ifstream open_input(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::in | std::ios::binary
                                : std::ios::in);
  if (!in) {
    throw ParseError("cannot open '" + path + "' for reading");
  }
  return in;
}

std::ofstream open_output(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::out | std::ios::binary
                                 : std::ios::out);
  if (!out) {
    throw ParseError("cannot open '" + path + "' for writing");
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
    ++b;
  }
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
    --e;
  }
  return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
  const std::size_t hash = line.find('#');
  return trim(hash == std::string::npos ? line : line.substr(0, hash));
}

int parse_int(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size()) {
      throw std::invalid_argument(token);
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer for " + what + ", got '" + token +
                     "'");
  }
}

double parse_double(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) {
      throw std::invalid_argument(token);
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a number for " + what + ", got '" + token +
                     "'");
  }
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) {
    out.push_back(tok);
  }
  return out;
}

}  // namespace

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw ShapeError("write_matrix_text: matrix must be square and nonempty");
  }
  out << m.rows() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) {
        out << " ";
      }
      out << format_value(m(i, j));
    }
    out << "\n";
  }
}

Eigen::MatrixXd read_matrix_text(std::istream& in, const std::string& what) {
  long n = 0;
  if (!(in >> n) || n < 1) {
    throw ParseError(what + ": expected a positive matrix order");
  }
  Eigen::MatrixXd m(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      double v = 0.0;
      if (!(in >> v)) {
        std::ostringstream msg;
        msg << what << ": expected " << n * n << " values, stopped at entry ("
            << i << ", " << j << ")";
        throw ParseError(msg.str());
      }
      m(i, j) = v;
    }
  }
  return m;
}

void save_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  auto out = open_output(path);
  write_matrix_text(out, m);
  if (!out) {
    throw ParseError("failed while writing '" + path + "'");
  }
}

Eigen::MatrixXd load_matrix(const std::string& path) {
  auto in = open_input(path);
  return read_matrix_text(in, "'" + path + "'");
}

SpdMatrix load_spd_matrix(const std::string& path) {
  try {
    return SpdMatrix(SymMatrix(load_matrix(path)));
  } catch (const NotSpdError& e) {
    throw ParseError("'" + path + "': matrix is not SPD: " + e.what());
  }
}

PairsFile load_pairs(const std::string& path) {
  auto in = open_input(path);
  PairsFile out;
  std::string line;
  long lineno = 0;
  bool saw_fold = false;
  bool saw_plain = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (body.empty()) {
      continue;
    }
    const std::vector<std::string> tok = split_tokens(body);
    const std::string where =
        "'" + path + "' line " + std::to_string(lineno);
    if (tok.size() != 3 && tok.size() != 4) {
      throw ParseError(where + "': expected \"i j s|d [fold]\"");
    }
    PairConstraint c;
    c.i = parse_int(tok[0], where + "' first index");
    c.j = parse_int(tok[1], where + "' second index");
    if (tok[2] == "s") {
      c.kind = PairLabel::kSimilar;
    } else if (tok[2] == "d") {
      c.kind = PairLabel::kDissimilar;
    } else {
      throw ParseError(where + "': label must be 's' or 'd', got '" + tok[2] +
                       "'");
    }
    out.pairs.push_back(c);
    if (tok.size() == 4) {
      saw_fold = true;
      out.folds.push_back(parse_int(tok[3], where + "' fold"));
    } else {
      saw_plain = true;
    }
  }
  if (saw_fold && saw_plain) {
    throw ParseError("'" + path +
                     "': fold column present on some lines but not all");
  }
  return out;
}

void save_pairs(const std::string& path,
                const std::vector<PairConstraint>& pairs,
                const std::vector<int>& folds) {
  if (!folds.empty() && folds.size() != pairs.size()) {
    throw ShapeError("save_pairs: fold count does not match pair count");
  }
  auto out = open_output(path);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    out << pairs[p].i << " " << pairs[p].j << " "
        << (pairs[p].kind == PairLabel::kSimilar ? "s" : "d");
    if (!folds.empty()) {
      out << " " << folds[p];
    }
    out << "\n";
  }
  if (!out) {
    throw ParseError("failed while writing '" + path + "'");
  }
}

std::vector<int> load_labels(const std::string& path, int item_count) {
  if (item_count < 1) {
    throw ConfigError("load_labels: item count must be positive");
  }
  auto in = open_input(path);
  std::vector<int> labels(item_count, -1);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (body.empty()) {
      continue;
    }
    const std::vector<std::string> tok = split_tokens(body);
    const std::string where =
        "'" + path + "' line " + std::to_string(lineno);
    if (tok.size() != 2) {
      throw ParseError(where + "': expected \"item_index label\"");
    }
    const int idx = parse_int(tok[0], where + "' item index");
    const int label = parse_int(tok[1], where + "' label");
    if (idx < 0 || idx >= item_count) {
      std::ostringstream msg;
      msg << where << "': item index " << idx << " outside [0, " << item_count
          << ")";
      throw ParseError(msg.str());
    }
    if (labels[idx] != -1) {
      throw ParseError(where + "': item " + tok[0] + " labeled twice");
    }
    if (label < 0) {
      throw ParseError(where + "': labels must be nonnegative");
    }
    labels[idx] = label;
  }
  for (int i = 0; i < item_count; ++i) {
    if (labels[i] == -1) {
      throw ParseError("'" + path + "': item " + std::to_string(i) +
                       " has no label");
    }
  }
  return labels;
}

void save_labels(const std::string& path, const std::vector<int>& labels) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << i << " " << labels[i] << "\n";
  }
  if (!out) {
    throw ParseError("failed while writing '" + path + "'");
  }
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  auto in = open_input(path);
  std::vector<ManifestEntry> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (body.empty()) {
      continue;
    }
    const std::vector<std::string> tok = split_tokens(body);
    const std::string where =
        "'" + path + "' line " + std::to_string(lineno);
    if (tok.size() > 2) {
      throw ParseError(where +
                       "': expected \"path [label]\" (paths must not contain "
                       "whitespace)");
    }
    ManifestEntry entry;
    entry.path = tok[0];
    if (tok.size() == 2) {
      entry.label = parse_int(tok[1], where + "' label");
    }
    out.push_back(entry);
  }
  return out;
}

void save_descriptors(const std::string& path, const DescriptorFile& file) {
  if (file.order < 1) {
    throw ShapeError("save_descriptors: order must be positive");
  }
  for (const DescriptorRecord& rec : file.records) {
    if (rec.matrix.order() != file.order) {
      throw ShapeError("save_descriptors: record '" + rec.id +
                       "' has order " + std::to_string(rec.matrix.order()) +
                       ", file header says " + std::to_string(file.order));
    }
  }
  auto out = open_output(path);
  out << "spd-descriptors v1 n=" << file.order
      << " convention=" << file.convention << "\n";
  for (const DescriptorRecord& rec : file.records) {
    out << rec.id << "\n";
    write_matrix_text(out, rec.matrix.mat());
  }
  if (!out) {
    throw ParseError("failed while writing '" + path + "'");
  }
}

DescriptorFile load_descriptors(const std::string& path) {
  auto in = open_input(path);
  std::string header;
  if (!std::getline(in, header)) {
    throw ParseError("'" + path + "': empty descriptor file");
  }
  const std::vector<std::string> tok = split_tokens(header);
  if (tok.size() != 4 || tok[0] != "spd-descriptors" || tok[1] != "v1" ||
      tok[2].rfind("n=", 0) != 0 || tok[3].rfind("convention=", 0) != 0) {
    throw ParseError(
        "'" + path +
        "': expected header \"spd-descriptors v1 n=<order> "
        "convention=<token>\"");
  }
  DescriptorFile file;
  file.order = parse_int(tok[2].substr(2), "'" + path + "' header order");
  if (file.order < 1) {
    throw ParseError("'" + path + "': header order must be positive");
  }
  file.convention = tok[3].substr(std::string("convention=").size());

  std::string line;
  while (std::getline(in, line)) {
    const std::string id = trim(line);
    if (id.empty()) {
      continue;
    }
    std::string order_line;
    if (!std::getline(in, order_line)) {
      throw ParseError("'" + path + "': record '" + id +
                       "' is missing its matrix");
    }
    const int n = parse_int(trim(order_line),
                            "'" + path + "' record '" + id + "' order");
    if (n != file.order) {
      std::ostringstream msg;
      msg << "'" << path << "': record '" << id << "' has order " << n
          << ", header says " << file.order;
      throw ParseError(msg.str());
    }
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      std::string row;
      if (!std::getline(in, row)) {
        throw ParseError("'" + path + "': record '" + id +
                         "' matrix is truncated");
      }
      const std::vector<std::string> values = split_tokens(strip_comment(row));
      if (static_cast<int>(values.size()) != n) {
        std::ostringstream msg;
        msg << "'" << path << "': record '" << id << "' row " << i << " has "
            << values.size() << " values, expected " << n;
        throw ParseError(msg.str());
      }
      for (int j = 0; j < n; ++j) {
        m(i, j) = parse_double(values[j], "'" + path + "' record '" + id +
                                              "' entry");
      }
    }
    try {
      file.records.push_back({id, SpdMatrix(SymMatrix(m))});
    } catch (const NotSpdError& e) {
      throw ParseError("'" + path + "': record '" + id +
                       "' is not SPD: " + e.what());
    }
  }
  return file;
}

std::vector<SpdMatrix> matrices_of(const DescriptorFile& file) {
  std::vector<SpdMatrix> out;
  out.reserve(file.records.size());
  for (const DescriptorRecord& rec : file.records) {
    out.push_back(rec.matrix);
  }
  return out;
}

namespace {

// Reads one PPM header token, skipping whitespace and '#' comments.
std::string ppm_token(std::istream& in, const std::string& path) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') {
        c = in.get();
      }
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c) && c != '#') {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (c == '#') {
    in.unget();
  }
  if (tok.empty()) {
    throw ParseError("'" + path + "': truncated PPM header");
  }
  return tok;
}

}  // namespace

ImageBuffer load_ppm(const std::string& path) {
  auto in = open_input(path, true);
  const std::string magic = ppm_token(in, path);
  if (magic != "P3" && magic != "P6") {
    throw ParseError("'" + path + "': expected a P3 or P6 PPM, got magic '" +
                     magic + "'");
  }
  const int width = parse_int(ppm_token(in, path), "'" + path + "' width");
  const int height = parse_int(ppm_token(in, path), "'" + path + "' height");
  const int maxval = parse_int(ppm_token(in, path), "'" + path + "' maxval");
  if (width < 1 || height < 1) {
    throw ParseError("'" + path + "': invalid PPM dimensions");
  }
  if (maxval < 1 || maxval > 255) {
    throw ParseError("'" + path + "': unsupported PPM maxval " +
                     std::to_string(maxval) + " (must be 1..255)");
  }
  const std::size_t count =
      3 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> pixels(count);
  if (magic == "P6") {
    // The header ends with exactly one whitespace byte before the raster.
    std::vector<unsigned char> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) {
      throw ParseError("'" + path + "': truncated P6 raster");
    }
    for (std::size_t i = 0; i < count; ++i) {
      pixels[i] = static_cast<double>(raw[i]) / maxval;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = parse_int(ppm_token(in, path), "'" + path + "' sample");
      if (v < 0 || v > maxval) {
        throw ParseError("'" + path + "': sample " + std::to_string(v) +
                         " outside [0, maxval]");
      }
      pixels[i] = static_cast<double>(v) / maxval;
    }
  }
  try {
    return ImageBuffer(width, height, std::move(pixels));
  } catch (const Error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void save_ppm(const std::string& path, const ImageBuffer& img) {
  auto out = open_output(path, true);
  out << "P6\n" << img.width() << " " << img.height() << "\n255\n";
  std::vector<unsigned char> raw;
  raw.reserve(img.pixels().size());
  for (double v : img.pixels()) {
    raw.push_back(static_cast<unsigned char>(std::lround(v * 255.0)));
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) {
    throw ParseError("failed while writing '" + path + "'");
  }
}

void save_model(const std::string& path, const ModelFile& model) {
  if (model.m.rows() != model.d || model.m.cols() != model.d ||
      model.d < 1) {
    throw ShapeError("save_model: M must be a positive-order d x d matrix");
  }
  json j;
  j["format"] = "spdml-model";
  j["format_version"] = 1;
  j["library_version"] =
      model.library_version.empty() ? kVersion : model.library_version;
  j["representation"] = model.representation;
  j["n"] = model.n;
  j["d"] = model.d;
  j["vec_convention"] = {{"ordering", model.convention.ordering},
                         {"offdiag_weight", model.convention.offdiag_weight}};
  std::vector<double> flat(static_cast<std::size_t>(model.d) * model.d);
  for (int i = 0; i < model.d; ++i) {
    for (int k = 0; k < model.d; ++k) {
      flat[static_cast<std::size_t>(i) * model.d + k] = model.m(i, k);
    }
  }
  j["m"] = flat;
  j["config"] = {{"gamma", model.config.gamma},
                 {"percentile_a", model.config.percentile_a},
                 {"percentile_b", model.config.percentile_b},
                 {"max_sweeps", model.config.max_sweeps},
                 {"conv_tol", model.config.conv_tol},
                 {"shuffle", model.config.shuffle},
                 {"seed", model.config.seed}};
  j["l"] = model.l;
  j["u"] = model.u;
  j["converged"] = model.converged;
  j["sweeps"] = model.sweeps;
  j["objective"] = model.objective;
  j["training"] = {{"items", model.training_items},
                   {"similar", model.similar_constraints},
                   {"dissimilar", model.dissimilar_constraints}};
  auto out = open_output(path);
  out << j.dump(2) << "\n";
  if (!out) {
    throw ParseError("failed while writing '" + path + "'");
  }
}

ModelFile load_model(const std::string& path) {
  auto in = open_input(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': invalid model file: " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "spdml-model") {
      throw ParseError("'" + path + "': not a spdml model file");
    }
    ModelFile model;
    model.library_version = j.at("library_version").get<std::string>();
    model.representation = j.at("representation").get<std::string>();
    model.n = j.at("n").get<int>();
    model.d = j.at("d").get<int>();
    model.convention.ordering =
        j.at("vec_convention").at("ordering").get<std::string>();
    model.convention.offdiag_weight =
        j.at("vec_convention").at("offdiag_weight").get<std::string>();
    if (!(model.convention == VecConvention{})) {
      throw ParseError("'" + path + "': model was written under vec "
                       "convention (" + model.convention.ordering + ", " +
                       model.convention.offdiag_weight +
                       "); this build uses (" + VecConvention{}.ordering +
                       ", " + VecConvention{}.offdiag_weight + ")");
    }
    if (model.d < 1) {
      throw ParseError("'" + path + "': model dimension must be positive");
    }
    const auto flat = j.at("m").get<std::vector<double>>();
    if (flat.size() != static_cast<std::size_t>(model.d) * model.d) {
      throw ParseError("'" + path + "': M has wrong entry count");
    }
    model.m.resize(model.d, model.d);
    for (int i = 0; i < model.d; ++i) {
      for (int k = 0; k < model.d; ++k) {
        model.m(i, k) = flat[static_cast<std::size_t>(i) * model.d + k];
      }
    }
    const json& cfg = j.at("config");
    model.config.gamma = cfg.at("gamma").get<double>();
    model.config.percentile_a = cfg.at("percentile_a").get<double>();
    model.config.percentile_b = cfg.at("percentile_b").get<double>();
    model.config.max_sweeps = cfg.at("max_sweeps").get<int>();
    model.config.conv_tol = cfg.at("conv_tol").get<double>();
    model.config.shuffle = cfg.at("shuffle").get<bool>();
    model.config.seed = cfg.at("seed").get<std::uint64_t>();
    model.l = j.at("l").get<double>();
    model.u = j.at("u").get<double>();
    model.converged = j.at("converged").get<bool>();
    model.sweeps = j.at("sweeps").get<int>();
    model.objective = j.at("objective").get<double>();
    const json& training = j.at("training");
    model.training_items = training.at("items").get<int>();
    model.similar_constraints = training.at("similar").get<int>();
    model.dissimilar_constraints = training.at("dissimilar").get<int>();
    return model;
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': model file is missing fields: " +
                     std::string(e.what()));
  }
}

MahalanobisMetric metric_from_model(const ModelFile& model) {
  if (model.n > 0 && model.d != sym_vec_dim(model.n)) {
    std::ostringstream msg;
    msg << "model dimension " << model.d << " does not match order "
        << model.n << " (expected " << sym_vec_dim(model.n) << ")";
    throw ParseError(msg.str());
  }
  try {
    return MahalanobisMetric(SpdMatrix(SymMatrix(model.m)),
                             model.convention);
  } catch (const NotSpdError& e) {
    throw ParseError(std::string("model matrix is not SPD: ") + e.what());
  }
}

}  // namespace spdml
