/* Copyright 2026 The Flowlaw Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "flowlaw/model_archive.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flowlaw/error.hpp"

namespace flowlaw {

namespace {

using nlohmann::json;

constexpr const char* kFormatTag = "flowlaw-model";

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError((where.empty() ? std::string() : where + ".") + key +
                      " required");
  }
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError(where + ": malformed number");
  return v.get<double>();
}

std::uint64_t unsigned_integer(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) {
    throw FormatError(where + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

json pair(double lo, double hi) { return json::array({lo, hi}); }

void read_pair(const json& ranges, const char* key, double& lo, double& hi) {
  const std::string where = std::string("ranges.") + key;
  const json& v = field(ranges, key, "ranges");
  if (!v.is_array() || v.size() != 2) {
    throw FormatError(where + ": expected [min, max]");
  }
  lo = number(v[0], where + "[0]");
  hi = number(v[1], where + "[1]");
}

Eigen::VectorXd read_vector(const json& v, Eigen::Index expected,
                            const std::string& where) {
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != expected) {
    throw FormatError(where + ": expected " + std::to_string(expected) +
                      " values");
  }
  Eigen::VectorXd out(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    out(i) = number(v[static_cast<std::size_t>(i)],
                    where + "[" + std::to_string(i) + "]");
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const json& v, const std::string& where) {
  if (!v.is_string() || v.get<std::string>().size() != 16) {
    throw FormatError(where + ": expected 16 hex digits");
  }
  const std::string s = v.get<std::string>();
  std::uint64_t out = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else throw FormatError(where + ": expected 16 hex digits");
    out = (out << 4) | static_cast<std::uint64_t>(d);
  }
  return out;
}

}  // namespace

std::string serialize_archive(const ModelArchive& archive) {
  const MlpModel& m = archive.model;
  const NormalizationRanges& r = m.ranges();

  json layers = json::array();
  for (const DenseLayer& l : m.hidden()) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < l.weights.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < l.weights.cols(); ++j)
        row.push_back(l.weights(i, j));
      rows.push_back(std::move(row));
    }
    json bias = json::array();
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) bias.push_back(l.bias(i));
    layers.push_back({{"shape", {l.weights.rows(), l.weights.cols()}},
                      {"weights", std::move(rows)},
                      {"bias", std::move(bias)}});
  }
  json out_w = json::array();
  for (Eigen::Index i = 0; i < m.out_weights().size(); ++i)
    out_w.push_back(m.out_weights()(i));

  const json doc = {
      {"format", kFormatTag},
      {"schema_version", kArchiveSchemaVersion},
      {"architecture",
       {{"widths", m.widths()},
        {"activation", std::string(activation_name(m.activation()))},
        {"parameter_count", m.parameter_count()}}},
      {"ranges",
       {{"eps_p", pair(r.eps_p_min, r.eps_p_max)},
        {"log_rate", pair(r.log_rate_min, r.log_rate_max)},
        {"T", pair(r.T_min, r.T_max)},
        {"sigma", pair(r.sigma_min, r.sigma_max)},
        {"eps_dot_ref", r.eps_dot_ref}}},
      {"layers", std::move(layers)},
      {"output", {{"weights", std::move(out_w)}, {"bias", m.out_bias()}}},
      {"provenance",
       {{"seed", archive.provenance.seed},
        {"iterations", archive.provenance.iterations},
        {"dataset_hash", hex64(archive.provenance.dataset_hash)}}},
  };
  return doc.dump(2) + "\n";
}

ModelArchive parse_archive(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("archive: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("archive: expected a JSON object");

  const json& tag = field(doc, "format", "");
  if (!tag.is_string() || tag.get<std::string>() != kFormatTag) {
    throw FormatError("format: expected \"flowlaw-model\"");
  }
  const json& version = field(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != kArchiveSchemaVersion) {
    throw FormatError("schema_version: expected " +
                      std::to_string(kArchiveSchemaVersion) + ", got " +
                      version.dump());
  }

  const json& arch = field(doc, "architecture", "");
  const json& widths_json = field(arch, "widths", "architecture");
  if (!widths_json.is_array() || widths_json.size() < 3) {
    throw FormatError("architecture.widths: expected [3, hidden..., 1]");
  }
  std::vector<std::size_t> widths;
  for (std::size_t i = 0; i < widths_json.size(); ++i) {
    widths.push_back(static_cast<std::size_t>(unsigned_integer(
        widths_json[i], "architecture.widths[" + std::to_string(i) + "]")));
  }
  if (widths.front() != 3 || widths.back() != 1) {
    throw FormatError("architecture.widths: must start with 3 and end with 1");
  }
  const json& act = field(arch, "activation", "architecture");
  if (!act.is_string()) throw FormatError("architecture.activation: expected a string");
  Activation activation;
  try {
    activation = parse_activation(act.get<std::string>());
  } catch (const StructuralError& e) {
    throw FormatError(std::string("architecture.activation: ") + e.what());
  }

  NormalizationRanges r;
  const json& ranges = field(doc, "ranges", "");
  read_pair(ranges, "eps_p", r.eps_p_min, r.eps_p_max);
  read_pair(ranges, "log_rate", r.log_rate_min, r.log_rate_max);
  read_pair(ranges, "T", r.T_min, r.T_max);
  read_pair(ranges, "sigma", r.sigma_min, r.sigma_max);
  r.eps_dot_ref = number(field(ranges, "eps_dot_ref", "ranges"), "ranges.eps_dot_ref");

  const json& layers_json = field(doc, "layers", "");
  const std::size_t depth = widths.size() - 2;
  if (!layers_json.is_array() || layers_json.size() != depth) {
    throw FormatError("layers: expected " + std::to_string(depth) +
                      " hidden layers to match architecture.widths");
  }
  std::vector<DenseLayer> hidden;
  for (std::size_t k = 0; k < depth; ++k) {
    const std::string where = "layers[" + std::to_string(k) + "]";
    const auto rows = static_cast<Eigen::Index>(widths[k + 1]);
    const auto cols = static_cast<Eigen::Index>(widths[k]);
    const json& lj = layers_json[k];
    const json& shape = field(lj, "shape", where);
    if (!shape.is_array() || shape.size() != 2 ||
        unsigned_integer(shape[0], where + ".shape[0]") != widths[k + 1] ||
        unsigned_integer(shape[1], where + ".shape[1]") != widths[k]) {
      throw FormatError(where + ".shape: expected [" + std::to_string(rows) +
                        ", " + std::to_string(cols) + "]");
    }
    const json& wj = field(lj, "weights", where);
    if (!wj.is_array() || static_cast<Eigen::Index>(wj.size()) != rows) {
      throw FormatError(where + ".weights: expected " + std::to_string(rows) +
                        " rows");
    }
    DenseLayer layer{Eigen::MatrixXd(rows, cols), Eigen::VectorXd()};
    for (Eigen::Index i = 0; i < rows; ++i) {
      layer.weights.row(i) =
          read_vector(wj[static_cast<std::size_t>(i)], cols,
                      where + ".weights[" + std::to_string(i) + "]")
              .transpose();
    }
    layer.bias = read_vector(field(lj, "bias", where), rows, where + ".bias");
    hidden.push_back(std::move(layer));
  }

  const json& output = field(doc, "output", "");
  Eigen::VectorXd out_w =
      read_vector(field(output, "weights", "output"),
                  static_cast<Eigen::Index>(widths[widths.size() - 2]),
                  "output.weights");
  const double out_b = number(field(output, "bias", "output"), "output.bias");

  Provenance prov;
  if (doc.contains("provenance")) {
    const json& p = doc.at("provenance");
    prov.seed = unsigned_integer(field(p, "seed", "provenance"), "provenance.seed");
    prov.iterations = unsigned_integer(field(p, "iterations", "provenance"),
                                       "provenance.iterations");
    prov.dataset_hash = parse_hex64(field(p, "dataset_hash", "provenance"),
                                    "provenance.dataset_hash");
  }

  try {
    MlpModel model(std::move(hidden), activation, std::move(out_w), out_b, r);
    if (arch.contains("parameter_count") &&
        unsigned_integer(arch.at("parameter_count"),
                         "architecture.parameter_count") !=
            model.parameter_count()) {
      throw FormatError("architecture.parameter_count: does not match layers");
    }
    return {std::move(model), prov};
  } catch (const StructuralError& e) {
    throw FormatError(std::string("archive: ") + e.what());
  }
}

void save_model(const MlpModel& model, const std::filesystem::path& path,
                const Provenance& provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << serialize_archive({model, provenance});
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ModelArchive load_archive(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_archive(ss.str());
}

MlpModel load_model(const std::filesystem::path& path) {
  return load_archive(path).model;
}

}  // namespace flowlaw
