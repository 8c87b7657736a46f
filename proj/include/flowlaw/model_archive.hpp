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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "flowlaw/mlp.hpp"

namespace flowlaw {

inline constexpr int kArchiveSchemaVersion = 1;

struct Provenance {
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  std::uint64_t dataset_hash = 0;
  bool operator==(const Provenance&) const = default;
};

struct ModelArchive {
  MlpModel model;
  Provenance provenance;
};

/// Self-describing JSON text: schema version, architecture, normalization
/// ranges, every weight and bias with explicit shapes, provenance. Doubles are
/// written in shortest round-trip form, so reading reproduces each parameter
/// bit for bit and writing is deterministic.
std::string serialize_archive(const ModelArchive& archive);

/// Throws FormatError naming the offending field ("ranges required",
/// "layers[1].weights: ...") on any schema or shape violation.
ModelArchive parse_archive(const std::string& text);

void save_model(const MlpModel& model, const std::filesystem::path& path,
                const Provenance& provenance = {});
ModelArchive load_archive(const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace flowlaw
