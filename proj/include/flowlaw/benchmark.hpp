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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "flowlaw/hardening_law.hpp"
#include "flowlaw/johnson_cook.hpp"
#include "flowlaw/plasticity.hpp"

namespace flowlaw {

enum class PathKind { kUniaxialTension, kUniaxialCompression };

std::string_view path_kind_name(PathKind k);
PathKind parse_path_kind(std::string_view name);  // throws DomainError

/// Prescribed strain history for a single material point.
struct LoadPath {
  PathKind kind = PathKind::kUniaxialTension;
  std::vector<Eigen::Matrix3d> increments;
  double dt = 1.0;   // s per step
  double T0 = 20.0;  // degC

  void validate() const;  // throws DomainError
};

/// Isochoric uniaxial increments diag(-1/2, -1/2, 1) * d_axial, with dt set so
/// the axial strain rate equals `axial_rate`. Compression flips the sign.
LoadPath make_uniaxial_path(PathKind kind, std::size_t steps, double d_axial,
                            double axial_rate, double T0 = 20.0);

/// Presets tuned so the analytical law reaches the necking milestones:
/// eps_p ~ 0.51 for the in-range path and ~2.1 for the extended one, both at
/// an axial rate of 150/s.
LoadPath tension_in_range_path();
LoadPath tension_extended_path();
/// Short high-rate compression standing in for an impacting-face element.
LoadPath compression_impact_path();

struct PathPoint {
  double eps_p = 0.0;
  double sigma = 0.0;  // von Mises, MPa
  double T = 0.0;
  double delta_T = 0.0;
};

struct PathRecord {
  std::size_t step = 0;
  PathPoint a;
  PathPoint b;
};

struct BenchmarkSummary {
  std::vector<PathRecord> records;
  /// max |sigma_b - sigma_a| / sigma_a over steps with sigma_a > 0.
  double max_relative_deviation = 0.0;
  std::size_t max_deviation_step = 0;
  PathPoint final_a;
  PathPoint final_b;
};

/// Integrates both laws along the same increments. Integration failures are
/// rethrown as IntegrationError carrying the 1-based step index.
BenchmarkSummary run_path_benchmark(const LoadPath& path, const HardeningLaw& law_a,
                                    const HardeningLaw& law_b,
                                    const ThermalElasticParams& mat);

/// step,eps_p_a,sigma_a,T_a,eps_p_b,sigma_b,T_b
void write_benchmark_csv(const BenchmarkSummary& summary, std::ostream& out);
void write_benchmark_csv(const BenchmarkSummary& summary,
                         const std::filesystem::path& path);

}  // namespace flowlaw
