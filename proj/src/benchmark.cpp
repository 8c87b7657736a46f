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

#include "flowlaw/benchmark.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "flowlaw/error.hpp"

namespace flowlaw {

namespace {

constexpr double kNeckingRate = 150.0;
constexpr double kStrainStep = 1e-3;

std::vector<PathPoint> integrate(const LoadPath& path, const HardeningLaw& law,
                                 const ThermalElasticParams& mat) {
  std::vector<PathPoint> trace;
  trace.reserve(path.increments.size());
  MaterialPointState state;
  state.T = path.T0;
  for (std::size_t i = 0; i < path.increments.size(); ++i) {
    StepResult r;
    try {
      r = radial_return_step(state, path.increments[i], path.dt, law, mat);
    } catch (const IntegrationError& e) {
      throw IntegrationError("step " + std::to_string(i + 1) + ": " + e.what(),
                             e.residuals(), i + 1);
    } catch (const DomainError& e) {
      throw IntegrationError("step " + std::to_string(i + 1) + ": " + e.what(),
                             {}, i + 1);
    }
    state = r.state;
    trace.push_back({state.eps_p_bar, von_mises(state.stress), state.T,
                     r.diagnostics.delta_T});
  }
  return trace;
}

}  // namespace

std::string_view path_kind_name(PathKind k) {
  return k == PathKind::kUniaxialTension ? "uniaxial_tension"
                                         : "uniaxial_compression";
}

PathKind parse_path_kind(std::string_view name) {
  if (name == "uniaxial_tension" || name == "tension") {
    return PathKind::kUniaxialTension;
  }
  if (name == "uniaxial_compression" || name == "compression") {
    return PathKind::kUniaxialCompression;
  }
  throw DomainError("unknown path kind '" + std::string(name) + "'");
}

void LoadPath::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("path: dt must be > 0");
  if (!std::isfinite(T0)) throw DomainError("path: T0 must be finite");
  for (std::size_t i = 0; i < increments.size(); ++i) {
    if (!increments[i].allFinite()) {
      throw DomainError("path: increment " + std::to_string(i) + " is not finite");
    }
  }
}

LoadPath make_uniaxial_path(PathKind kind, std::size_t steps, double d_axial,
                            double axial_rate, double T0) {
  if (!(d_axial > 0.0) || !(axial_rate > 0.0)) {
    throw DomainError("path: strain step and rate must be > 0");
  }
  const double sign = kind == PathKind::kUniaxialTension ? 1.0 : -1.0;
  Eigen::Matrix3d inc = Eigen::Vector3d(-0.5, -0.5, 1.0).asDiagonal();
  inc *= sign * d_axial;
  LoadPath path;
  path.kind = kind;
  path.increments.assign(steps, inc);
  path.dt = d_axial / axial_rate;
  path.T0 = T0;
  return path;
}

LoadPath tension_in_range_path() {
  return make_uniaxial_path(PathKind::kUniaxialTension, 514, kStrainStep,
                            kNeckingRate);
}

LoadPath tension_extended_path() {
  return make_uniaxial_path(PathKind::kUniaxialTension, 2104, kStrainStep,
                            kNeckingRate);
}

LoadPath compression_impact_path() {
  return make_uniaxial_path(PathKind::kUniaxialCompression, 600, kStrainStep,
                            5000.0);
}

BenchmarkSummary run_path_benchmark(const LoadPath& path, const HardeningLaw& law_a,
                                    const HardeningLaw& law_b,
                                    const ThermalElasticParams& mat) {
  path.validate();
  mat.validate();
  const std::vector<PathPoint> a = integrate(path, law_a, mat);
  const std::vector<PathPoint> b = integrate(path, law_b, mat);

  BenchmarkSummary out;
  out.records.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.records.push_back({i + 1, a[i], b[i]});
    if (a[i].sigma > 0.0) {
      const double dev = std::abs(b[i].sigma - a[i].sigma) / a[i].sigma;
      if (dev > out.max_relative_deviation) {
        out.max_relative_deviation = dev;
        out.max_deviation_step = i + 1;
      }
    }
  }
  if (!a.empty()) {
    out.final_a = a.back();
    out.final_b = b.back();
  } else {
    out.final_a.T = out.final_b.T = path.T0;
  }
  return out;
}

void write_benchmark_csv(const BenchmarkSummary& summary, std::ostream& out) {
  out << "step,eps_p_a,sigma_a,T_a,eps_p_b,sigma_b,T_b\n";
  char buf[256];
  for (const PathRecord& r : summary.records) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.step, r.a.eps_p, r.a.sigma, r.a.T, r.b.eps_p, r.b.sigma,
                  r.b.T);
    out << buf;
  }
}

void write_benchmark_csv(const BenchmarkSummary& summary,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_benchmark_csv(summary, out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace flowlaw
