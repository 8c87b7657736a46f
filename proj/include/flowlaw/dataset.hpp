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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "flowlaw/johnson_cook.hpp"
#include "flowlaw/mlp.hpp"

namespace flowlaw {

/// Columnar (eps_p, rate, T, sigma) records. Test sets also carry the three
/// reference derivatives; `derivs` is empty otherwise.
struct Dataset {
  std::vector<double> eps_p;
  std::vector<double> rate;
  std::vector<double> T;
  std::vector<double> sigma;
  std::vector<FlowDerivatives> derivs;

  std::size_t size() const { return eps_p.size(); }
  bool has_derivatives() const { return !derivs.empty(); }
  /// Throws FormatError on unequal columns, non-finite entries or rate <= 0.
  void validate() const;
};

/// Box the test points are drawn from.
struct SamplingDomain {
  double eps_p_min = 0.0;
  double eps_p_max = 1.0;
  double rate_min = 1.0;
  double rate_max = 50000.0;
  double T_min = 20.0;
  double T_max = 500.0;
};

enum class RateSampling { kLogUniform, kUniform };

/// 70 equidistant plastic strains in [0,1] x rates {1,10,50,500,5000,50000}
/// x temperatures {20,100,200,300,400,500}; 2520 rows.
Dataset generate_training_grid(const JohnsonCookParams& p);

/// `count` random points with reference stresses and derivatives. Identical
/// seeds give identical datasets.
Dataset generate_test_set(const JohnsonCookParams& p, std::size_t count,
                          std::uint64_t seed,
                          RateSampling sampling = RateSampling::kLogUniform,
                          const SamplingDomain& domain = {});

/// Min/max of eps_p, ln(rate/eps_dot_ref), T and sigma over the dataset.
NormalizationRanges ranges_from_dataset(const Dataset& data,
                                        double eps_dot_ref);

/// FNV-1a over the bit patterns of every column, for archive provenance.
std::uint64_t dataset_hash(const Dataset& data);

/// CSV with header eps_p,rate,T,sigma[,dsde,dsdr,dsdT].
void write_csv(const Dataset& data, std::ostream& out);
void write_csv(const Dataset& data, const std::filesystem::path& path);
Dataset read_csv(std::istream& in);
Dataset read_csv(const std::filesystem::path& path);

}  // namespace flowlaw
