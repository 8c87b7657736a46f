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
#include <string>
#include <vector>

#include "flowlaw/mlp.hpp"

namespace flowlaw {

/// Shared sub-terms of the two-hidden-layer sigmoid network, with m and n
/// neurons in the hidden layers:
///   z_a[i] = exp(-(W1 x)_i - b1_i)                 i < m
///   z_b[i] = 1 + z_a[i]                            i < m
///   z_c[i] = exp(-sum_j W2_ij / z_b[j] - b2_i)     i < n
///   z_d[i] = w_i z_c[i] / (1 + z_c[i])^2           i < n
///   z_e[i] = z_a[i] / z_b[i]^2                     i < m
///   z_f[i] = (sum_j W2_ji z_d[j]) z_e[i]           i < m
/// so that s = sum_i w_i / (1 + z_c[i]) + b and s'_k = sum_j W1_jk z_f[j].
struct StagedTerms {
  std::vector<double> z_a, z_b, z_c, z_d, z_e, z_f;
};

struct StagedResult {
  PhysicalPrediction prediction;
  double s = 0.0;
  double s_prime[3] = {0.0, 0.0, 0.0};
  StagedTerms terms;
  std::size_t exp_evaluations = 0;
};

/// Same contract as predict_physical (chain-rule rate scaling), computed with
/// scalar loops over the staged sub-terms. Only 2-hidden-layer sigmoid
/// networks are supported; anything else throws StructuralError.
StagedResult evaluate_staged(const MlpModel& model, double eps_p, double rate,
                             double T);

/// Free-form source of a VUHARD-style subroutine evaluating the network and
/// its three derivatives with every product unrolled and every parameter and
/// range embedded as a named constant at 17 significant digits. Lines stay
/// within 132 ASCII columns. Same architecture restriction as evaluate_staged.
std::string emit_subroutine(const MlpModel& model);

}  // namespace flowlaw
