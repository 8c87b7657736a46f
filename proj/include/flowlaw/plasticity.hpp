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

#include <vector>

#include <Eigen/Dense>

#include "flowlaw/hardening_law.hpp"
#include "flowlaw/johnson_cook.hpp"

namespace flowlaw {

/// State of one integration point. Stress is a symmetric 3x3 tensor in MPa.
struct MaterialPointState {
  Eigen::Matrix3d stress = Eigen::Matrix3d::Zero();
  double eps_p_bar = 0.0;  // accumulated equivalent plastic strain
  double rate_bar = 0.0;   // equivalent plastic strain rate of the last step
  double T = 20.0;         // degC
};

Eigen::Matrix3d deviator(const Eigen::Matrix3d& s);
double von_mises(const Eigen::Matrix3d& s);

/// Elastic predictor: stress + lambda tr(d_eps) I + 2 G d_eps.
Eigen::Matrix3d trial_state(const MaterialPointState& state,
                            const Eigen::Matrix3d& d_eps,
                            const ThermalElasticParams& mat);

/// eta sigma_y d_eps_p / (rho Cp), with sigma_y in MPa.
double adiabatic_temperature_update(double sigma_y, double d_eps_p,
                                    const ThermalElasticParams& mat);

struct ReturnMappingOptions {
  int max_iterations = 50;
  /// Converged when |q - sigma_y| <= tolerance * sigma_y.
  double tolerance = 1e-8;
};

struct StepDiagnostics {
  bool plastic = false;
  double gamma = 0.0;        // consistency parameter, d_eps_p = sqrt(2/3) gamma
  int iterations = 0;
  double yield_stress = 0.0;  // law value at the converged point
  double yield_T = 0.0;       // temperature the law was sampled at
  double relative_residual = 0.0;
  double delta_T = 0.0;
  std::vector<double> residuals;  // |q - sigma_y| / sigma_y per iteration
};

struct StepResult {
  MaterialPointState state;
  StepDiagnostics diagnostics;
};

/// One small-strain radial-return step. Newton on gamma uses the law's three
/// partials combined as
///   d sigma_y / d gamma = sqrt(2/3) (d_eps + d_rate / dt + eta sigma_y d_T / (rho Cp)).
/// The temperature is frozen during the solve and advanced once from the
/// converged plastic increment. Throws IntegrationError (with the residual
/// history) if Newton does not converge.
StepResult radial_return_step(const MaterialPointState& state,
                              const Eigen::Matrix3d& d_eps, double dt,
                              const HardeningLaw& law,
                              const ThermalElasticParams& mat,
                              const ReturnMappingOptions& options = {});

}  // namespace flowlaw
