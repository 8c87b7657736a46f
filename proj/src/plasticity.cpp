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

#include "flowlaw/plasticity.hpp"

#include <cmath>
#include <string>

#include "flowlaw/error.hpp"

namespace flowlaw {

namespace {

const double kSqrt2Over3 = std::sqrt(2.0 / 3.0);
const double kSqrt3Over2 = std::sqrt(1.5);

}  // namespace

Eigen::Matrix3d deviator(const Eigen::Matrix3d& s) {
  return s - (s.trace() / 3.0) * Eigen::Matrix3d::Identity();
}

double von_mises(const Eigen::Matrix3d& s) {
  return kSqrt3Over2 * deviator(s).norm();
}

Eigen::Matrix3d trial_state(const MaterialPointState& state,
                            const Eigen::Matrix3d& d_eps,
                            const ThermalElasticParams& mat) {
  return state.stress +
         mat.lame_lambda() * d_eps.trace() * Eigen::Matrix3d::Identity() +
         2.0 * mat.shear_modulus() * d_eps;
}

double adiabatic_temperature_update(double sigma_y, double d_eps_p,
                                    const ThermalElasticParams& mat) {
  if (d_eps_p < 0.0) {
    throw DomainError("adiabatic update: negative plastic increment");
  }
  return mat.eta * sigma_y * 1e6 * d_eps_p / (mat.rho * mat.Cp);
}

StepResult radial_return_step(const MaterialPointState& state,
                              const Eigen::Matrix3d& d_eps, double dt,
                              const HardeningLaw& law,
                              const ThermalElasticParams& mat,
                              const ReturnMappingOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw DomainError("radial return: dt must be > 0");
  }
  if (!d_eps.allFinite()) {
    throw DomainError("radial return: non-finite strain increment");
  }
  const double G = mat.shear_modulus();
  const Eigen::Matrix3d trial = trial_state(state, d_eps, mat);
  const Eigen::Matrix3d s_trial = deviator(trial);
  const double norm_trial = s_trial.norm();
  const double q_trial = kSqrt3Over2 * norm_trial;

  StepResult out{state, {}};
  out.state.stress = trial;
  out.diagnostics.yield_T = state.T;

  const FlowState initial = law.evaluate(state.eps_p_bar, state.rate_bar, state.T);
  if (q_trial <= initial.sigma) {
    out.state.rate_bar = 0.0;
    out.diagnostics.yield_stress = initial.sigma;
    return out;
  }

  // Plastic energy converted to heat per unit equivalent plastic strain is
  // eta sigma_y / (rho Cp); 1e6 converts MPa to Pa.
  const double heat = mat.eta * 1e6 / (mat.rho * mat.Cp);
  StepDiagnostics& diag = out.diagnostics;
  diag.plastic = true;

  double gamma = 0.0;
  FlowState flow{};
  bool converged = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const double d_eps_p = kSqrt2Over3 * gamma;
    flow = law.evaluate(state.eps_p_bar + d_eps_p, d_eps_p / dt, state.T);
    const double residual = kSqrt3Over2 * (norm_trial - 2.0 * G * gamma) - flow.sigma;
    const double scale = std::abs(flow.sigma) > 0.0 ? std::abs(flow.sigma) : 1.0;
    diag.residuals.push_back(std::abs(residual) / scale);
    diag.iterations = it;
    if (!std::isfinite(residual)) break;
    if (std::abs(residual) <= options.tolerance * scale) {
      converged = true;
      break;
    }
    const double d_sigma_d_gamma =
        kSqrt2Over3 *
        (flow.d_eps + flow.d_rate / dt + heat * flow.sigma * flow.d_T);
    const double slope = -kSqrt3Over2 * 2.0 * G - d_sigma_d_gamma;
    double next = gamma - residual / slope;
    if (!(next > 0.0)) next = 0.5 * gamma;
    gamma = next;
  }
  if (!converged) {
    throw IntegrationError("radial return: Newton did not converge in " +
                               std::to_string(options.max_iterations) +
                               " iterations",
                           diag.residuals);
  }

  const double d_eps_p = kSqrt2Over3 * gamma;
  const Eigen::Matrix3d s_new = s_trial * (1.0 - 2.0 * G * gamma / norm_trial);
  out.state.stress = s_new + (trial.trace() / 3.0) * Eigen::Matrix3d::Identity();
  out.state.eps_p_bar = state.eps_p_bar + d_eps_p;
  out.state.rate_bar = d_eps_p / dt;
  diag.gamma = gamma;
  diag.yield_stress = flow.sigma;
  diag.relative_residual =
      std::abs(von_mises(out.state.stress) - flow.sigma) / flow.sigma;
  diag.delta_T = adiabatic_temperature_update(flow.sigma, d_eps_p, mat);
  out.state.T = state.T + diag.delta_T;
  return out;
}

}  // namespace flowlaw
