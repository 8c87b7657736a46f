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

#include "flowlaw/johnson_cook.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flowlaw/error.hpp"

namespace flowlaw {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

struct Clamped {
  double rate;
  double theta;  // homologous temperature in [0, 1]
};

Clamped clamp_inputs(const JohnsonCookParams& p, double eps_p, double rate,
                     double T) {
  require(std::isfinite(eps_p) && std::isfinite(rate) && std::isfinite(T),
          "johnson-cook: non-finite input");
  require(eps_p >= 0.0, "johnson-cook: negative plastic strain");
  const double t = std::clamp(T, p.T_ref, p.T_melt);
  return {std::max(rate, p.eps_dot_ref), (t - p.T_ref) / (p.T_melt - p.T_ref)};
}

}  // namespace

void JohnsonCookParams::validate() const {
  require(std::isfinite(A) && A > 0.0, "johnson-cook: A must be > 0");
  require(std::isfinite(B) && B >= 0.0, "johnson-cook: B must be >= 0");
  require(std::isfinite(C) && C >= 0.0, "johnson-cook: C must be >= 0");
  require(n > 0.0 && n <= 1.0, "johnson-cook: n must lie in (0, 1]");
  require(std::isfinite(m) && m > 0.0, "johnson-cook: m must be > 0");
  require(std::isfinite(eps_dot_ref) && eps_dot_ref > 0.0,
          "johnson-cook: reference strain rate must be > 0");
  require(std::isfinite(T_ref) && std::isfinite(T_melt) && T_melt > T_ref,
          "johnson-cook: melting temperature must exceed reference");
}

void ThermalElasticParams::validate() const {
  require(std::isfinite(E) && E > 0.0, "material: E must be > 0");
  require(nu > 0.0 && nu < 0.5, "material: nu must lie in (0, 0.5)");
  require(std::isfinite(rho) && rho > 0.0, "material: rho must be > 0");
  require(std::isfinite(Cp) && Cp > 0.0, "material: Cp must be > 0");
  require(eta > 0.0 && eta <= 1.0, "material: eta must lie in (0, 1]");
}

double ThermalElasticParams::shear_modulus() const {
  return 1e3 * E / (2.0 * (1.0 + nu));
}

double ThermalElasticParams::lame_lambda() const {
  return 1e3 * E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
}

double jc_flow_stress(const JohnsonCookParams& p, double eps_p, double rate,
                      double T) {
  const Clamped c = clamp_inputs(p, eps_p, rate, T);
  const double hardening = p.A + p.B * std::pow(eps_p, p.n);
  const double viscous = 1.0 + p.C * std::log(c.rate / p.eps_dot_ref);
  const double thermal = 1.0 - std::pow(c.theta, p.m);
  return hardening * viscous * thermal;
}

FlowDerivatives jc_derivatives(const JohnsonCookParams& p, double eps_p,
                               double rate, double T,
                               StrainFloorPolicy policy) {
  const Clamped c = clamp_inputs(p, eps_p, rate, T);
  if (eps_p < kEpsPlasticFloor && policy == StrainFloorPolicy::kReject) {
    throw DomainError("johnson-cook: plastic strain below derivative floor");
  }
  const double eps_d = std::max(eps_p, kEpsPlasticFloor);

  const double hardening = p.A + p.B * std::pow(eps_p, p.n);
  const double viscous = 1.0 + p.C * std::log(c.rate / p.eps_dot_ref);
  const double thermal = 1.0 - std::pow(c.theta, p.m);

  FlowDerivatives d;
  d.d_eps = p.n * p.B * std::pow(eps_d, p.n - 1.0) * viscous * thermal;
  d.d_rate = p.C / c.rate * hardening * thermal;
  // (T - T0)^m / (T - T0) written as theta^(m-1) so T = T0 stays finite.
  d.d_T = -p.m / (p.T_melt - p.T_ref) * std::pow(c.theta, p.m - 1.0) *
          hardening * viscous;
  return d;
}

}  // namespace flowlaw
