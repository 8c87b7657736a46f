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

namespace flowlaw {

/// Johnson-Cook flow law constants. Units: MPa, 1/s, degrees Celsius.
struct JohnsonCookParams {
  double A = 806.0;
  double B = 614.0;
  double C = 0.0089;
  double n = 0.168;
  double m = 1.1;
  double eps_dot_ref = 1.0;
  double T_ref = 20.0;
  double T_melt = 1540.0;

  /// Throws DomainError when a constant violates the law's admissible range.
  void validate() const;
};

/// Elastic and thermal constants of the material point. `E` is in GPa,
/// `alpha` is carried for completeness and consumed by nothing.
struct ThermalElasticParams {
  double E = 206.9;
  double nu = 0.29;
  double rho = 7830.0;
  double Cp = 460.0;
  double alpha = 12.3e-6;
  double eta = 0.9;

  void validate() const;
  double shear_modulus() const;  // MPa
  double lame_lambda() const;    // MPa
};

/// 42CrMo4 steel.
inline JohnsonCookParams steel_42CrMo4() { return {}; }
inline ThermalElasticParams steel_42CrMo4_thermal() { return {}; }

/// Plastic strain floor used when the strain derivative is requested at zero
/// strain, where n - 1 < 0 makes it diverge.
inline constexpr double kEpsPlasticFloor = 1e-8;

enum class StrainFloorPolicy { kClamp, kReject };

struct FlowDerivatives {
  double d_eps = 0.0;   // MPa
  double d_rate = 0.0;  // MPa s
  double d_T = 0.0;     // MPa / degC
};

/// Flow stress in MPa. The rate is clamped up to `eps_dot_ref` and the
/// temperature into [T_ref, T_melt]; at or above melting the result is 0.
/// Throws DomainError for non-finite inputs or negative plastic strain.
double jc_flow_stress(const JohnsonCookParams& p, double eps_p, double rate,
                      double T);

/// Closed-form partial derivatives of jc_flow_stress, evaluated after the same
/// clamping. The strain derivative additionally floors eps_p at
/// kEpsPlasticFloor, or throws under StrainFloorPolicy::kReject.
FlowDerivatives jc_derivatives(
    const JohnsonCookParams& p, double eps_p, double rate, double T,
    StrainFloorPolicy policy = StrainFloorPolicy::kClamp);

}  // namespace flowlaw
