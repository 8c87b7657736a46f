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

#include "flowlaw/hardening_law.hpp"

#include <utility>

namespace flowlaw {

JohnsonCookLaw::JohnsonCookLaw(const JohnsonCookParams& params)
    : params_(params) {
  params_.validate();
}

FlowState JohnsonCookLaw::evaluate(double eps_p, double rate, double T) const {
  const FlowDerivatives d = jc_derivatives(params_, eps_p, rate, T);
  return {jc_flow_stress(params_, eps_p, rate, T), d.d_eps, d.d_rate, d.d_T};
}

NetworkLaw::NetworkLaw(MlpModel model, RateScaling scaling)
    : model_(std::move(model)), scaling_(scaling) {}

FlowState NetworkLaw::evaluate(double eps_p, double rate, double T) const {
  const PhysicalPrediction p = predict_physical(model_, eps_p, rate, T, scaling_);
  if (p.extrapolated) out_of_range_.fetch_add(1, std::memory_order_relaxed);
  return {p.sigma, p.d_eps, p.d_rate, p.d_T};
}

}  // namespace flowlaw
