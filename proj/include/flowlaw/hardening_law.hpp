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

#include <atomic>
#include <cstddef>

#include "flowlaw/johnson_cook.hpp"
#include "flowlaw/mlp.hpp"

namespace flowlaw {

/// Flow stress and its partials at one (eps_p, rate, T) query.
struct FlowState {
  double sigma = 0.0;   // MPa
  double d_eps = 0.0;   // MPa
  double d_rate = 0.0;  // MPa s
  double d_T = 0.0;     // MPa / degC
};

/// The hardening contract a return-mapping integrator needs: yield stress and
/// its three derivatives. Implementations must be safe to share between
/// threads.
class HardeningLaw {
 public:
  virtual ~HardeningLaw() = default;
  virtual FlowState evaluate(double eps_p, double rate, double T) const = 0;
  /// Rates below this are treated as equal to it.
  virtual double reference_rate() const = 0;
};

class JohnsonCookLaw final : public HardeningLaw {
 public:
  explicit JohnsonCookLaw(const JohnsonCookParams& params);
  FlowState evaluate(double eps_p, double rate, double T) const override;
  double reference_rate() const override { return params_.eps_dot_ref; }
  const JohnsonCookParams& params() const { return params_; }

 private:
  JohnsonCookParams params_;
};

/// Surrogate law backed by a trained network. Counts queries whose
/// normalized inputs fall outside [0,1].
class NetworkLaw final : public HardeningLaw {
 public:
  explicit NetworkLaw(MlpModel model,
                      RateScaling scaling = RateScaling::kChainRule);
  FlowState evaluate(double eps_p, double rate, double T) const override;
  double reference_rate() const override {
    return model_.ranges().eps_dot_ref;
  }
  const MlpModel& model() const { return model_; }
  std::size_t out_of_range_queries() const { return out_of_range_.load(); }

 private:
  MlpModel model_;
  RateScaling scaling_;
  mutable std::atomic<std::size_t> out_of_range_{0};
};

}  // namespace flowlaw
