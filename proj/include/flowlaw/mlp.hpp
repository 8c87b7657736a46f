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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace flowlaw {

enum class Activation { kTanh, kSigmoid };

std::string_view activation_name(Activation a);
/// Accepts "tanh", "sigmoid" and the short form "sig".
Activation parse_activation(std::string_view name);

/// Fully connected layer: weights are (outputs x inputs).
struct DenseLayer {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
};

/// Bounds that map (eps_p, ln(rate/eps_dot_ref), T) onto [0,1]^3 and the
/// flow stress onto [0,1]. They travel with the weights.
struct NormalizationRanges {
  double eps_p_min = 0.0;
  double eps_p_max = 1.0;
  double log_rate_min = 0.0;
  double log_rate_max = 1.0;
  double T_min = 0.0;
  double T_max = 1.0;
  double sigma_min = 0.0;
  double sigma_max = 1.0;
  double eps_dot_ref = 1.0;

  void validate() const;  // throws StructuralError
  bool operator==(const NormalizationRanges&) const = default;
};

/// Feed-forward network 3 -> hidden (1 or 2 layers) -> 1 with a linear
/// output neuron. Immutable; training produces new instances through
/// with_parameters().
class MlpModel {
 public:
  /// Throws StructuralError on inconsistent shapes, non-finite entries or a
  /// depth other than 1 or 2.
  MlpModel(std::vector<DenseLayer> hidden, Activation activation,
           Eigen::VectorXd out_weights, double out_bias,
           NormalizationRanges ranges);

  /// All weights and biases zero.
  static MlpModel zeros(std::span<const std::size_t> hidden_widths,
                        Activation activation, NormalizationRanges ranges);

  /// Glorot-uniform weights, zero biases, deterministic in `seed`.
  static MlpModel glorot(std::span<const std::size_t> hidden_widths,
                         Activation activation, NormalizationRanges ranges,
                         std::uint64_t seed);

  const std::vector<DenseLayer>& hidden() const { return hidden_; }
  Activation activation() const { return activation_; }
  const Eigen::VectorXd& out_weights() const { return out_weights_; }
  double out_bias() const { return out_bias_; }
  const NormalizationRanges& ranges() const { return ranges_; }

  std::size_t depth() const { return hidden_.size(); }
  /// Layer widths including the 3 inputs and the single output.
  std::vector<std::size_t> widths() const;
  /// Short name in the "3-15-7-1-sig" style.
  std::string name() const;
  std::size_t parameter_count() const;

  /// Flattened parameters: per hidden layer the row-major weights then the
  /// bias, followed by the output weights and the output bias.
  std::vector<double> parameters() const;
  MlpModel with_parameters(std::span<const double> params) const;

 private:
  std::vector<DenseLayer> hidden_;
  Activation activation_;
  Eigen::VectorXd out_weights_;
  double out_bias_;
  NormalizationRanges ranges_;
};

/// Maps physical inputs onto the normalized network input. Values outside
/// the recorded ranges extrapolate beyond [0,1] without clamping.
Eigen::Vector3d normalize_inputs(const NormalizationRanges& r, double eps_p,
                                 double rate, double T);

double normalize_stress(const NormalizationRanges& r, double sigma);
double denormalize_stress(const NormalizationRanges& r, double s);

/// Summation (y) and activation (y-hat) vectors of every hidden layer.
struct ForwardTrace {
  std::vector<Eigen::VectorXd> sums;
  std::vector<Eigen::VectorXd> activations;
  double output = 0.0;
};

ForwardTrace forward_trace(const MlpModel& model, const Eigen::Vector3d& x);
double forward(const MlpModel& model, const Eigen::Vector3d& x);

/// Exact ds/dx, dispatched on (depth, activation) to the closed-form
/// chain-rule expressions.
Eigen::Vector3d input_jacobian(const MlpModel& model,
                               const Eigen::Vector3d& x);

/// Forward differences, one extra network evaluation per input.
Eigen::Vector3d finite_difference_jacobian(const MlpModel& model,
                                           const Eigen::Vector3d& x,
                                           double delta);

/// How ds/dx2 is turned into d(sigma)/d(rate).
///  kChainRule: s'2 (sig_max - sig_min) / ((lr_max - lr_min) rate), the exact
///              derivative of the implemented ln-preprocessed map.
///  kLiteral:   s'2 (sig_max - sig_min) / ((rate_max - rate_min) rate) with
///              rate bounds eps_dot_ref * exp(lr), kept for comparison only.
enum class RateScaling { kChainRule, kLiteral };

struct PhysicalPrediction {
  double sigma = 0.0;
  double d_eps = 0.0;
  double d_rate = 0.0;
  double d_T = 0.0;
  bool extrapolated = false;  // some normalized input left [0,1]
};

/// Flow stress and its three physical derivatives. Rates below eps_dot_ref
/// (including 0) are clamped to it; negative or non-finite inputs throw
/// DomainError.
PhysicalPrediction predict_physical(
    const MlpModel& model, double eps_p, double rate, double T,
    RateScaling scaling = RateScaling::kChainRule);

}  // namespace flowlaw
