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

#include "flowlaw/mlp.hpp"

#include <cmath>
#include <random>
#include <string>

#include "flowlaw/error.hpp"

namespace flowlaw {

namespace {

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

double sigmoid(double y) { return 1.0 / (1.0 + std::exp(-y)); }

// e^{-y} / (1 + e^{-y})^2, evaluated on |y| since it is even in y.
double sigmoid_slope(double y) {
  const double e = std::exp(-std::abs(y));
  return e / ((1.0 + e) * (1.0 + e));
}

Eigen::VectorXd activate(Activation a, const Eigen::VectorXd& y) {
  if (a == Activation::kTanh) return y.array().tanh().matrix();
  return y.unaryExpr([](double v) { return sigmoid(v); });
}

Eigen::VectorXd sigmoid_slopes(const Eigen::VectorXd& y) {
  return y.unaryExpr([](double v) { return sigmoid_slope(v); });
}

// 1 - tanh^2(y)
Eigen::VectorXd tanh_slopes(const Eigen::VectorXd& y) {
  return (1.0 - y.array().tanh().square()).matrix();
}

Eigen::Vector3d jacobian_1_tanh(const MlpModel& m, const ForwardTrace& t) {
  const Eigen::VectorXd& w = m.out_weights();
  const Eigen::VectorXd th2 = t.sums[0].array().tanh().square().matrix();
  return m.hidden()[0].weights.transpose() *
         (w - w.cwiseProduct(th2));
}

Eigen::Vector3d jacobian_1_sigmoid(const MlpModel& m, const ForwardTrace& t) {
  return m.hidden()[0].weights.transpose() *
         m.out_weights().cwiseProduct(sigmoid_slopes(t.sums[0]));
}

Eigen::Vector3d jacobian_2_tanh(const MlpModel& m, const ForwardTrace& t) {
  const Eigen::VectorXd& w = m.out_weights();
  const Eigen::VectorXd th2 = t.sums[1].array().tanh().square().matrix();
  const Eigen::VectorXd inner =
      m.hidden()[1].weights.transpose() * (w - w.cwiseProduct(th2));
  return m.hidden()[0].weights.transpose() *
         inner.cwiseProduct(tanh_slopes(t.sums[0]));
}

Eigen::Vector3d jacobian_2_sigmoid(const MlpModel& m, const ForwardTrace& t) {
  const Eigen::VectorXd inner =
      m.hidden()[1].weights.transpose() *
      m.out_weights().cwiseProduct(sigmoid_slopes(t.sums[1]));
  return m.hidden()[0].weights.transpose() *
         inner.cwiseProduct(sigmoid_slopes(t.sums[0]));
}

}  // namespace

std::string_view activation_name(Activation a) {
  return a == Activation::kTanh ? "tanh" : "sigmoid";
}

Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "sigmoid" || name == "sig") return Activation::kSigmoid;
  throw StructuralError("unknown activation '" + std::string(name) + "'");
}

void NormalizationRanges::validate() const {
  const auto check = [](double lo, double hi, const char* field) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
      throw StructuralError(std::string("ranges.") + field +
                            ": max must exceed min");
    }
  };
  check(eps_p_min, eps_p_max, "eps_p");
  check(log_rate_min, log_rate_max, "log_rate");
  check(T_min, T_max, "T");
  check(sigma_min, sigma_max, "sigma");
  if (!std::isfinite(eps_dot_ref) || eps_dot_ref <= 0.0) {
    throw StructuralError("ranges.eps_dot_ref: must be > 0");
  }
}

MlpModel::MlpModel(std::vector<DenseLayer> hidden, Activation activation,
                   Eigen::VectorXd out_weights, double out_bias,
                   NormalizationRanges ranges)
    : hidden_(std::move(hidden)),
      activation_(activation),
      out_weights_(std::move(out_weights)),
      out_bias_(out_bias),
      ranges_(ranges) {
  if (hidden_.empty() || hidden_.size() > 2) {
    throw StructuralError("unsupported depth " +
                          std::to_string(hidden_.size()) +
                          ": 1 or 2 hidden layers required");
  }
  Eigen::Index inputs = 3;
  for (std::size_t k = 0; k < hidden_.size(); ++k) {
    const DenseLayer& layer = hidden_[k];
    const std::string where = "hidden layer " + std::to_string(k);
    if (layer.weights.rows() < 1 || layer.weights.cols() != inputs) {
      throw StructuralError(where + ": weight shape " +
                            std::to_string(layer.weights.rows()) + "x" +
                            std::to_string(layer.weights.cols()) +
                            " does not accept " + std::to_string(inputs) +
                            " inputs");
    }
    if (layer.bias.size() != layer.weights.rows()) {
      throw StructuralError(where + ": bias length mismatch");
    }
    if (!all_finite(layer.weights) || !all_finite(layer.bias)) {
      throw StructuralError(where + ": non-finite parameter");
    }
    inputs = layer.weights.rows();
  }
  if (out_weights_.size() != inputs) {
    throw StructuralError("output weights length " +
                          std::to_string(out_weights_.size()) +
                          " does not match last hidden width " +
                          std::to_string(inputs));
  }
  if (!all_finite(out_weights_) || !std::isfinite(out_bias_)) {
    throw StructuralError("output layer: non-finite parameter");
  }
  ranges_.validate();
}

MlpModel MlpModel::zeros(std::span<const std::size_t> hidden_widths,
                         Activation activation, NormalizationRanges ranges) {
  std::vector<DenseLayer> layers;
  Eigen::Index inputs = 3;
  for (std::size_t w : hidden_widths) {
    const auto rows = static_cast<Eigen::Index>(w);
    layers.push_back({Eigen::MatrixXd::Zero(rows, inputs),
                      Eigen::VectorXd::Zero(rows)});
    inputs = rows;
  }
  return MlpModel(std::move(layers), activation,
                  Eigen::VectorXd::Zero(inputs), 0.0, ranges);
}

MlpModel MlpModel::glorot(std::span<const std::size_t> hidden_widths,
                          Activation activation, NormalizationRanges ranges,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto fill = [&rng](Eigen::MatrixXd& w) {
    const double limit =
        std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = dist(rng);
  };

  std::vector<DenseLayer> layers;
  Eigen::Index inputs = 3;
  for (std::size_t width : hidden_widths) {
    const auto rows = static_cast<Eigen::Index>(width);
    DenseLayer layer{Eigen::MatrixXd(rows, inputs),
                     Eigen::VectorXd::Zero(rows)};
    fill(layer.weights);
    layers.push_back(std::move(layer));
    inputs = rows;
  }
  Eigen::MatrixXd out(1, inputs);
  fill(out);
  return MlpModel(std::move(layers), activation, out.row(0).transpose(), 0.0,
                  ranges);
}

std::vector<std::size_t> MlpModel::widths() const {
  std::vector<std::size_t> w{3};
  for (const DenseLayer& l : hidden_)
    w.push_back(static_cast<std::size_t>(l.weights.rows()));
  w.push_back(1);
  return w;
}

std::string MlpModel::name() const {
  std::string s;
  for (std::size_t w : widths()) s += std::to_string(w) + "-";
  return s + (activation_ == Activation::kTanh ? "tanh" : "sig");
}

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (const DenseLayer& l : hidden_)
    n += static_cast<std::size_t>(l.weights.size() + l.bias.size());
  return n + static_cast<std::size_t>(out_weights_.size()) + 1;
}

std::vector<double> MlpModel::parameters() const {
  std::vector<double> p;
  p.reserve(parameter_count());
  for (const DenseLayer& l : hidden_) {
    for (Eigen::Index i = 0; i < l.weights.rows(); ++i)
      for (Eigen::Index j = 0; j < l.weights.cols(); ++j)
        p.push_back(l.weights(i, j));
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) p.push_back(l.bias(i));
  }
  for (Eigen::Index i = 0; i < out_weights_.size(); ++i)
    p.push_back(out_weights_(i));
  p.push_back(out_bias_);
  return p;
}

MlpModel MlpModel::with_parameters(std::span<const double> params) const {
  if (params.size() != parameter_count()) {
    throw StructuralError("parameter vector has " +
                          std::to_string(params.size()) + " entries, model needs " +
                          std::to_string(parameter_count()));
  }
  std::size_t at = 0;
  std::vector<DenseLayer> layers = hidden_;
  for (DenseLayer& l : layers) {
    for (Eigen::Index i = 0; i < l.weights.rows(); ++i)
      for (Eigen::Index j = 0; j < l.weights.cols(); ++j)
        l.weights(i, j) = params[at++];
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) l.bias(i) = params[at++];
  }
  Eigen::VectorXd out(out_weights_.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = params[at++];
  return MlpModel(std::move(layers), activation_, std::move(out), params[at],
                  ranges_);
}

Eigen::Vector3d normalize_inputs(const NormalizationRanges& r, double eps_p,
                                 double rate, double T) {
  if (!std::isfinite(eps_p) || !std::isfinite(rate) || !std::isfinite(T)) {
    throw DomainError("normalize_inputs: non-finite input");
  }
  if (rate <= 0.0) throw DomainError("normalize_inputs: rate must be > 0");
  const double log_rate = std::log(rate / r.eps_dot_ref);
  return {(eps_p - r.eps_p_min) / (r.eps_p_max - r.eps_p_min),
          (log_rate - r.log_rate_min) / (r.log_rate_max - r.log_rate_min),
          (T - r.T_min) / (r.T_max - r.T_min)};
}

double normalize_stress(const NormalizationRanges& r, double sigma) {
  return (sigma - r.sigma_min) / (r.sigma_max - r.sigma_min);
}

double denormalize_stress(const NormalizationRanges& r, double s) {
  return (r.sigma_max - r.sigma_min) * s + r.sigma_min;
}

ForwardTrace forward_trace(const MlpModel& model, const Eigen::Vector3d& x) {
  ForwardTrace t;
  Eigen::VectorXd input = x;
  for (const DenseLayer& l : model.hidden()) {
    t.sums.push_back(l.weights * input + l.bias);
    t.activations.push_back(activate(model.activation(), t.sums.back()));
    input = t.activations.back();
  }
  t.output = model.out_weights().dot(input) + model.out_bias();
  return t;
}

double forward(const MlpModel& model, const Eigen::Vector3d& x) {
  return forward_trace(model, x).output;
}

Eigen::Vector3d input_jacobian(const MlpModel& model,
                               const Eigen::Vector3d& x) {
  const ForwardTrace t = forward_trace(model, x);
  const bool tanh = model.activation() == Activation::kTanh;
  switch (model.depth()) {
    case 1:
      return tanh ? jacobian_1_tanh(model, t) : jacobian_1_sigmoid(model, t);
    case 2:
      return tanh ? jacobian_2_tanh(model, t) : jacobian_2_sigmoid(model, t);
    default:
      throw StructuralError("input_jacobian: unsupported depth " +
                            std::to_string(model.depth()));
  }
}

Eigen::Vector3d finite_difference_jacobian(const MlpModel& model,
                                           const Eigen::Vector3d& x,
                                           double delta) {
  if (!(delta > 0.0)) {
    throw DomainError("finite_difference_jacobian: delta must be > 0");
  }
  const double s0 = forward(model, x);
  Eigen::Vector3d g;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d xp = x;
    xp(i) += delta;
    g(i) = (forward(model, xp) - s0) / delta;
  }
  return g;
}

PhysicalPrediction predict_physical(const MlpModel& model, double eps_p,
                                    double rate, double T,
                                    RateScaling scaling) {
  const NormalizationRanges& r = model.ranges();
  if (!std::isfinite(rate) || rate < 0.0) {
    throw DomainError("predict_physical: rate must be finite and >= 0");
  }
  const double clamped_rate = std::max(rate, r.eps_dot_ref);
  const Eigen::Vector3d x = normalize_inputs(r, eps_p, clamped_rate, T);
  const ForwardTrace t = forward_trace(model, x);
  const Eigen::Vector3d ds = input_jacobian(model, x);

  const double span = r.sigma_max - r.sigma_min;
  PhysicalPrediction out;
  out.sigma = denormalize_stress(r, t.output);
  out.d_eps = ds(0) * span / (r.eps_p_max - r.eps_p_min);
  if (scaling == RateScaling::kChainRule) {
    out.d_rate =
        ds(1) * span / ((r.log_rate_max - r.log_rate_min) * clamped_rate);
  } else {
    const double rate_lo = r.eps_dot_ref * std::exp(r.log_rate_min);
    const double rate_hi = r.eps_dot_ref * std::exp(r.log_rate_max);
    out.d_rate = ds(1) / clamped_rate * span / (rate_hi - rate_lo);
  }
  out.d_T = ds(2) * span / (r.T_max - r.T_min);
  out.extrapolated = (x.array() < 0.0).any() || (x.array() > 1.0).any();
  return out;
}

}  // namespace flowlaw
