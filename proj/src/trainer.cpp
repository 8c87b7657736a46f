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

#include "flowlaw/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "flowlaw/error.hpp"

namespace flowlaw {

namespace {

struct Batch {
  Eigen::MatrixXd x;       // 3 x N normalized inputs
  Eigen::RowVectorXd target;  // normalized stresses
};

Batch make_batch(const MlpModel& model, const Dataset& data) {
  data.validate();
  if (data.size() == 0) throw DomainError("training data is empty");
  const NormalizationRanges& r = model.ranges();
  const auto n = static_cast<Eigen::Index>(data.size());
  Batch b{Eigen::MatrixXd(3, n), Eigen::RowVectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    b.x.col(i) = normalize_inputs(r, data.eps_p[k], data.rate[k], data.T[k]);
    b.target(i) = normalize_stress(r, data.sigma[k]);
  }
  return b;
}

Eigen::MatrixXd activate(Activation a, const Eigen::MatrixXd& y) {
  if (a == Activation::kTanh) return y.array().tanh().matrix();
  return (1.0 + (-y.array()).exp()).inverse().matrix();
}

// f'(y) expressed through the activation value.
Eigen::MatrixXd slope_from_activation(Activation a, const Eigen::MatrixXd& f) {
  if (a == Activation::kTanh) return (1.0 - f.array().square()).matrix();
  return (f.array() * (1.0 - f.array())).matrix();
}

LossGradient backprop(const MlpModel& model, const Batch& b) {
  const auto& layers = model.hidden();
  const double n = static_cast<double>(b.x.cols());

  std::vector<Eigen::MatrixXd> act;
  act.reserve(layers.size() + 1);
  act.push_back(b.x);
  for (const DenseLayer& l : layers) {
    Eigen::MatrixXd y = l.weights * act.back();
    y.colwise() += l.bias;
    act.push_back(activate(model.activation(), y));
  }
  const Eigen::RowVectorXd s =
      (model.out_weights().transpose() * act.back()).array() +
      model.out_bias();
  const Eigen::RowVectorXd residual = s - b.target;

  LossGradient out;
  out.mse = residual.squaredNorm() / n;
  const Eigen::RowVectorXd d_s = (2.0 / n) * residual;

  std::vector<Eigen::MatrixXd> grad_w(layers.size());
  std::vector<Eigen::VectorXd> grad_b(layers.size());
  const Eigen::VectorXd grad_out_w = act.back() * d_s.transpose();
  const double grad_out_b = d_s.sum();

  Eigen::MatrixXd upstream = model.out_weights() * d_s;
  for (std::size_t k = layers.size(); k-- > 0;) {
    const Eigen::MatrixXd d_y =
        upstream.cwiseProduct(slope_from_activation(model.activation(),
                                                    act[k + 1]));
    grad_w[k] = d_y * act[k].transpose();
    grad_b[k] = d_y.rowwise().sum();
    if (k > 0) upstream = layers[k].weights.transpose() * d_y;
  }

  out.gradient.reserve(model.parameter_count());
  for (std::size_t k = 0; k < layers.size(); ++k) {
    for (Eigen::Index i = 0; i < grad_w[k].rows(); ++i)
      for (Eigen::Index j = 0; j < grad_w[k].cols(); ++j)
        out.gradient.push_back(grad_w[k](i, j));
    for (Eigen::Index i = 0; i < grad_b[k].size(); ++i)
      out.gradient.push_back(grad_b[k](i));
  }
  for (Eigen::Index i = 0; i < grad_out_w.size(); ++i)
    out.gradient.push_back(grad_out_w(i));
  out.gradient.push_back(grad_out_b);
  return out;
}

struct Accumulator {
  double sum = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;

  void add(double ref, double pred) {
    if (std::abs(ref) < 1e-12) {
      ++excluded;
      return;
    }
    sum += std::abs((ref - pred) / ref);
    ++used;
  }
  double percent() const {
    return used == 0 ? 0.0 : 100.0 * sum / static_cast<double>(used);
  }
};

}  // namespace

void TrainConfig::validate() const {
  if (iterations < 1) throw DomainError("train: iterations must be >= 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw DomainError("train: learning rate must be finite and >= 0");
  }
  if (!(final_learning_rate >= 0.0) || !std::isfinite(final_learning_rate)) {
    throw DomainError("train: final learning rate must be finite and >= 0");
  }
  if (report_stride < 1) throw DomainError("train: report stride must be >= 1");
}

double loss_erms(std::span<const double> pred, std::span<const double> ref) {
  if (pred.size() != ref.size()) {
    throw DomainError("loss_erms: length mismatch (" +
                      std::to_string(pred.size()) + " vs " +
                      std::to_string(ref.size()) + ")");
  }
  if (pred.empty()) throw DomainError("loss_erms: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - ref[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(pred.size()));
}

LossGradient loss_gradient(const MlpModel& model, const Dataset& data) {
  return backprop(model, make_batch(model, data));
}

MlpModel initialize_model(std::span<const std::size_t> hidden_widths,
                          Activation activation, const Dataset& training,
                          double eps_dot_ref, std::uint64_t seed) {
  return MlpModel::glorot(hidden_widths, activation,
                          ranges_from_dataset(training, eps_dot_ref), seed);
}

TrainResult train_adam(const MlpModel& model, const Dataset& data,
                       const TrainConfig& cfg) {
  cfg.validate();
  const Batch batch = make_batch(model, data);

  std::vector<double> params = model.parameters();
  const std::size_t np = params.size();
  std::vector<double> m1(np, 0.0);
  std::vector<double> m2(np, 0.0);
  double beta1_t = 1.0;
  double beta2_t = 1.0;

  const bool decaying = cfg.final_learning_rate > 0.0 &&
                        cfg.learning_rate > 0.0 &&
                        cfg.decay_start + 1 < cfg.iterations;
  const double decay =
      decaying ? std::log(cfg.final_learning_rate / cfg.learning_rate) /
                     static_cast<double>(cfg.iterations - 1 - cfg.decay_start)
               : 0.0;

  TrainResult result{model, {}};
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    const double lr =
        it <= cfg.decay_start
            ? cfg.learning_rate
            : cfg.learning_rate *
                  std::exp(decay * static_cast<double>(it - cfg.decay_start));
    const LossGradient lg = backprop(result.model, batch);
    if (!std::isfinite(lg.mse)) {
      throw TrainingError(
          "training diverged at iteration " + std::to_string(it), it);
    }
    if (it % cfg.report_stride == 0) {
      result.history.push_back({it, std::sqrt(lg.mse)});
    }
    beta1_t *= cfg.beta1;
    beta2_t *= cfg.beta2;
    for (std::size_t i = 0; i < np; ++i) {
      const double g = lg.gradient[i];
      m1[i] = cfg.beta1 * m1[i] + (1.0 - cfg.beta1) * g;
      m2[i] = cfg.beta2 * m2[i] + (1.0 - cfg.beta2) * g * g;
      const double m_hat = m1[i] / (1.0 - beta1_t);
      const double v_hat = m2[i] / (1.0 - beta2_t);
      params[i] -= lr * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
    for (double p : params) {
      if (!std::isfinite(p)) {
        throw TrainingError(
            "parameter update diverged at iteration " + std::to_string(it), it);
      }
    }
    result.model = result.model.with_parameters(params);
  }
  const double final_mse = backprop(result.model, batch).mse;
  if (!std::isfinite(final_mse)) {
    throw TrainingError("training diverged at final evaluation",
                        cfg.iterations);
  }
  result.history.push_back({cfg.iterations, std::sqrt(final_mse)});
  return result;
}

MetricsReport evaluate_law(const HardeningLaw& law, const Dataset& test,
                           const NormalizationRanges& ranges) {
  test.validate();
  if (!test.has_derivatives()) {
    throw FormatError("evaluate: test set has no derivative columns");
  }
  if (test.size() == 0) throw FormatError("evaluate: test set is empty");

  Accumulator sigma, d_eps, d_rate, d_T;
  std::vector<double> pred_s(test.size()), ref_s(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    const FlowState f = law.evaluate(test.eps_p[i], test.rate[i], test.T[i]);
    const FlowDerivatives& ref = test.derivs[i];
    sigma.add(test.sigma[i], f.sigma);
    d_eps.add(ref.d_eps, f.d_eps);
    d_rate.add(ref.d_rate, f.d_rate);
    d_T.add(ref.d_T, f.d_T);
    pred_s[i] = normalize_stress(ranges, f.sigma);
    ref_s[i] = normalize_stress(ranges, test.sigma[i]);
  }

  MetricsReport m;
  m.erms = loss_erms(pred_s, ref_s);
  m.aare_sigma = sigma.percent();
  m.aare_deps = d_eps.percent();
  m.aare_drate = d_rate.percent();
  m.aare_dT = d_T.percent();
  m.rows = test.size();
  m.excluded[0] = sigma.excluded;
  m.excluded[1] = d_eps.excluded;
  m.excluded[2] = d_rate.excluded;
  m.excluded[3] = d_T.excluded;
  return m;
}

MetricsReport evaluate(const MlpModel& model, const Dataset& test) {
  const NetworkLaw law(model);
  MetricsReport m = evaluate_law(law, test, model.ranges());
  m.param_count = model.parameter_count();
  return m;
}

void print_metrics_row(std::ostream& out, const std::string& name,
                       const MetricsReport& m) {
  char buf[256];
  out << "Model            |     N |   E_RMS    |  dSig % | dSig/dEp % | "
         "dSig/dRate % | dSig/dT %\n";
  std::snprintf(buf, sizeof buf,
                "%-16s | %5zu | %10.4e | %7.4f | %9.4f | %11.4f | %9.4f\n",
                name.c_str(), m.param_count, m.erms, m.aare_sigma,
                m.aare_deps, m.aare_drate, m.aare_dT);
  out << buf;
}

void write_history_csv(const std::vector<LossRecord>& history,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "iter,erms\n";
  char buf[64];
  for (const LossRecord& r : history) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", r.iteration, r.erms);
    out << buf;
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace flowlaw
