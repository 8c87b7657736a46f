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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "flowlaw/dataset.hpp"
#include "flowlaw/hardening_law.hpp"
#include "flowlaw/mlp.hpp"

namespace flowlaw {

struct TrainConfig {
  std::size_t iterations = 50000;
  double learning_rate = 1e-3;
  /// When > 0 the step size decays geometrically from learning_rate to this
  /// value between iteration `decay_start` and the end of the run; 0 keeps it
  /// constant.
  double final_learning_rate = 0.0;
  std::size_t decay_start = 0;
  /// Seeds the weight initialization done by initialize_model().
  std::uint64_t seed = 0;
  /// Loss history is sampled every `report_stride` iterations.
  std::size_t report_stride = 100;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

struct LossRecord {
  std::size_t iteration = 0;
  double erms = 0.0;
};

struct TrainResult {
  MlpModel model;
  std::vector<LossRecord> history;
};

/// Average absolute relative errors in percent, E_RMS on normalized stress.
struct MetricsReport {
  double erms = 0.0;
  double aare_sigma = 0.0;
  double aare_deps = 0.0;
  double aare_drate = 0.0;
  double aare_dT = 0.0;
  std::size_t param_count = 0;
  std::size_t rows = 0;
  /// Reference entries with |value| < 1e-12, left out of the matching AARE:
  /// sigma, d_eps, d_rate, d_T.
  std::size_t excluded[4] = {0, 0, 0, 0};
};

/// sqrt(mean((pred - ref)^2)). Throws DomainError on length mismatch or
/// empty input.
double loss_erms(std::span<const double> pred, std::span<const double> ref);

/// Mean squared error on normalized stress and its gradient with respect to
/// model.parameters(), by backpropagation over the whole dataset.
struct LossGradient {
  double mse = 0.0;
  std::vector<double> gradient;
};
LossGradient loss_gradient(const MlpModel& model, const Dataset& data);

/// Glorot-initialized network whose ranges come from the training data.
MlpModel initialize_model(std::span<const std::size_t> hidden_widths,
                          Activation activation, const Dataset& training,
                          double eps_dot_ref, std::uint64_t seed);

/// Full-batch ADAM on the mean squared normalized-stress error. Throws
/// TrainingError naming the iteration if the loss turns non-finite.
TrainResult train_adam(const MlpModel& model, const Dataset& data,
                       const TrainConfig& cfg);

/// Compares a law against a test set that carries reference derivatives.
/// `ranges` normalizes the stresses entering E_RMS.
MetricsReport evaluate_law(const HardeningLaw& law, const Dataset& test,
                           const NormalizationRanges& ranges);
MetricsReport evaluate(const MlpModel& model, const Dataset& test);

/// One summary line: model name, N, E_RMS and the four AAREs.
void print_metrics_row(std::ostream& out, const std::string& name,
                       const MetricsReport& m);
void write_history_csv(const std::vector<LossRecord>& history,
                       const std::filesystem::path& path);

}  // namespace flowlaw
