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

#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "flowlaw/dataset.hpp"
#include "flowlaw/error.hpp"
#include "flowlaw/hardening_law.hpp"
#include "flowlaw/trainer.hpp"
#include "test_support.hpp"

namespace flowlaw {
namespace {

using testing::Gen;
using testing::grid_ranges;
using testing::rel_diff;

const JohnsonCookParams kSteel = steel_42CrMo4();

TEST(Dataset, TrainingGridShape) {
  const Dataset g = generate_training_grid(kSteel);
  ASSERT_EQ(g.size(), 2520u);
  EXPECT_EQ(g.size(), 70u * 6u * 6u);
  EXPECT_FALSE(g.has_derivatives());
  EXPECT_EQ(g.eps_p[0], 0.0);
  EXPECT_EQ(g.rate[0], 1.0);
  EXPECT_EQ(g.T[0], 20.0);
  EXPECT_EQ(g.sigma[0], 806.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    ASSERT_EQ(g.sigma[i], jc_flow_stress(kSteel, g.eps_p[i], g.rate[i], g.T[i]));
  }
}

TEST(Dataset, TestSetIsDeterministicAndInDomain) {
  const Dataset a = generate_test_set(kSteel, 5000, 99);
  const Dataset b = generate_test_set(kSteel, 5000, 99);
  ASSERT_EQ(a.size(), 5000u);
  EXPECT_EQ(dataset_hash(a), dataset_hash(b));
  EXPECT_EQ(a.sigma, b.sigma);
  EXPECT_NE(dataset_hash(a), dataset_hash(generate_test_set(kSteel, 5000, 100)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_GE(a.eps_p[i], 0.0);
    ASSERT_LE(a.eps_p[i], 1.0);
    ASSERT_GE(a.rate[i], 1.0);
    ASSERT_LE(a.rate[i], 50000.0);
    ASSERT_GE(a.T[i], 20.0);
    ASSERT_LE(a.T[i], 500.0);
    ASSERT_TRUE(std::isfinite(a.sigma[i]));
    ASSERT_GT(a.sigma[i], 0.0);
  }
  EXPECT_THROW(generate_test_set(kSteel, 0, 1), DomainError);
}

TEST(Dataset, TestSetDerivativesMatchDifferences) {
  const Dataset t = generate_test_set(kSteel, 500, 5);
  ASSERT_TRUE(t.has_derivatives());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e = t.eps_p[i], r = t.rate[i], T = t.T[i];
    if (e < 1e-3 || r < 1.0 + 1e-3 || T < 20.0 + 1e-3) continue;
    const double he = e * 1e-6, hr = r * 1e-6, ht = 1e-4;
    const FlowDerivatives& d = t.derivs[i];
    ASSERT_LE(rel_diff(d.d_eps, (jc_flow_stress(kSteel, e + he, r, T) -
                                 jc_flow_stress(kSteel, e - he, r, T)) / (2 * he)),
              1e-5);
    ASSERT_LE(rel_diff(d.d_rate, (jc_flow_stress(kSteel, e, r + hr, T) -
                                  jc_flow_stress(kSteel, e, r - hr, T)) / (2 * hr)),
              1e-5);
    ASSERT_LE(rel_diff(d.d_T, (jc_flow_stress(kSteel, e, r, T + ht) -
                               jc_flow_stress(kSteel, e, r, T - ht)) / (2 * ht)),
              1e-5);
  }
}

TEST(Dataset, LogUniformRatesCoverDecadesEvenly) {
  const Dataset t = generate_test_set(kSteel, 4000, 3);
  int below_10 = 0;
  for (double r : t.rate) below_10 += r < 10.0;
  // log10(10)/log10(50000) ~ 21% of samples.
  EXPECT_NEAR(below_10 / 4000.0, 1.0 / std::log10(50000.0), 0.03);
  const Dataset u = generate_test_set(kSteel, 4000, 3, RateSampling::kUniform);
  int u_below_10 = 0;
  for (double r : u.rate) u_below_10 += r < 10.0;
  EXPECT_LT(u_below_10, 20);
}

TEST(Dataset, CsvRoundTripIsExact) {
  const Dataset t = generate_test_set(kSteel, 50, 8);
  std::stringstream ss;
  write_csv(t, ss);
  const Dataset back = read_csv(ss);
  EXPECT_EQ(dataset_hash(back), dataset_hash(t));
  ASSERT_TRUE(back.has_derivatives());
  EXPECT_EQ(back.derivs[7].d_T, t.derivs[7].d_T);
}

TEST(Dataset, CsvErrorsNameTheLine) {
  std::stringstream bad("eps_p,rate,T,sigma\n0.1,10,100,900\n0.2,abc,100,900\n");
  try {
    read_csv(bad);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::stringstream header("a,b,c\n");
  EXPECT_THROW(read_csv(header), FormatError);
}

TEST(Dataset, RangesFromData) {
  const Dataset g = generate_training_grid(kSteel);
  const NormalizationRanges r = ranges_from_dataset(g, 1.0);
  EXPECT_EQ(r.eps_p_min, 0.0);
  EXPECT_EQ(r.eps_p_max, 1.0);
  EXPECT_EQ(r.log_rate_min, 0.0);
  EXPECT_NEAR(r.log_rate_max, std::log(50000.0), 1e-15);
  EXPECT_EQ(r.T_min, 20.0);
  EXPECT_EQ(r.T_max, 500.0);
}

TEST(Loss, ErmsExamples) {
  const std::vector<double> a{0.2, 0.4, 0.9};
  EXPECT_EQ(loss_erms(a, a), 0.0);
  const std::vector<double> shifted{0.3, 0.5, 1.0};
  EXPECT_NEAR(loss_erms(shifted, a), 0.1, 1e-15);
  const std::vector<double> p{0.0, 1.0}, q{1.0, 0.0};
  EXPECT_EQ(loss_erms(p, q), 1.0);
  EXPECT_THROW(loss_erms(p, a), DomainError);
  EXPECT_THROW(loss_erms(std::vector<double>{}, std::vector<double>{}), DomainError);
}

Dataset small_grid(std::size_t n, std::uint64_t seed) {
  Dataset d = generate_test_set(kSteel, n, seed);
  d.derivs.clear();
  return d;
}

// Central differences of the mean squared loss with respect to every
// parameter, on random 3-2-1 and 3-3-2-1 networks of both activations.
TEST(TrainerProperty, BackpropMatchesCentralDifferences) {
  Gen gen(0xbac4);
  const Dataset data = small_grid(40, 21);
  const Activation acts[] = {Activation::kTanh, Activation::kSigmoid};
  const std::vector<std::vector<std::size_t>> shapes{{2}, {3, 2}};
  NormalizationRanges r = ranges_from_dataset(data, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    for (const auto& shape : shapes) {
      for (Activation act : acts) {
        const MlpModel m = gen.model(shape, act, r, 1.5);
        const LossGradient lg = loss_gradient(m, data);
        std::vector<double> p = m.parameters();
        for (std::size_t i = 0; i < p.size(); ++i) {
          const double h = 1e-6;
          std::vector<double> pp = p, pm = p;
          pp[i] += h;
          pm[i] -= h;
          const double fd = (loss_gradient(m.with_parameters(pp), data).mse -
                             loss_gradient(m.with_parameters(pm), data).mse) /
                            (2 * h);
          ASSERT_LE(std::abs(lg.gradient[i] - fd),
                    1e-5 * std::max(std::abs(fd), 1e-3) + 1e-8)
              << m.name() << " parameter " << i;
        }
      }
    }
  }
}

TEST(Trainer, ZeroLearningRateLeavesModelUnchanged) {
  const Dataset data = small_grid(30, 4);
  const std::vector<std::size_t> w{4, 3};
  const MlpModel m = initialize_model(w, Activation::kSigmoid, data, 1.0, 9);
  TrainConfig cfg;
  cfg.iterations = 1;
  cfg.learning_rate = 0.0;
  EXPECT_EQ(train_adam(m, data, cfg).model.parameters(), m.parameters());
}

TEST(Trainer, DeterministicAndImproving) {
  const Dataset data = generate_training_grid(kSteel);
  const std::vector<std::size_t> w{7, 4};
  const MlpModel m = initialize_model(w, Activation::kSigmoid, data, 1.0, 3);
  TrainConfig cfg;
  cfg.iterations = 300;
  cfg.learning_rate = 1e-2;
  cfg.report_stride = 50;
  const TrainResult a = train_adam(m, data, cfg);
  const TrainResult b = train_adam(m, data, cfg);
  EXPECT_EQ(a.model.parameters(), b.model.parameters());
  ASSERT_EQ(a.history.size(), 7u);
  EXPECT_EQ(a.history.back().iteration, 300u);
  EXPECT_LT(a.history.back().erms, a.history.front().erms);
  EXPECT_LT(std::sqrt(loss_gradient(a.model, data).mse),
            std::sqrt(loss_gradient(m, data).mse));
}

TEST(Trainer, LearningRateDecayIsOptional) {
  const Dataset data = small_grid(30, 4);
  const std::vector<std::size_t> w{3};
  const MlpModel m = initialize_model(w, Activation::kTanh, data, 1.0, 2);
  TrainConfig cfg;
  cfg.iterations = 20;
  const TrainResult constant = train_adam(m, data, cfg);
  cfg.final_learning_rate = cfg.learning_rate;
  EXPECT_EQ(train_adam(m, data, cfg).model.parameters(),
            constant.model.parameters());
  cfg.final_learning_rate = 1e-6;
  EXPECT_NE(train_adam(m, data, cfg).model.parameters(),
            constant.model.parameters());
}

TEST(Trainer, DivergenceReportsIteration) {
  const Dataset data = small_grid(30, 4);
  const std::vector<std::size_t> w{3};
  const MlpModel m = initialize_model(w, Activation::kTanh, data, 1.0, 2);
  TrainConfig cfg;
  cfg.iterations = 5;
  cfg.learning_rate = 1e308;
  try {
    train_adam(m, data, cfg);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_LT(e.iteration(), 5u);
  }
}

TEST(Trainer, ConfigValidation) {
  TrainConfig cfg;
  cfg.iterations = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.learning_rate = -1.0;
  EXPECT_THROW(cfg.validate(), DomainError);
}

class ScaledLaw final : public HardeningLaw {
 public:
  explicit ScaledLaw(double f) : jc_(kSteel), f_(f) {}
  FlowState evaluate(double e, double r, double T) const override {
    FlowState s = jc_.evaluate(e, r, T);
    return {s.sigma * f_, s.d_eps * f_, s.d_rate * f_, s.d_T * f_};
  }
  double reference_rate() const override { return 1.0; }

 private:
  JohnsonCookLaw jc_;
  double f_;
};

TEST(Metrics, OracleAgainstItselfIsExact) {
  const Dataset t = generate_test_set(kSteel, 300, 1);
  const MetricsReport m = evaluate_law(ScaledLaw(1.0), t, grid_ranges());
  EXPECT_EQ(m.aare_sigma, 0.0);
  EXPECT_EQ(m.aare_deps, 0.0);
  EXPECT_EQ(m.aare_drate, 0.0);
  EXPECT_EQ(m.aare_dT, 0.0);
  EXPECT_EQ(m.erms, 0.0);
  EXPECT_EQ(m.rows, 300u);
}

TEST(Metrics, UniformOnePercentBias) {
  const Dataset t = generate_test_set(kSteel, 300, 1);
  const MetricsReport m = evaluate_law(ScaledLaw(1.01), t, grid_ranges());
  EXPECT_NEAR(m.aare_sigma, 1.0, 1e-9);
  EXPECT_NEAR(m.aare_deps, 1.0, 1e-9);
  EXPECT_NEAR(m.aare_drate, 1.0, 1e-9);
  EXPECT_NEAR(m.aare_dT, 1.0, 1e-9);
}

TEST(Metrics, ZeroReferencesAreExcludedAndCounted) {
  Dataset t = generate_test_set(kSteel, 10, 1);
  t.T[0] = 20.0;  // dT vanishes at the reference temperature
  t.sigma[0] = jc_flow_stress(kSteel, t.eps_p[0], t.rate[0], 20.0);
  t.derivs[0] = jc_derivatives(kSteel, t.eps_p[0], t.rate[0], 20.0);
  const MetricsReport m = evaluate_law(ScaledLaw(1.01), t, grid_ranges());
  EXPECT_EQ(m.excluded[3], 1u);
  EXPECT_NEAR(m.aare_dT, 1.0, 1e-9);
}

TEST(Metrics, RowHasFixedColumns) {
  MetricsReport m;
  m.param_count = 180;
  m.aare_sigma = 0.011;
  std::ostringstream out;
  print_metrics_row(out, "3-15-7-1-sig", m);
  const std::string s = out.str();
  EXPECT_NE(s.find("3-15-7-1-sig"), std::string::npos);
  EXPECT_NE(s.find("180"), std::string::npos);
  EXPECT_NE(s.find("0.0110"), std::string::npos);
}

}  // namespace
}  // namespace flowlaw
