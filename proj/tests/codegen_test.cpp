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

#include <cstdlib>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "flowlaw/codegen.hpp"
#include "flowlaw/error.hpp"
#include "flowlaw/model_archive.hpp"
#include "test_support.hpp"

namespace flowlaw {
namespace {

using testing::Gen;
using testing::grid_ranges;
using testing::rel_diff;

MlpModel sample_model(std::uint64_t seed, std::size_t m = 15, std::size_t n = 7) {
  Gen gen(seed);
  NormalizationRanges r = grid_ranges();
  r.sigma_min = 180.0;
  r.sigma_max = 1480.0;
  return gen.model({m, n}, Activation::kSigmoid, r, 1.5);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// name -> value for every `parameter` declaration in the emitted source.
std::map<std::string, double> extract_constants(const std::string& text) {
  static const std::regex decl(
      R"(^\s*real\(8\), parameter :: (\w+) = ([-+0-9.]+)d([-+0-9]+)\s*$)");
  std::map<std::string, double> out;
  for (const std::string& l : lines_of(text)) {
    std::smatch m;
    if (std::regex_match(l, m, decl)) {
      const std::string number = m[2].str() + "e" + m[3].str();
      out[m[1]] = std::strtod(number.c_str(), nullptr);
    }
  }
  return out;
}

MlpModel rebuild(const std::map<std::string, double>& c, std::size_t m,
                 std::size_t n) {
  const auto at = [&c](const std::string& k) {
    const auto it = c.find(k);
    if (it == c.end()) throw std::runtime_error("missing constant " + k);
    return it->second;
  };
  const auto s = [](std::size_t i) { return std::to_string(i + 1); };
  DenseLayer l1{Eigen::MatrixXd(m, 3), Eigen::VectorXd(m)};
  DenseLayer l2{Eigen::MatrixXd(n, m), Eigen::VectorXd(n)};
  Eigen::VectorXd w(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < 3; ++j) l1.weights(i, j) = at("w1_" + s(i) + "_" + s(j));
    l1.bias(i) = at("b1_" + s(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) l2.weights(i, j) = at("w2_" + s(i) + "_" + s(j));
    l2.bias(i) = at("b2_" + s(i));
    w(i) = at("w3_" + s(i));
  }
  NormalizationRanges r;
  r.eps_p_min = at("ep_min");
  r.eps_p_max = at("ep_max");
  r.log_rate_min = at("lr_min");
  r.log_rate_max = at("lr_max");
  r.T_min = at("t_min");
  r.T_max = at("t_max");
  r.sigma_min = at("sig_min");
  r.sigma_max = at("sig_max");
  r.eps_dot_ref = at("epsdot0");
  return MlpModel({l1, l2}, Activation::kSigmoid, w, at("b3"), r);
}

// Magnitude of the physical derivative before cancellation: the sum of the
// absolute contributions sum_j |W1_jk z_f[j]|, carried to physical units.
// Random wide-spread weights make some derivatives nearly cancel, and
// relative agreement is then only meaningful against this scale.
Eigen::Vector3d derivative_scale(const MlpModel& m, const StagedResult& s,
                                 double rate) {
  const NormalizationRanges& r = m.ranges();
  const Eigen::MatrixXd& w1 = m.hidden()[0].weights;
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  for (Eigen::Index j = 0; j < w1.rows(); ++j) {
    for (int k = 0; k < 3; ++k) g(k) += std::abs(w1(j, k) * s.terms.z_f[j]);
  }
  const double span = r.sigma_max - r.sigma_min;
  g(0) *= span / (r.eps_p_max - r.eps_p_min);
  g(1) *= span / ((r.log_rate_max - r.log_rate_min) * std::max(rate, r.eps_dot_ref));
  g(2) *= span / (r.T_max - r.T_min);
  return g;
}

TEST(Staged, AgreesWithMatrixForm) {
  const MlpModel model = sample_model(1);
  Gen gen(77);
  for (int i = 0; i < 10000; ++i) {
    const double e = gen.uniform(0.0, 1.0);
    const double r = gen.log_uniform(1.0, 50000.0);
    const double T = gen.uniform(20.0, 500.0);
    const StagedResult s = evaluate_staged(model, e, r, T);
    const PhysicalPrediction p = predict_physical(model, e, r, T);
    const Eigen::Vector3d g = derivative_scale(model, s, r);
    ASSERT_LE(rel_diff(s.prediction.sigma, p.sigma), 1e-12);
    ASSERT_LE(rel_diff(s.prediction.d_eps, p.d_eps, g(0)), 1e-12);
    ASSERT_LE(rel_diff(s.prediction.d_rate, p.d_rate, g(1)), 1e-12);
    ASSERT_LE(rel_diff(s.prediction.d_T, p.d_T, g(2)), 1e-12);
  }
}

TEST(Staged, ZeroWeights) {
  const std::vector<std::size_t> w{15, 7};
  NormalizationRanges r = grid_ranges();
  r.sigma_min = 250.0;
  const MlpModel zero = MlpModel::zeros(w, Activation::kSigmoid, r);
  const StagedResult s = evaluate_staged(zero, 0.3, 100.0, 200.0);
  EXPECT_EQ(s.prediction.sigma, 250.0);
  EXPECT_EQ(s.prediction.d_eps, 0.0);
  EXPECT_EQ(s.prediction.d_rate, 0.0);
  EXPECT_EQ(s.prediction.d_T, 0.0);
}

TEST(Staged, CountsExponentials) {
  EXPECT_EQ(evaluate_staged(sample_model(2), 0.5, 10.0, 100.0).exp_evaluations, 22u);
  EXPECT_EQ(evaluate_staged(sample_model(3, 7, 4), 0.5, 10.0, 100.0).exp_evaluations,
            11u);
}

TEST(Staged, SubTermsAreConsistent) {
  const StagedResult s = evaluate_staged(sample_model(4), 0.4, 300.0, 150.0);
  ASSERT_EQ(s.terms.z_a.size(), 15u);
  ASSERT_EQ(s.terms.z_c.size(), 7u);
  for (std::size_t i = 0; i < 15; ++i) {
    const double sig = 1.0 / s.terms.z_b[i];
    EXPECT_LE(rel_diff(s.terms.z_e[i], sig * (1.0 - sig)), 1e-13);
  }
}

TEST(Staged, RejectsOtherArchitectures) {
  Gen gen(5);
  const MlpModel tanh2 = gen.model({4, 3}, Activation::kTanh, grid_ranges());
  const MlpModel sig1 = gen.model({4}, Activation::kSigmoid, grid_ranges());
  EXPECT_THROW(evaluate_staged(tanh2, 0.1, 10.0, 100.0), StructuralError);
  EXPECT_THROW(evaluate_staged(sig1, 0.1, 10.0, 100.0), StructuralError);
  EXPECT_THROW(emit_subroutine(tanh2), StructuralError);
  EXPECT_THROW(emit_subroutine(sig1), StructuralError);
}

TEST(Emit, ShapeOfSource) {
  const MlpModel model = sample_model(6);
  const std::string text = emit_subroutine(model);
  EXPECT_EQ(text, emit_subroutine(model));

  static const std::regex staged(R"(^\s+z([a-f])_\d+ = .*)");
  std::map<char, int> per_term;
  int lines = 0;
  for (const std::string& l : lines_of(text)) {
    ASSERT_LE(l.size(), 132u) << l;
    for (char ch : l) ASSERT_TRUE(ch >= 0x20 && ch < 0x7f) << l;
    std::smatch m;
    if (std::regex_match(l, m, staged)) {
      ++per_term[m[1].str()[0]];
      ++lines;
    }
  }
  const int mm = 15, nn = 7;
  EXPECT_EQ(lines, mm + mm + nn + nn + mm + mm);
  EXPECT_EQ(per_term['a'], mm);
  EXPECT_EQ(per_term['b'], mm);
  EXPECT_EQ(per_term['c'], nn);
  EXPECT_EQ(per_term['d'], nn);
  EXPECT_EQ(per_term['e'], mm);
  EXPECT_EQ(per_term['f'], mm);

  EXPECT_EQ(extract_constants(text).size(), 180u + 9u);
  EXPECT_NE(text.find("subroutine vuhard("), std::string::npos);
  EXPECT_NE(text.find("implicit none"), std::string::npos);
}

TEST(Emit, OnlyExpLogAndMaxAreCalled) {
  const std::string text = emit_subroutine(sample_model(7));
  const std::set<std::string> arrays{"eqps", "eqpsRate", "tempNew", "yield",
                                     "dyieldDeqps", "dyieldDtemp"};
  static const std::regex call(R"(([A-Za-z_]\w*)\()");
  std::set<std::string> called;
  bool body = false;
  for (const std::string& l : lines_of(text)) {
    if (l.find("do km") != std::string::npos) body = true;
    if (!body) continue;
    for (std::sregex_iterator it(l.begin(), l.end(), call), end; it != end; ++it) {
      const std::string name = (*it)[1];
      if (!arrays.count(name)) called.insert(name);
    }
  }
  EXPECT_EQ(called, (std::set<std::string>{"exp", "log", "max"}));
}

TEST(Emit, ConstantExtractionRoundTrip) {
  const MlpModel model = sample_model(8);
  const MlpModel back = rebuild(extract_constants(emit_subroutine(model)), 15, 7);
  EXPECT_EQ(back.parameters(), model.parameters());
  EXPECT_EQ(back.ranges(), model.ranges());
  Gen gen(99);
  for (int i = 0; i < 1000; ++i) {
    const double e = gen.uniform(0.0, 1.0);
    const double r = gen.log_uniform(1.0, 50000.0);
    const double T = gen.uniform(20.0, 500.0);
    const PhysicalPrediction a = evaluate_staged(model, e, r, T).prediction;
    const PhysicalPrediction b = evaluate_staged(back, e, r, T).prediction;
    ASSERT_LE(rel_diff(a.sigma, b.sigma), 1e-15);
    ASSERT_LE(rel_diff(a.d_eps, b.d_eps), 1e-15);
    ASSERT_LE(rel_diff(a.d_rate, b.d_rate), 1e-15);
    ASSERT_LE(rel_diff(a.d_T, b.d_T), 1e-15);
  }
}

}  // namespace
}  // namespace flowlaw
