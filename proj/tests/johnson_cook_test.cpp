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
#include <limits>

#include <gtest/gtest.h>

#include "flowlaw/error.hpp"
#include "flowlaw/johnson_cook.hpp"
#include "test_support.hpp"

namespace flowlaw {
namespace {

using testing::Gen;
using testing::rel_diff;

const JohnsonCookParams kSteel = steel_42CrMo4();

// Frozen from tests/oracles/jc_oracle.py (50-digit mpmath).
struct OraclePoint {
  double eps, rate, T;
  double sigma, d_eps, d_rate, d_T;
};
constexpr OraclePoint kOracle[] = {
    {0.5, 500.0, 300.0, 1205.3073467988315778, 163.64134937038244941,
     0.020330017272189951199, -0.87216762394934986101},
    {0.25, 10.0, 100.0, 1267.2062938096528282, 320.50228199193965001,
     1.1051654380699610904, -0.71103590399407791098},
    {0.9, 40000.0, 480.0, 1128.0108782452325473, 90.132220736033776125,
     0.00022935220288833998088, -0.99028912602936478207},
};

TEST(JohnsonCook, ReducesToAAtReferenceState) {
  EXPECT_EQ(jc_flow_stress(kSteel, 0.0, 1.0, 20.0), 806.0);
}

TEST(JohnsonCook, VanishesAtAndAboveMelting) {
  EXPECT_EQ(jc_flow_stress(kSteel, 0.3, 100.0, 1540.0), 0.0);
  EXPECT_EQ(jc_flow_stress(kSteel, 0.3, 100.0, 1800.0), 0.0);
}

TEST(JohnsonCook, MatchesHighPrecisionOracle) {
  for (const OraclePoint& o : kOracle) {
    const FlowDerivatives d = jc_derivatives(kSteel, o.eps, o.rate, o.T);
    EXPECT_LE(rel_diff(jc_flow_stress(kSteel, o.eps, o.rate, o.T), o.sigma), 1e-12);
    EXPECT_LE(rel_diff(d.d_eps, o.d_eps), 1e-12);
    EXPECT_LE(rel_diff(d.d_rate, o.d_rate), 1e-12);
    EXPECT_LE(rel_diff(d.d_T, o.d_T), 1e-12);
  }
}

TEST(JohnsonCook, RateBelowReferenceIsClamped) {
  EXPECT_EQ(jc_flow_stress(kSteel, 0.2, 0.0, 150.0),
            jc_flow_stress(kSteel, 0.2, 1.0, 150.0));
  EXPECT_EQ(jc_flow_stress(kSteel, 0.2, 0.5, 150.0),
            jc_flow_stress(kSteel, 0.2, 1.0, 150.0));
}

TEST(JohnsonCook, TemperatureBelowReferenceIsClamped) {
  EXPECT_EQ(jc_flow_stress(kSteel, 0.2, 10.0, -40.0),
            jc_flow_stress(kSteel, 0.2, 10.0, 20.0));
}

TEST(JohnsonCook, TemperatureDerivativeFiniteAtReference) {
  const FlowDerivatives d = jc_derivatives(kSteel, 0.2, 10.0, 20.0);
  EXPECT_TRUE(std::isfinite(d.d_T));
  EXPECT_EQ(d.d_T, 0.0);  // theta^(m-1) with m > 1
}

TEST(JohnsonCook, StrainDerivativeFloorPolicy) {
  const FlowDerivatives d = jc_derivatives(kSteel, 0.0, 10.0, 100.0);
  EXPECT_TRUE(std::isfinite(d.d_eps));
  EXPECT_GT(d.d_eps, 0.0);
  EXPECT_THROW(jc_derivatives(kSteel, 0.0, 10.0, 100.0, StrainFloorPolicy::kReject),
               DomainError);
}

TEST(JohnsonCook, RejectsBadInputs) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(jc_flow_stress(kSteel, -0.1, 10.0, 100.0), DomainError);
  EXPECT_THROW(jc_flow_stress(kSteel, nan, 10.0, 100.0), DomainError);
  EXPECT_THROW(jc_flow_stress(kSteel, 0.1, INFINITY, 100.0), DomainError);
  EXPECT_THROW(jc_derivatives(kSteel, 0.1, 10.0, nan), DomainError);
}

TEST(JohnsonCook, ParameterValidation) {
  EXPECT_NO_THROW(kSteel.validate());
  JohnsonCookParams p = kSteel;
  p.T_melt = p.T_ref;
  EXPECT_THROW(p.validate(), DomainError);
  p = kSteel;
  p.n = 0.0;
  EXPECT_THROW(p.validate(), DomainError);
  p = kSteel;
  p.eps_dot_ref = -1.0;
  EXPECT_THROW(p.validate(), DomainError);
}

TEST(JohnsonCook, ShearModulusFromSteelConstants) {
  const ThermalElasticParams mat = steel_42CrMo4_thermal();
  EXPECT_LE(rel_diff(mat.shear_modulus(), 80193.798449612403101), 1e-14);
}

TEST(JohnsonCookProperty, DerivativesMatchCentralDifferences) {
  Gen gen(0x5eed0001);
  for (int i = 0; i < 1000; ++i) {
    const double eps = gen.uniform(0.01, 1.0);
    const double rate = gen.log_uniform(1.5, 50000.0);
    const double T = gen.uniform(25.0, 500.0);
    const FlowDerivatives d = jc_derivatives(kSteel, eps, rate, T);

    const double he = eps * 1e-6, hr = rate * 1e-6, ht = 1e-4;
    const double fd_eps = (jc_flow_stress(kSteel, eps + he, rate, T) -
                           jc_flow_stress(kSteel, eps - he, rate, T)) / (2 * he);
    const double fd_rate = (jc_flow_stress(kSteel, eps, rate + hr, T) -
                            jc_flow_stress(kSteel, eps, rate - hr, T)) / (2 * hr);
    const double fd_T = (jc_flow_stress(kSteel, eps, rate, T + ht) -
                         jc_flow_stress(kSteel, eps, rate, T - ht)) / (2 * ht);
    ASSERT_LE(rel_diff(d.d_eps, fd_eps), 1e-5) << "eps=" << eps;
    ASSERT_LE(rel_diff(d.d_rate, fd_rate), 1e-5) << "rate=" << rate;
    ASSERT_LE(rel_diff(d.d_T, fd_T), 1e-5) << "T=" << T;
  }
}

TEST(JohnsonCookProperty, MonotoneInEachInput) {
  Gen gen(0x5eed0002);
  for (int i = 0; i < 1000; ++i) {
    const double eps = gen.uniform(0.0, 1.0);
    const double rate = gen.log_uniform(1.0, 50000.0);
    const double T = gen.uniform(20.0, 1500.0);
    const double s = jc_flow_stress(kSteel, eps, rate, T);
    ASSERT_GT(s, 0.0);
    ASSERT_GE(jc_flow_stress(kSteel, eps + 0.01, rate, T), s);
    ASSERT_GE(jc_flow_stress(kSteel, eps, rate * 1.5, T), s);
    ASSERT_LE(jc_flow_stress(kSteel, eps, rate, T + 5.0), s);
  }
}

}  // namespace
}  // namespace flowlaw
