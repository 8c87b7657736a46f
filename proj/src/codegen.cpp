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

#include "flowlaw/codegen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "flowlaw/error.hpp"

namespace flowlaw {

namespace {

constexpr std::size_t kMaxColumns = 132;
constexpr std::size_t kWrapAt = 110;

void require_staged_architecture(const MlpModel& model, const char* what) {
  if (model.depth() != 2 || model.activation() != Activation::kSigmoid) {
    throw StructuralError(std::string(what) +
                          ": only 2-hidden-layer sigmoid networks are supported, got " +
                          model.name());
  }
}

// 17 significant digits in Fortran double-precision notation.
std::string fortran_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  std::string s(buf);
  std::replace(s.begin(), s.end(), 'e', 'd');
  return s;
}

std::string idx(std::size_t i) { return std::to_string(i + 1); }

// Writes `head term0 sep term1 sep ... tail`, continuing with '&' whenever a
// line would grow past kWrapAt columns.
void emit_wrapped(std::ostringstream& src, const std::string& head,
                  const std::vector<std::string>& terms, const std::string& sep,
                  const std::string& tail) {
  std::string line = head;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string piece = terms[i] + (i + 1 < terms.size() ? sep : tail);
    if (line.size() + piece.size() > kWrapAt) {
      src << line << "&\n";
      line = "      & ";
    }
    line += piece;
  }
  src << line << "\n";
}

struct Names {
  std::size_t m;
  std::size_t n;
  std::string w1(std::size_t i, std::size_t j) const { return "w1_" + idx(i) + "_" + idx(j); }
  std::string b1(std::size_t i) const { return "b1_" + idx(i); }
  std::string w2(std::size_t i, std::size_t j) const { return "w2_" + idx(i) + "_" + idx(j); }
  std::string b2(std::size_t i) const { return "b2_" + idx(i); }
  std::string w3(std::size_t i) const { return "w3_" + idx(i); }
};

}  // namespace

StagedResult evaluate_staged(const MlpModel& model, double eps_p, double rate,
                             double T) {
  require_staged_architecture(model, "evaluate_staged");
  const NormalizationRanges& r = model.ranges();
  if (!std::isfinite(eps_p) || !std::isfinite(rate) || !std::isfinite(T) ||
      rate < 0.0) {
    throw DomainError("evaluate_staged: inputs must be finite with rate >= 0");
  }
  const Eigen::MatrixXd& w1 = model.hidden()[0].weights;
  const Eigen::VectorXd& b1 = model.hidden()[0].bias;
  const Eigen::MatrixXd& w2 = model.hidden()[1].weights;
  const Eigen::VectorXd& b2 = model.hidden()[1].bias;
  const Eigen::VectorXd& w = model.out_weights();
  const auto m = static_cast<std::size_t>(w1.rows());
  const auto n = static_cast<std::size_t>(w2.rows());
  const auto at = [](std::size_t i) { return static_cast<Eigen::Index>(i); };

  const double clamped = std::max(rate, r.eps_dot_ref);
  const double x[3] = {
      (eps_p - r.eps_p_min) / (r.eps_p_max - r.eps_p_min),
      (std::log(clamped / r.eps_dot_ref) - r.log_rate_min) /
          (r.log_rate_max - r.log_rate_min),
      (T - r.T_min) / (r.T_max - r.T_min)};

  StagedResult out;
  StagedTerms& z = out.terms;
  z.z_a.resize(m);
  z.z_b.resize(m);
  z.z_c.resize(n);
  z.z_d.resize(n);
  z.z_e.resize(m);
  z.z_f.resize(m);

  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 3; ++j) sum += w1(at(i), at(j)) * x[j];
    z.z_a[i] = std::exp(-sum - b1(at(i)));
    ++out.exp_evaluations;
    z.z_b[i] = 1.0 + z.z_a[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += w2(at(i), at(j)) / z.z_b[j];
    z.z_c[i] = std::exp(-sum - b2(at(i)));
    ++out.exp_evaluations;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double d = 1.0 + z.z_c[i];
    z.z_d[i] = w(at(i)) * z.z_c[i] / (d * d);
  }
  for (std::size_t i = 0; i < m; ++i) {
    z.z_e[i] = z.z_a[i] / (z.z_b[i] * z.z_b[i]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += w2(at(j), at(i)) * z.z_d[j];
    z.z_f[i] = sum * z.z_e[i];
  }

  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w(at(i)) / (1.0 + z.z_c[i]);
  s += model.out_bias();
  out.s = s;
  for (std::size_t k = 0; k < 3; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += w1(at(j), at(k)) * z.z_f[j];
    out.s_prime[k] = sum;
  }

  const double span = r.sigma_max - r.sigma_min;
  PhysicalPrediction& p = out.prediction;
  p.sigma = span * s + r.sigma_min;
  p.d_eps = out.s_prime[0] * span / (r.eps_p_max - r.eps_p_min);
  p.d_rate = out.s_prime[1] * span / ((r.log_rate_max - r.log_rate_min) * clamped);
  p.d_T = out.s_prime[2] * span / (r.T_max - r.T_min);
  p.extrapolated = std::any_of(std::begin(x), std::end(x),
                               [](double v) { return v < 0.0 || v > 1.0; });
  return out;
}

std::string emit_subroutine(const MlpModel& model) {
  require_staged_architecture(model, "emit_subroutine");
  const Eigen::MatrixXd& w1 = model.hidden()[0].weights;
  const Eigen::VectorXd& b1 = model.hidden()[0].bias;
  const Eigen::MatrixXd& w2 = model.hidden()[1].weights;
  const Eigen::VectorXd& b2 = model.hidden()[1].bias;
  const Eigen::VectorXd& w = model.out_weights();
  const NormalizationRanges& r = model.ranges();
  const Names nm{static_cast<std::size_t>(w1.rows()),
                 static_cast<std::size_t>(w2.rows())};
  const std::size_t m = nm.m;
  const std::size_t n = nm.n;
  const auto at = [](std::size_t i) { return static_cast<Eigen::Index>(i); };

  std::ostringstream src;
  const auto constant = [&src](const std::string& name, double v) {
    src << "  real(8), parameter :: " << name << " = " << fortran_real(v) << "\n";
  };

  src << "! Flow stress and its derivatives for the " << model.name()
      << " network (" << model.parameter_count() << " parameters).\n"
      << "! Generated by flowlaw; do not edit.\n"
      << "subroutine vuhard(nblock, jElem, kIntPt, kLayer, kSecPt, lAnneal, &\n"
      << "    stepTime, totalTime, dt, cmname, nstatev, nfieldv, nprops, props, &\n"
      << "    tempOld, tempNew, fieldOld, fieldNew, stateOld, eqps, eqpsRate, &\n"
      << "    yield, dyieldDtemp, dyieldDeqps, stateNew)\n"
      << "  implicit none\n"
      << "  integer, intent(in) :: nblock, kIntPt, kLayer, kSecPt, lAnneal\n"
      << "  integer, intent(in) :: nstatev, nfieldv, nprops\n"
      << "  integer, intent(in) :: jElem(nblock)\n"
      << "  character(len=80), intent(in) :: cmname\n"
      << "  real(8), intent(in) :: stepTime, totalTime, dt\n"
      << "  real(8), intent(in) :: props(nprops)\n"
      << "  real(8), intent(in) :: tempOld(nblock), tempNew(nblock)\n"
      << "  real(8), intent(in) :: fieldOld(nblock, nfieldv), fieldNew(nblock, nfieldv)\n"
      << "  real(8), intent(in) :: stateOld(nblock, nstatev)\n"
      << "  real(8), intent(in) :: eqps(nblock), eqpsRate(nblock)\n"
      << "  real(8), intent(out) :: yield(nblock), dyieldDtemp(nblock)\n"
      << "  real(8), intent(out) :: dyieldDeqps(nblock, 2)\n"
      << "  real(8), intent(inout) :: stateNew(nblock, nstatev)\n";

  src << "  ! normalization ranges\n";
  constant("ep_min", r.eps_p_min);
  constant("ep_max", r.eps_p_max);
  constant("lr_min", r.log_rate_min);
  constant("lr_max", r.log_rate_max);
  constant("t_min", r.T_min);
  constant("t_max", r.T_max);
  constant("sig_min", r.sigma_min);
  constant("sig_max", r.sigma_max);
  constant("epsdot0", r.eps_dot_ref);

  src << "  ! hidden layer 1\n";
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < 3; ++j) constant(nm.w1(i, j), w1(at(i), at(j)));
    constant(nm.b1(i), b1(at(i)));
  }
  src << "  ! hidden layer 2\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) constant(nm.w2(i, j), w2(at(i), at(j)));
    constant(nm.b2(i), b2(at(i)));
  }
  src << "  ! output layer\n";
  for (std::size_t i = 0; i < n; ++i) constant(nm.w3(i), w(at(i)));
  constant("b3", model.out_bias());

  const auto declare = [&src](const std::string& prefix, std::size_t count) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < count; ++i) names.push_back(prefix + idx(i));
    emit_wrapped(src, "  real(8) :: ", names, ", ", "");
  };
  declare("za_", m);
  declare("zb_", m);
  declare("zc_", n);
  declare("zd_", n);
  declare("ze_", m);
  declare("zf_", m);
  src << "  real(8) :: x1, x2, x3, rate, s, ds1, ds2, ds3\n"
      << "  integer :: km\n\n"
      << "  do km = 1, nblock\n"
      << "    rate = max(eqpsRate(km), epsdot0)\n"
      << "    x1 = (eqps(km) - ep_min)/(ep_max - ep_min)\n"
      << "    x2 = (log(rate/epsdot0) - lr_min)/(lr_max - lr_min)\n"
      << "    x3 = (tempNew(km) - t_min)/(t_max - t_min)\n";

  for (std::size_t i = 0; i < m; ++i) {
    src << "    za_" << idx(i) << " = exp(-(" << nm.w1(i, 0) << "*x1 + "
        << nm.w1(i, 1) << "*x2 + " << nm.w1(i, 2) << "*x3) - " << nm.b1(i)
        << ")\n";
  }
  for (std::size_t i = 0; i < m; ++i) {
    src << "    zb_" << idx(i) << " = 1.0d0 + za_" << idx(i) << "\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> terms;
    for (std::size_t j = 0; j < m; ++j) terms.push_back(nm.w2(i, j) + "/zb_" + idx(j));
    emit_wrapped(src, "    zc_" + idx(i) + " = exp(-(", terms, " + ",
                 ") - " + nm.b2(i) + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    src << "    zd_" << idx(i) << " = " << nm.w3(i) << "*zc_" << idx(i)
        << "/(1.0d0 + zc_" << idx(i) << ")**2\n";
  }
  for (std::size_t i = 0; i < m; ++i) {
    src << "    ze_" << idx(i) << " = za_" << idx(i) << "/zb_" << idx(i) << "**2\n";
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::string> terms;
    for (std::size_t j = 0; j < n; ++j) terms.push_back(nm.w2(j, i) + "*zd_" + idx(j));
    emit_wrapped(src, "    zf_" + idx(i) + " = (", terms, " + ", ")*ze_" + idx(i));
  }
  {
    std::vector<std::string> terms;
    for (std::size_t i = 0; i < n; ++i)
      terms.push_back(nm.w3(i) + "/(1.0d0 + zc_" + idx(i) + ")");
    terms.push_back("b3");
    emit_wrapped(src, "    s = ", terms, " + ", "");
  }
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<std::string> terms;
    for (std::size_t j = 0; j < m; ++j) terms.push_back(nm.w1(j, k) + "*zf_" + idx(j));
    emit_wrapped(src, "    ds" + std::to_string(k + 1) + " = ", terms, " + ", "");
  }
  src << "    yield(km) = (sig_max - sig_min)*s + sig_min\n"
      << "    dyieldDeqps(km, 1) = ds1*(sig_max - sig_min)/(ep_max - ep_min)\n"
      << "    dyieldDeqps(km, 2) = ds2*(sig_max - sig_min)/((lr_max - lr_min)*rate)\n"
      << "    dyieldDtemp(km) = ds3*(sig_max - sig_min)/(t_max - t_min)\n"
      << "  end do\n"
      << "end subroutine vuhard\n";

  const std::string text = src.str();
  std::istringstream check(text);
  std::string line;
  while (std::getline(check, line)) {
    if (line.size() > kMaxColumns) {
      throw StructuralError("emit_subroutine: line exceeds 132 columns: " + line);
    }
  }
  return text;
}

}  // namespace flowlaw
