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

#include "flowlaw/dataset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "flowlaw/error.hpp"

namespace flowlaw {

namespace {

constexpr std::array<double, 6> kGridRates{1.0, 10.0, 50.0, 500.0, 5000.0,
                                           50000.0};
constexpr std::array<double, 6> kGridTemperatures{20.0,  100.0, 200.0,
                                                  300.0, 400.0, 500.0};
constexpr std::size_t kGridStrains = 70;

constexpr const char* kBaseHeader = "eps_p,rate,T,sigma";
constexpr const char* kDerivHeader = "eps_p,rate,T,sigma,dsde,dsdr,dsdT";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& field, std::size_t line,
                    const char* column) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE) {
    throw FormatError("csv line " + std::to_string(line) + ": column " +
                      column + ": malformed number '" + field + "'");
  }
  return v;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

void Dataset::validate() const {
  const std::size_t n = eps_p.size();
  if (rate.size() != n || T.size() != n || sigma.size() != n ||
      (!derivs.empty() && derivs.size() != n)) {
    throw FormatError("dataset: columns have unequal lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool finite = std::isfinite(eps_p[i]) && std::isfinite(rate[i]) &&
                        std::isfinite(T[i]) && std::isfinite(sigma[i]);
    if (!finite) {
      throw FormatError("dataset: non-finite entry in row " +
                        std::to_string(i));
    }
    if (rate[i] <= 0.0) {
      throw FormatError("dataset: rate must be > 0 in row " +
                        std::to_string(i));
    }
    if (!derivs.empty()) {
      const FlowDerivatives& d = derivs[i];
      if (!std::isfinite(d.d_eps) || !std::isfinite(d.d_rate) ||
          !std::isfinite(d.d_T)) {
        throw FormatError("dataset: non-finite derivative in row " +
                          std::to_string(i));
      }
    }
  }
}

Dataset generate_training_grid(const JohnsonCookParams& p) {
  p.validate();
  Dataset d;
  const std::size_t n =
      kGridStrains * kGridRates.size() * kGridTemperatures.size();
  d.eps_p.reserve(n);
  d.rate.reserve(n);
  d.T.reserve(n);
  d.sigma.reserve(n);
  for (std::size_t i = 0; i < kGridStrains; ++i) {
    const double eps =
        static_cast<double>(i) / static_cast<double>(kGridStrains - 1);
    for (double rate : kGridRates) {
      for (double T : kGridTemperatures) {
        d.eps_p.push_back(eps);
        d.rate.push_back(rate);
        d.T.push_back(T);
        d.sigma.push_back(jc_flow_stress(p, eps, rate, T));
      }
    }
  }
  return d;
}

Dataset generate_test_set(const JohnsonCookParams& p, std::size_t count,
                          std::uint64_t seed, RateSampling sampling,
                          const SamplingDomain& domain) {
  p.validate();
  if (count == 0) throw DomainError("generate_test_set: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lr_lo = std::log(domain.rate_min);
  const double lr_hi = std::log(domain.rate_max);

  Dataset d;
  for (std::size_t i = 0; i < count; ++i) {
    const double eps =
        domain.eps_p_min + (domain.eps_p_max - domain.eps_p_min) * unit(rng);
    const double u = unit(rng);
    const double rate =
        sampling == RateSampling::kLogUniform
            ? std::exp(lr_lo + (lr_hi - lr_lo) * u)
            : domain.rate_min + (domain.rate_max - domain.rate_min) * u;
    const double T = domain.T_min + (domain.T_max - domain.T_min) * unit(rng);
    d.eps_p.push_back(eps);
    d.rate.push_back(rate);
    d.T.push_back(T);
    d.sigma.push_back(jc_flow_stress(p, eps, rate, T));
    d.derivs.push_back(jc_derivatives(p, eps, rate, T));
  }
  return d;
}

NormalizationRanges ranges_from_dataset(const Dataset& data,
                                        double eps_dot_ref) {
  data.validate();
  if (data.size() == 0) throw FormatError("dataset: empty");
  const auto [e_lo, e_hi] = std::minmax_element(data.eps_p.begin(), data.eps_p.end());
  const auto [r_lo, r_hi] = std::minmax_element(data.rate.begin(), data.rate.end());
  const auto [t_lo, t_hi] = std::minmax_element(data.T.begin(), data.T.end());
  const auto [s_lo, s_hi] = std::minmax_element(data.sigma.begin(), data.sigma.end());
  NormalizationRanges r;
  r.eps_p_min = *e_lo;
  r.eps_p_max = *e_hi;
  r.log_rate_min = std::log(*r_lo / eps_dot_ref);
  r.log_rate_max = std::log(*r_hi / eps_dot_ref);
  r.T_min = *t_lo;
  r.T_max = *t_hi;
  r.sigma_min = *s_lo;
  r.sigma_max = *s_hi;
  r.eps_dot_ref = eps_dot_ref;
  r.validate();
  return r;
}

std::uint64_t dataset_hash(const Dataset& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= bits & 0xffU;
      h *= 0x100000001b3ULL;
      bits >>= 8;
    }
  };
  for (const auto* column : {&data.eps_p, &data.rate, &data.T, &data.sigma})
    for (double v : *column) mix(v);
  for (const FlowDerivatives& d : data.derivs) {
    mix(d.d_eps);
    mix(d.d_rate);
    mix(d.d_T);
  }
  return h;
}

void write_csv(const Dataset& data, std::ostream& out) {
  data.validate();
  const bool derivs = data.has_derivatives();
  out << (derivs ? kDerivHeader : kBaseHeader) << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << format_double(data.eps_p[i]) << ',' << format_double(data.rate[i])
        << ',' << format_double(data.T[i]) << ','
        << format_double(data.sigma[i]);
    if (derivs) {
      out << ',' << format_double(data.derivs[i].d_eps) << ','
          << format_double(data.derivs[i].d_rate) << ','
          << format_double(data.derivs[i].d_T);
    }
    out << '\n';
  }
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(data, out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Dataset read_csv(std::istream& in) {
  static constexpr const char* kColumns[] = {"eps_p", "rate", "T",   "sigma",
                                             "dsde",  "dsdr", "dsdT"};
  std::string line;
  if (!std::getline(in, line)) throw FormatError("csv: missing header");
  line = strip_cr(line);
  bool derivs = false;
  if (line == kDerivHeader) {
    derivs = true;
  } else if (line != kBaseHeader) {
    throw FormatError("csv: unexpected header '" + line + "', expected '" +
                      kBaseHeader + "[,dsde,dsdr,dsdT]'");
  }
  const std::size_t ncols = derivs ? 7 : 4;

  Dataset d;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::array<double, 7> v{};
    std::size_t c = 0;
    while (std::getline(ss, field, ',')) {
      if (c >= ncols) {
        throw FormatError("csv line " + std::to_string(lineno) +
                          ": too many columns");
      }
      v[c] = parse_double(field, lineno, kColumns[c]);
      ++c;
    }
    if (c != ncols) {
      throw FormatError("csv line " + std::to_string(lineno) + ": expected " +
                        std::to_string(ncols) + " columns, got " +
                        std::to_string(c));
    }
    d.eps_p.push_back(v[0]);
    d.rate.push_back(v[1]);
    d.T.push_back(v[2]);
    d.sigma.push_back(v[3]);
    if (derivs) d.derivs.push_back({v[4], v[5], v[6]});
  }
  d.validate();
  return d;
}

Dataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_csv(in);
}

}  // namespace flowlaw
