// Copyright 2026 The bhc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BHC_SPECIAL_FN_HPP
#define BHC_SPECIAL_FN_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "bhc/rational.hpp"

namespace bhc {

namespace detail {

inline constexpr int kZetaTerms = 48;

// zeta(k) - 1 for k = 2..kZetaTerms+1, by Euler-Maclaurin summation with the
// tail started at n = 10.
inline const std::array<double, kZetaTerms>& zeta_minus_one_table() {
  static const std::array<double, kZetaTerms> table = [] {
    constexpr int cutoff = 10;
    // B_{2j} / (2j)!
    constexpr std::array<double, 6> bernoulli_over_factorial = {
        1.0 / 6.0 / 2.0,
        -1.0 / 30.0 / 24.0,
        1.0 / 42.0 / 720.0,
        -1.0 / 30.0 / 40320.0,
        5.0 / 66.0 / 3628800.0,
        -691.0 / 2730.0 / 479001600.0,
    };
    std::array<double, kZetaTerms> out{};
    for (int idx = 0; idx < kZetaTerms; ++idx) {
      const double s = idx + 2;
      double tail = std::pow(cutoff, 1.0 - s) / (s - 1.0) +
                    0.5 * std::pow(cutoff, -s);
      double rising = s;  // s (s+1) ... (s+2j-2)
      for (int j = 1; j <= 6; ++j) {
        tail += bernoulli_over_factorial[j - 1] * rising *
                std::pow(cutoff, -s - 2.0 * j + 1.0);
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
      }
      double head = 0.0;
      for (int n = cutoff - 1; n >= 2; --n) head += std::pow(n, -s);
      out[idx] = head + tail;
    }
    return out;
  }();
  return table;
}

// ln Gamma(2 + z) for |z| <= 0.5 via
//   ln Gamma(2+z) = (1 - gamma) z + sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k.
inline double log_gamma_two_plus(double z) {
  const auto& zm1 = zeta_minus_one_table();
  double sum = 0.0;
  double zk = -z;  // (-z)^k, advanced before use
  for (int k = 2; k < kZetaTerms + 2; ++k) {
    zk *= -z;
    const double term = zm1[k - 2] * zk / k;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return (1.0 - std::numbers::egamma) * z + sum;
}

// Stirling series, accurate to double precision for x >= 10.
inline double log_gamma_stirling(double x) {
  constexpr std::array<double, 8> coeff = {
      1.0 / 12.0,           -1.0 / 360.0,       1.0 / 1260.0,
      -1.0 / 1680.0,        1.0 / 1188.0,       -691.0 / 360360.0,
      1.0 / 156.0,          -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (double c : coeff) {
    series += c * power;
    power *= inv2;
  }
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + series;
}

}  // namespace detail

/// Natural logarithm of the Gamma function for x > 0.
///
/// Relative error stays below 1e-12 on [0.5, 200]. Arguments near the zeros
/// of ln Gamma (x = 1, 2) go through a Taylor series around 2 so the result
/// keeps relative accuracy there too.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("log_gamma: argument must be positive and finite");
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  if (x < 1.5) return detail::log_gamma_two_plus(x - 1.0) - std::log1p(x - 1.0);
  if (x < 2.5) return detail::log_gamma_two_plus(x - 2.0);
  if (x >= 10.0) return detail::log_gamma_stirling(x);
  double shift = 0.0;
  while (x >= 2.5) {
    x -= 1.0;
    shift += std::log(x);
  }
  return shift + detail::log_gamma_two_plus(x - 2.0);
}

inline double gamma_fn(double x) { return std::exp(log_gamma(x)); }

/// Which closed form produced a lower Khinchine constant.
enum class khinchine_branch { dyadic_power, gamma_formula, unit };

inline std::string to_string(khinchine_branch b) {
  switch (b) {
    case khinchine_branch::dyadic_power: return "dyadic";
    case khinchine_branch::gamma_formula: return "gamma";
    case khinchine_branch::unit: return "unit";
  }
  return "?";
}

/// Optimal lower Khinchine constant A_p for Rademacher averages.
struct khinchine_lower {
  double p = 0.0;
  double value = 0.0;
  khinchine_branch branch = khinchine_branch::unit;
  /// Set when value = 2^r for an exact rational r (dyadic or unit branch
  /// with rational p).
  std::optional<rational> exponent;
};

/// Haagerup's optimal constants at one exponent.
struct haagerup_constants {
  double p = 0.0;
  double a_p = 0.0;
  double b_p = 0.0;
  khinchine_branch branch = khinchine_branch::unit;
};

/// 2^{1/2 - 1/p}.
inline double khinchine_dyadic_branch(double p) {
  return std::exp2(0.5 - 1.0 / p);
}

/// sqrt(2) (Gamma((p+1)/2) / sqrt(pi))^{1/p}.
inline double khinchine_gamma_branch(double p) {
  const double log_ratio =
      log_gamma((p + 1.0) / 2.0) - 0.5 * std::log(std::numbers::pi);
  return std::numbers::sqrt2 * std::exp(log_ratio / p);
}

/// Lower constant A_p = min of the two closed forms on (0, 2), 1 for p >= 2.
inline khinchine_lower khinchine_A(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::domain_error("khinchine_A: p must be positive and finite");
  if (p >= 2.0) return {p, 1.0, khinchine_branch::unit, rational{0}};
  const double dyadic = khinchine_dyadic_branch(p);
  const double via_gamma = khinchine_gamma_branch(p);
  if (dyadic <= via_gamma)
    return {p, dyadic, khinchine_branch::dyadic_power, std::nullopt};
  return {p, via_gamma, khinchine_branch::gamma_formula, std::nullopt};
}

/// Same as khinchine_A(double) but also carries the exact exponent
/// 1/2 - 1/p whenever the dyadic branch is selected.
inline khinchine_lower khinchine_A(const rational& p) {
  khinchine_lower out = khinchine_A(p.to_double());
  if (out.branch == khinchine_branch::dyadic_power)
    out.exponent = rational(1, 2) - rational(1) / p;
  return out;
}

/// Upper constant B_p: 1 on (0, 2], the Gamma closed form above 2.
inline double khinchine_B(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::domain_error("khinchine_B: p must be positive and finite");
  if (p <= 2.0) return 1.0;
  return khinchine_gamma_branch(p);
}

inline haagerup_constants haagerup(double p) {
  const khinchine_lower lower = khinchine_A(p);
  return {p, lower.value, khinchine_B(p), lower.branch};
}

/// Bound on A_{2,r}: 1 / A_r, for 1 <= r <= 2.
inline double a2r_bound(double r) {
  if (!(r >= 1.0 && r <= 2.0))
    throw std::domain_error("a2r_bound: r must lie in [1, 2]");
  return 1.0 / khinchine_A(r).value;
}

struct crossover {
  double p0 = 0.0;
  /// dyadic minus gamma branch at p0.
  double gap = 0.0;
};

/// Exponent where the dyadic and Gamma closed forms of A_p meet, located by
/// bisection on [1.5, 1.95]. Equivalently Gamma((p0+1)/2) = sqrt(pi)/2.
inline crossover crossover_p0() {
  auto diff = [](double p) {
    return khinchine_dyadic_branch(p) - khinchine_gamma_branch(p);
  };
  double lo = 1.5;   // dyadic smaller: diff < 0
  double hi = 1.95;  // gamma smaller: diff > 0
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (diff(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double p0 = 0.5 * (lo + hi);
  return {p0, diff(p0)};
}

}  // namespace bhc

#endif  // BHC_SPECIAL_FN_HPP
