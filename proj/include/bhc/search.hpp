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

#ifndef BHC_SEARCH_HPP
#define BHC_SEARCH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "bhc/recursion.hpp"
#include "bhc/tensor.hpp"
#include "bhc/verify.hpp"

namespace bhc {

struct search_result {
  verification_report report;
  std::vector<std::size_t> dims;
  /// Attaining coefficients, row-major. Imaginary parts are zero for real
  /// searches.
  std::vector<complex_t> tensor;
  /// Upper constant the ratio is compared with.
  double upper = 0.0;
  /// upper - ratio.
  double gap = 0.0;
  int restarts = 0;
  std::int64_t evaluations = 0;
  /// Restart that produced the best tensor.
  int best_restart = 0;
};

namespace detail {

inline constexpr int kComplexSearchRestarts = 8;
inline constexpr int kComplexReportRestarts = 32;

template <class T>
double search_ratio(const multilinear_form<T>& form, std::uint64_t seed,
                    int complex_restarts = kComplexSearchRestarts) {
  const double lhs = mixed_norm_lhs(form);
  if (lhs == 0.0) return 0.0;
  double norm = 0.0;
  if constexpr (is_complex_v<T>)
    norm = sup_norm_complex_lb(form, complex_restarts, seed);
  else
    norm = sup_norm_real(form);
  return lhs / norm;
}

inline std::vector<double> candidate_moves(double c) {
  std::vector<double> out = {1.0, -1.0};
  for (double step : {1.0, 0.1, 0.01}) {
    out.push_back(std::clamp(c + step, -1.0, 1.0));
    out.push_back(std::clamp(c - step, -1.0, 1.0));
  }
  return out;
}

inline std::vector<complex_t> candidate_moves(complex_t c) {
  std::vector<complex_t> out;
  const double r = std::abs(c);
  const double phase = r > 0.0 ? std::arg(c) : 0.0;
  out.push_back(std::polar(1.0, phase));
  out.push_back(std::polar(1.0, phase + std::numbers::pi));
  for (double step : {1.0, 0.1, 0.01}) {
    out.push_back(std::polar(std::clamp(r + step, 0.0, 1.0), phase));
    out.push_back(std::polar(std::clamp(r - step, 0.0, 1.0), phase));
  }
  for (double turn : {std::numbers::pi / 2, 0.1, 0.01}) {
    out.push_back(c * std::polar(1.0, turn));
    out.push_back(c * std::polar(1.0, -turn));
  }
  return out;
}

// The ratio is invariant under positive scaling; rescaling to max modulus 1
// keeps the +-1 moves within reach of every entry.
template <class T>
void normalize_max(multilinear_form<T>& form) {
  double peak = 0.0;
  for (const T& c : form.coeffs()) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return;
  for (std::size_t i = 0; i < form.size(); ++i) form[i] /= peak;
}

// Joint move: every nonzero entry to the unit circle, keeping its sign or
// phase. Single-entry moves stall where several vertex values tie.
template <class T>
void round_to_unimodular(multilinear_form<T>& form) {
  for (std::size_t i = 0; i < form.size(); ++i) {
    const double r = std::abs(form[i]);
    if (r > 0.0) form[i] /= r;
  }
}

// One restart: coordinate sweeps, taking the best improving move per entry,
// until a sweep makes no progress or the evaluation cap is reached.
template <class T>
double hill_climb(multilinear_form<T>& form, std::int64_t cap,
                  std::uint64_t seed, std::int64_t& used) {
  double best = search_ratio(form, seed);
  ++used;
  bool improved = true;
  while (improved && used < cap) {
    improved = false;
    normalize_max(form);
    for (std::size_t i = 0; i < form.size() && used < cap; ++i) {
      const T original = form[i];
      T best_value = original;
      for (const T& cand : candidate_moves(original)) {
        if (used >= cap) break;
        if (cand == original) continue;
        form[i] = cand;
        const double r = search_ratio(form, seed);
        ++used;
        if (r > best * (1.0 + 1e-12)) {
          best = r;
          best_value = cand;
          improved = true;
        }
      }
      form[i] = best_value;
    }
    if (used < cap) {
      multilinear_form<T> rounded = form;
      round_to_unimodular(rounded);
      const double r = search_ratio(rounded, seed);
      ++used;
      if (r > best * (1.0 + 1e-12)) {
        best = r;
        form = std::move(rounded);
        improved = true;
      }
    }
  }
  return best;
}

template <class T>
search_result run_search(int m, std::size_t n, std::int64_t budget,
                         std::uint64_t seed) {
  const std::vector<std::size_t> dims(static_cast<std::size_t>(m), n);
  const int restarts = static_cast<int>(std::max<std::int64_t>(1, budget / 1000));
  const std::int64_t cap = std::max<std::int64_t>(1, budget / restarts);

  std::mt19937_64 rng(seed);
  std::optional<multilinear_form<T>> best_form;
  double best_ratio = -1.0;
  int best_restart = 0;
  std::int64_t total = 0;
  for (int r = 0; r < restarts; ++r) {
    multilinear_form<T> form = random_form<T>(dims, rng);
    std::int64_t used = 0;
    double ratio = hill_climb(form, cap, seed + static_cast<std::uint64_t>(r), used);
    total += used;
    // A weak complex denominator can be exploited by the climb; selection
    // uses the reporting oracle instead.
    if constexpr (is_complex_v<T>)
      ratio = search_ratio(form, seed, kComplexReportRestarts);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_form = form;
      best_restart = r;
    }
  }

  search_result out;
  out.dims = dims;
  out.restarts = restarts;
  out.evaluations = total;
  out.best_restart = best_restart;
  out.tensor.assign(best_form->coeffs().begin(), best_form->coeffs().end());
  return out;
}

}  // namespace detail

/// Random-restart hill climbing for large mixed_norm_lhs / sup norm over
/// m-linear forms on l_inf^N. Real searches report a certified lower bound
/// on the optimal constant; complex ones are diagnostic.
inline search_result extremal_search(int m, std::size_t n, scalar_field field,
                                     std::int64_t budget, std::uint64_t seed) {
  if (m < 1) throw std::domain_error("extremal_search: m must be >= 1");
  if (n < 1) throw std::domain_error("extremal_search: N must be >= 1");
  if (budget < 1) throw std::domain_error("extremal_search: budget must be >= 1");
  if (static_cast<std::size_t>(m - 1) * n > kMaxVertexBits)
    throw std::length_error("extremal_search: more than 2^24 sign vertices");

  constant_record upper;
  if (m == 1) {
    upper.m = 1;
    upper.field = field;
    upper.strat = strategy::best;
    upper.value = 1.0;
    upper.exact = exact_form{};
    upper.symbolic = "1";
  } else {
    upper = best_constant(m, field);
  }

  search_result out = field == scalar_field::real
                          ? detail::run_search<double>(m, n, budget, seed)
                          : detail::run_search<complex_t>(m, n, budget, seed);
  out.upper = upper.value;
  verification_report& r = out.report;
  r.check = "search";
  r.seed = seed;
  r.constant_used = constant_ref::from(upper);

  double norm = 0.0;
  if (field == scalar_field::real) {
    // Recompute with the exact oracle.
    std::vector<double> coeffs;
    for (const complex_t& c : out.tensor) coeffs.push_back(c.real());
    const real_form best(out.dims, coeffs);
    norm = sup_norm_real(best);
    r.lhs = mixed_norm_lhs(best);
    r.digest = detail::digest_builder().add("search").add(best).hex();
  } else {
    const complex_form best(out.dims, out.tensor);
    norm = sup_norm_complex_lb(best, detail::kComplexReportRestarts, seed);
    r.lhs = mixed_norm_lhs(best);
    r.certified = false;
    r.digest = detail::digest_builder().add("search").add(best).hex();
  }
  r.rhs = upper.value * norm;
  detail::finish_ratio(r, norm);
  r.pass = r.lhs <= r.rhs + detail::additive_slack(r.rhs);
  out.gap = out.upper - r.ratio;
  return out;
}

}  // namespace bhc

#endif  // BHC_SEARCH_HPP
