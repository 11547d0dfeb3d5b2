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

#ifndef BHC_VERIFY_HPP
#define BHC_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bhc/exponents.hpp"
#include "bhc/recursion.hpp"
#include "bhc/special_fn.hpp"
#include "bhc/tensor.hpp"

namespace bhc {

inline constexpr double kCertifiedSlack = 1e-9;
inline constexpr double kKhinchineSlack = 1e-12;
inline constexpr std::size_t kMaxRademacherLength = 20;
inline constexpr std::size_t kMaxVertexBits = 24;

/// The constant a check was run against.
struct constant_ref {
  int m = 0;
  scalar_field field = scalar_field::real;
  strategy strat = strategy::best;
  std::optional<strategy> winner;
  double value = 0.0;

  static constant_ref from(const constant_record& r) {
    return {r.m, r.field, r.strat, r.winner, r.value};
  }
};

struct verification_report {
  std::string check;
  std::string digest;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  /// Lower side of two-sided checks (Khinchine).
  std::optional<double> lower;
  std::optional<constant_ref> constant_used;
  bool pass = true;
  /// False for diagnostic checks whose verdict must not fail a run.
  bool certified = true;
  std::uint64_t seed = 0;
  int trials = 1;
};

namespace detail {

/// FNV-1a over the bytes of the check inputs.
class digest_builder {
 public:
  digest_builder& add(std::string_view s) {
    for (unsigned char c : s) mix(c);
    mix(0);
    return *this;
  }
  digest_builder& add(double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char c : bytes) mix(c);
    return *this;
  }
  digest_builder& add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(v >> (8 * i)));
    return *this;
  }
  digest_builder& add(const complex_t& v) { return add(v.real()).add(v.imag()); }

  template <class T>
  digest_builder& add(const multilinear_form<T>& f) {
    for (std::size_t n : f.dims()) add(static_cast<std::uint64_t>(n));
    for (const T& c : f.coeffs()) add(c);
    return *this;
  }

  [[nodiscard]] std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(state_));
    return buf;
  }

 private:
  void mix(unsigned char c) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline double additive_slack(double rhs) {
  return kCertifiedSlack * std::max(1.0, std::abs(rhs));
}

template <class T>
double l2_norm(std::span<const T> a) {
  double s = 0.0;
  for (const T& x : a) s += std::norm(x);
  return std::sqrt(s);
}

// Contracts slots 1..m-1 of a form against sign vectors and keeps the best
// l1 reduction over slot 0.
template <class T>
class vertex_search {
 public:
  explicit vertex_search(const multilinear_form<T>& form)
      : dims_(form.dims()), buf_(form.order()), signs_(form.order()) {
    buf_.back().assign(form.coeffs().begin(), form.coeffs().end());
    for (std::size_t k = 0; k < dims_.size(); ++k) signs_[k].assign(dims_[k], 1);
  }

  double run() {
    descend(dims_.size() - 1);
    return best_;
  }

  /// Maximizing signs for slots 1..m-1; slot 0 holds ones.
  [[nodiscard]] const std::vector<std::vector<int>>& argmax() const {
    return best_signs_;
  }

 private:
  void descend(std::size_t k) {
    if (k == 0) {
      double v = 0.0;
      for (const T& c : buf_[0]) v += std::abs(c);
      if (v > best_) {
        best_ = v;
        best_signs_ = signs_;
      }
      return;
    }
    const std::size_t n = dims_[k];
    const std::size_t outer = buf_[k].size() / n;
    buf_[k - 1].resize(outer);
    // The first sign is fixed: |U| is invariant under a global flip.
    const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      for (std::size_t j = 1; j < n; ++j)
        signs_[k][j] = ((mask >> (j - 1)) & 1U) ? -1 : 1;
      for (std::size_t o = 0; o < outer; ++o) {
        T acc{};
        const T* row = buf_[k].data() + o * n;
        for (std::size_t j = 0; j < n; ++j)
          acc += signs_[k][j] > 0 ? row[j] : -row[j];
        buf_[k - 1][o] = acc;
      }
      descend(k - 1);
    }
  }

  const std::vector<std::size_t>& dims_;
  std::vector<std::vector<T>> buf_;
  std::vector<std::vector<int>> signs_;
  std::vector<std::vector<int>> best_signs_;
  double best_ = -1.0;
};

template <class T>
void check_vertex_budget(const multilinear_form<T>& form) {
  std::size_t bits = 0;
  for (std::size_t k = 1; k < form.order(); ++k) bits += form.dims()[k];
  if (bits > kMaxVertexBits)
    throw std::length_error("sup norm: more than 2^24 sign vertices");
}

// Partial derivative of U at x along slot k: g_i = U(x_1, .., e_i, .., x_m).
inline std::vector<complex_t> partial(const complex_form& form,
                                      const std::vector<std::vector<complex_t>>& x,
                                      std::size_t k) {
  const auto& dims = form.dims();
  const std::size_t m = dims.size();
  std::vector<complex_t> g(dims[k], complex_t{});
  std::vector<std::size_t> idx(m, 0);
  for (std::size_t flat = 0; flat < form.size(); ++flat) {
    complex_t w = form[flat];
    for (std::size_t l = 0; l < m; ++l)
      if (l != k) w *= x[l][idx[l]];
    g[idx[k]] += w;
    for (std::size_t l = m; l-- > 0;) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return g;
}

// Block coordinate ascent: each slot in turn is replaced by its best
// unimodular response conj(g)/|g|, which raises |U(x)| to ||g||_1.
inline double phase_ascent(const complex_form& form,
                           std::vector<std::vector<complex_t>> x) {
  double value = 0.0;
  for (int sweep = 0; sweep < 1000; ++sweep) {
    const double before = value;
    for (std::size_t k = 0; k < form.order(); ++k) {
      const std::vector<complex_t> g = partial(form, x, k);
      double l1 = 0.0;
      for (const complex_t& gi : g) l1 += std::abs(gi);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = std::abs(g[i]);
        if (r > 0.0) x[k][i] = std::conj(g[i]) / r;
      }
      value = std::max(value, l1);
    }
    if (value <= before * (1.0 + 1e-15)) break;
  }
  return value;
}

template <class T>
std::vector<T> apply_families(const multilinear_form<T>& form,
                              std::span<const vector_family<T>> families,
                              std::vector<std::size_t>& out_dims) {
  std::vector<std::size_t> dims = form.dims();
  std::vector<T> data(form.coeffs().begin(), form.coeffs().end());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const vector_family<T>& fam = families[k];
    std::size_t outer = 1;
    for (std::size_t l = 0; l < k; ++l) outer *= dims[l];
    std::size_t inner = 1;
    for (std::size_t l = k + 1; l < dims.size(); ++l) inner *= dims[l];
    const std::size_t n_in = dims[k];
    const std::size_t n_out = fam.vectors.size();
    std::vector<T> next(outer * n_out * inner, T{});
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t j = 0; j < n_out; ++j)
        for (std::size_t i = 0; i < n_in; ++i) {
          const T w = fam.vectors[j][i];
          if (w == T{}) continue;
          const T* src = data.data() + (o * n_in + i) * inner;
          T* dst = next.data() + (o * n_out + j) * inner;
          for (std::size_t r = 0; r < inner; ++r) dst[r] += w * src[r];
        }
    data = std::move(next);
    dims[k] = n_out;
  }
  out_dims = std::move(dims);
  return data;
}

template <class T>
double lp_norm(std::span<const T> v, double p) {
  double s = 0.0;
  for (const T& c : v) s += std::pow(std::abs(c), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace detail

/// ( 2^{-N} sum_{eps in {+-1}^N} |sum_n a_n eps_n|^p )^{1/p}, by enumeration.
template <class T>
double rademacher_moment(std::span<const T> a, double p) {
  if (a.size() > kMaxRademacherLength)
    throw std::length_error("rademacher_moment: at most 20 coefficients");
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::domain_error("rademacher_moment: p must be positive");
  if (a.empty()) return 0.0;
  // eps_0 = +1 fixed; the flipped half contributes the same moduli.
  const std::size_t n = a.size();
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    T s = a[0];
    for (std::size_t j = 1; j < n; ++j)
      s += ((mask >> (j - 1)) & 1U) ? -a[j] : a[j];
    sum += std::pow(std::abs(s), p);
  }
  return std::pow(sum / static_cast<double>(patterns), 1.0 / p);
}

inline double rademacher_moment(std::initializer_list<double> a, double p) {
  return rademacher_moment(std::span<const double>(a.begin(), a.size()), p);
}

/// A_p ||a||_2 <= moment <= B_p ||a||_2 with 1e-12 relative slack.
template <class T>
verification_report khinchine_check(std::span<const T> a, double p) {
  const double moment = rademacher_moment(a, p);
  const double norm = detail::l2_norm(a);
  verification_report r;
  r.check = "khinchine";
  detail::digest_builder d;
  d.add("khinchine").add(p);
  for (const T& x : a) d.add(x);
  r.digest = d.hex();
  r.lhs = moment;
  r.rhs = khinchine_B(p) * norm;
  r.lower = khinchine_A(p).value * norm;
  r.ratio = norm > 0.0 ? moment / norm : 0.0;
  r.pass = *r.lower * (1.0 - kKhinchineSlack) <= moment &&
           moment <= r.rhs * (1.0 + kKhinchineSlack);
  return r;
}

/// Exact sup norm of a real form over the unit cube of l_inf.
inline double sup_norm_real(const real_form& form) {
  if (form.order() == 1) {
    double s = 0.0;
    for (double c : form.coeffs()) s += std::abs(c);
    return s;
  }
  detail::check_vertex_budget(form);
  detail::vertex_search<double> search(form);
  return search.run();
}

/// Lower bound on the sup norm of a complex form over the polydisk, from
/// phase ascent started at the best sign vertex and at random phases.
inline double sup_norm_complex_lb(const complex_form& form, int restarts,
                                  std::uint64_t seed) {
  const std::size_t m = form.order();
  if (m == 1) {
    double s = 0.0;
    for (const complex_t& c : form.coeffs()) s += std::abs(c);
    return s;
  }
  detail::check_vertex_budget(form);
  detail::vertex_search<complex_t> vertices(form);
  double best = vertices.run();

  std::vector<std::vector<complex_t>> x(m);
  for (std::size_t k = 0; k < m; ++k) {
    x[k].resize(form.dims()[k]);
    for (std::size_t i = 0; i < x[k].size(); ++i)
      x[k][i] = complex_t(vertices.argmax()[k][i], 0.0);
  }
  best = std::max(best, detail::phase_ascent(form, x));

  std::mt19937_64 rng(seed);
  for (int r = 0; r < restarts; ++r) {
    for (auto& slot : x)
      for (complex_t& c : slot) c = random_phase(rng);
    best = std::max(best, detail::phase_ascent(form, x));
  }
  return best;
}

/// ( sum |coeffs|^{2m/(m+1)} )^{(m+1)/(2m)}.
template <class T>
double mixed_norm_lhs(const multilinear_form<T>& form) {
  return detail::lp_norm(form.coeffs(),
                         bh_exponent(static_cast<int>(form.order())).to_double());
}

/// Same sum at an arbitrary exponent p.
template <class T>
double mixed_norm_at(const multilinear_form<T>& form, double p) {
  return detail::lp_norm(form.coeffs(), p);
}

namespace detail {

inline void finish_ratio(verification_report& r, double norm) {
  if (norm == 0.0) {
    if (r.lhs > 0.0)
      throw std::logic_error("bh_check: zero sup norm with nonzero coefficients");
    r.ratio = 0.0;
  } else {
    r.ratio = r.lhs / norm;
  }
}

}  // namespace detail

/// Certified check of mixed_norm_lhs <= C ||U|| for a real form.
inline verification_report bh_check(const real_form& form,
                                    const constant_record& constant) {
  verification_report r;
  r.check = "bh";
  r.digest = detail::digest_builder().add("bh").add(form).add(constant.value).hex();
  r.constant_used = constant_ref::from(constant);
  const double norm = sup_norm_real(form);
  r.lhs = mixed_norm_lhs(form);
  r.rhs = constant.value * norm;
  detail::finish_ratio(r, norm);
  r.pass = r.lhs <= r.rhs + detail::additive_slack(r.rhs);
  return r;
}

/// Diagnostic check for a complex form. The sup norm is only a lower bound, so
/// the ratio can overestimate and the report is never certified.
inline verification_report bh_check(const complex_form& form,
                                    const constant_record& constant,
                                    int restarts, std::uint64_t seed) {
  verification_report r;
  r.check = "bh-complex";
  r.digest =
      detail::digest_builder().add("bh-complex").add(form).add(constant.value).hex();
  r.constant_used = constant_ref::from(constant);
  r.certified = false;
  r.seed = seed;
  const double norm = sup_norm_complex_lb(form, restarts, seed);
  r.lhs = mixed_norm_lhs(form);
  r.rhs = constant.value * norm;
  detail::finish_ratio(r, norm);
  r.pass = r.lhs <= r.rhs + detail::additive_slack(r.rhs);
  return r;
}

/// ||(x_j)||_{w,1} on l_inf^N: the largest coordinate-wise absolute sum.
template <class T>
double weak1_norm(const vector_family<T>& fam) {
  double best = 0.0;
  for (std::size_t k = 0; k < fam.dim; ++k) {
    double s = 0.0;
    for (const auto& x : fam.vectors) s += std::abs(x[k]);
    best = std::max(best, s);
  }
  return best;
}

/// Multiple (p;1)-summing check of a real form against the given families.
inline verification_report multiple_summing_check(
    const real_form& form, std::span<const vector_family<double>> families,
    double p, const constant_record& constant) {
  if (families.size() != form.order())
    throw std::invalid_argument("multiple_summing_check: one family per slot");
  for (std::size_t k = 0; k < families.size(); ++k) {
    if (families[k].dim != form.dims()[k])
      throw std::invalid_argument(
          "multiple_summing_check: family dimension does not match slot");
  }
  if (!(p > 0.0)) throw std::domain_error("multiple_summing_check: p must be positive");

  verification_report r;
  r.check = "summing";
  detail::digest_builder d;
  d.add("summing").add(form).add(p).add(constant.value);
  for (const auto& fam : families)
    for (const auto& x : fam.vectors)
      for (double c : x) d.add(c);
  r.digest = d.hex();
  r.constant_used = constant_ref::from(constant);

  std::vector<std::size_t> dims;
  const std::vector<double> values = detail::apply_families(form, families, dims);
  r.lhs = detail::lp_norm(std::span<const double>(values), p);
  double scale = sup_norm_real(form);
  for (const auto& fam : families) scale *= weak1_norm(fam);
  r.rhs = constant.value * scale;
  detail::finish_ratio(r, scale);
  r.pass = r.lhs <= r.rhs + detail::additive_slack(r.rhs);
  return r;
}

/// Mixed-norm inequality for a positive matrix (an order-2 form).
inline verification_report blei_check(const real_form& matrix, double q,
                                      double s1, double s2) {
  if (matrix.order() != 2)
    throw std::invalid_argument("blei_check: expected a matrix");
  const double w = blei_w(q, s1, s2);
  const double f1 = blei_f(q, s1, s2);
  const double f2 = blei_f(q, s2, s1);
  const std::size_t rows = matrix.dims()[0];
  const std::size_t cols = matrix.dims()[1];
  for (double a : matrix.coeffs()) {
    if (!(a > 0.0)) throw std::domain_error("blei_check: entries must be positive");
  }

  double lhs_sum = 0.0;
  for (double a : matrix.coeffs()) lhs_sum += std::pow(a, w);

  double row_sum = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += std::pow(matrix[i * cols + j], q);
    row_sum += std::pow(s, s1 / q);
  }
  double col_sum = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += std::pow(matrix[i * cols + j], q);
    col_sum += std::pow(s, s2 / q);
  }

  verification_report r;
  r.check = "blei";
  r.digest = detail::digest_builder().add("blei").add(matrix).add(q).add(s1).add(s2).hex();
  r.lhs = std::pow(lhs_sum, 1.0 / w);
  r.rhs = std::pow(row_sum, f1 / s1) * std::pow(col_sum, f2 / s2);
  r.ratio = r.lhs / r.rhs;
  r.pass = r.lhs <= r.rhs * (1.0 + kCertifiedSlack);
  return r;
}

}  // namespace bhc

#endif  // BHC_VERIFY_HPP
