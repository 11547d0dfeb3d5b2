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

#ifndef BHC_TENSOR_HPP
#define BHC_TENSOR_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "bhc/common.hpp"

namespace bhc {

using complex_t = std::complex<double>;

template <class T>
inline constexpr bool is_complex_v = std::is_same_v<T, complex_t>;

template <class T>
constexpr scalar_field field_of() {
  return is_complex_v<T> ? scalar_field::complex : scalar_field::real;
}

namespace detail {

template <class T>
bool is_finite(const T& v) {
  if constexpr (is_complex_v<T>)
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  else
    return std::isfinite(v);
}

}  // namespace detail

/// An m-linear form on l_inf^{N_1} x ... x l_inf^{N_m}, stored as its dense
/// coefficient tensor U(e_{i_1}, ..., e_{i_m}) in row-major order (the last
/// slot varies fastest).
template <class T>
class multilinear_form {
 public:
  using scalar_type = T;

  multilinear_form(std::vector<std::size_t> dims, std::vector<T> coeffs)
      : dims_(std::move(dims)), coeffs_(std::move(coeffs)) {
    if (dims_.empty())
      throw std::invalid_argument("multilinear_form: order must be >= 1");
    std::size_t size = 1;
    for (std::size_t n : dims_) {
      if (n == 0)
        throw std::invalid_argument("multilinear_form: dimensions must be >= 1");
      size *= n;
    }
    if (size != coeffs_.size())
      throw std::invalid_argument(
          "multilinear_form: coefficient count does not match dimensions");
    for (const T& c : coeffs_) {
      if (!detail::is_finite(c))
        throw std::invalid_argument("multilinear_form: non-finite coefficient");
    }
  }

  static multilinear_form zeros(std::vector<std::size_t> dims) {
    std::size_t size = 1;
    for (std::size_t n : dims) size *= n;
    return multilinear_form(std::move(dims), std::vector<T>(size, T{}));
  }

  static constexpr scalar_field field() { return field_of<T>(); }

  [[nodiscard]] std::size_t order() const { return dims_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& dims() const { return dims_; }
  [[nodiscard]] std::span<const T> coeffs() const { return coeffs_; }
  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }

  T& operator[](std::size_t flat) { return coeffs_[flat]; }
  const T& operator[](std::size_t flat) const { return coeffs_[flat]; }

  [[nodiscard]] std::size_t flat_index(std::span<const std::size_t> idx) const {
    if (idx.size() != dims_.size())
      throw std::invalid_argument("multilinear_form: index rank mismatch");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (idx[k] >= dims_[k])
        throw std::out_of_range("multilinear_form: index out of range");
      flat = flat * dims_[k] + idx[k];
    }
    return flat;
  }

  [[nodiscard]] const T& at(std::span<const std::size_t> idx) const {
    return coeffs_[flat_index(idx)];
  }

  [[nodiscard]] multilinear_form scaled(double t) const {
    std::vector<T> out(coeffs_);
    for (T& c : out) c *= t;
    return multilinear_form(dims_, std::move(out));
  }

  /// Slot k of the result is slot perm[k] of this form.
  [[nodiscard]] multilinear_form permuted(
      std::span<const std::size_t> perm) const {
    const std::size_t m = order();
    if (perm.size() != m)
      throw std::invalid_argument("permuted: permutation size mismatch");
    std::vector<bool> used(m, false);
    std::vector<std::size_t> new_dims(m);
    for (std::size_t k = 0; k < m; ++k) {
      if (perm[k] >= m || used[perm[k]])
        throw std::invalid_argument("permuted: not a permutation");
      used[perm[k]] = true;
      new_dims[k] = dims_[perm[k]];
    }
    multilinear_form out = zeros(new_dims);
    std::vector<std::size_t> old_idx(m, 0);
    std::vector<std::size_t> new_idx(m, 0);
    for (std::size_t flat = 0; flat < coeffs_.size(); ++flat) {
      for (std::size_t k = 0; k < m; ++k) new_idx[k] = old_idx[perm[k]];
      out.coeffs_[out.flat_index(new_idx)] = coeffs_[flat];
      for (std::size_t k = m; k-- > 0;) {
        if (++old_idx[k] < dims_[k]) break;
        old_idx[k] = 0;
      }
    }
    return out;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<T> coeffs_;
};

using real_form = multilinear_form<double>;
using complex_form = multilinear_form<complex_t>;

inline complex_form to_complex(const real_form& f) {
  std::vector<complex_t> c(f.coeffs().begin(), f.coeffs().end());
  return complex_form(f.dims(), std::move(c));
}

/// Vectors x_1..x_n of l_inf^N.
template <class T>
struct vector_family {
  std::size_t dim = 0;
  std::vector<std::vector<T>> vectors;

  vector_family() = default;
  vector_family(std::size_t n, std::vector<std::vector<T>> v)
      : dim(n), vectors(std::move(v)) {
    for (const auto& x : vectors) {
      if (x.size() != dim)
        throw std::invalid_argument("vector_family: vector length mismatch");
      for (const T& c : x) {
        if (!detail::is_finite(c))
          throw std::invalid_argument("vector_family: non-finite entry");
      }
    }
  }

  static vector_family canonical_basis(std::size_t n) {
    std::vector<std::vector<T>> v(n, std::vector<T>(n, T{}));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = T{1};
    return vector_family(n, std::move(v));
  }

  [[nodiscard]] vector_family scaled(double t) const {
    vector_family out = *this;
    for (auto& x : out.vectors)
      for (T& c : x) c *= t;
    return out;
  }
};

// Seeded generators. Explicit bit manipulation keeps the streams identical
// across standard library implementations.

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on [-1, 1).
inline double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * uniform01(rng) - 1.0;
}

/// Uniform on (0, 1].
inline double uniform_positive(std::mt19937_64& rng) {
  return 1.0 - uniform01(rng);
}

/// Uniform on the closed unit disk.
inline complex_t uniform_disk(std::mt19937_64& rng) {
  const double r = std::sqrt(uniform01(rng));
  const double theta = 2.0 * std::numbers::pi * uniform01(rng);
  return std::polar(r, theta);
}

inline complex_t random_phase(std::mt19937_64& rng) {
  return std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
}

/// Coefficients uniform on [-1, 1] (real) or on the unit disk (complex).
template <class T>
multilinear_form<T> random_form(std::vector<std::size_t> dims,
                                std::mt19937_64& rng) {
  multilinear_form<T> f = multilinear_form<T>::zeros(std::move(dims));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if constexpr (is_complex_v<T>)
      f[i] = uniform_disk(rng);
    else
      f[i] = uniform_pm1(rng);
  }
  return f;
}

/// Coefficients drawn from {-1, +1}.
inline real_form random_sign_form(std::vector<std::size_t> dims,
                                  std::mt19937_64& rng) {
  real_form f = real_form::zeros(std::move(dims));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = (rng() >> 63) ? 1.0 : -1.0;
  return f;
}

/// Matrix with entries uniform on (0, 1], as an order-2 form.
inline real_form random_positive_matrix(std::size_t rows, std::size_t cols,
                                        std::mt19937_64& rng) {
  real_form f = real_form::zeros({rows, cols});
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = uniform_positive(rng);
  return f;
}

template <class T>
vector_family<T> random_family(std::size_t dim, std::size_t count,
                               std::mt19937_64& rng) {
  std::vector<std::vector<T>> v(count, std::vector<T>(dim));
  for (auto& x : v) {
    for (T& c : x) {
      if constexpr (is_complex_v<T>)
        c = uniform_disk(rng);
      else
        c = uniform_pm1(rng);
    }
  }
  return vector_family<T>(dim, std::move(v));
}

/// Littlewood's bilinear form (1, 1; 1, -1) placed in the leading 2x2 block
/// of an N x N form, N >= 2.
inline real_form littlewood_form(std::size_t n = 2) {
  if (n < 2) throw std::invalid_argument("littlewood_form: N must be >= 2");
  real_form f = real_form::zeros({n, n});
  f[0] = 1.0;
  f[1] = 1.0;
  f[n] = 1.0;
  f[n + 1] = -1.0;
  return f;
}

}  // namespace bhc

#endif  // BHC_TENSOR_HPP
