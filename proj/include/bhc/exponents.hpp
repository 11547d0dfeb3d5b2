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

#ifndef BHC_EXPONENTS_HPP
#define BHC_EXPONENTS_HPP

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bhc/rational.hpp"

namespace bhc {

namespace detail {

template <class T>
void check_blei_domain(const T& q, const T& x, const T& y) {
  if (!(x >= T(1)) || !(y >= T(1)))
    throw std::domain_error("blei exponents: x and y must be >= 1");
  if (!(q > std::max(x, y)))
    throw std::domain_error("blei exponents: q must exceed max(x, y)");
}

}  // namespace detail

/// Mixed exponent w(x, y) = (q^2 (x+y) - 2qxy) / (q^2 - xy).
///
/// Works for double and for bhc::rational; the rational instantiation gives
/// the exact value used by derivation traces.
template <class T>
T blei_w(const T& q, const T& x, const T& y) {
  detail::check_blei_domain(q, x, y);
  const T q2 = q * q;
  return (q2 * (x + y) - T(2) * q * x * y) / (q2 - x * y);
}

/// Weight f(x, y) = (q^2 x - qxy) / (q^2 (x+y) - 2qxy). f(x,y) + f(y,x) = 1.
template <class T>
T blei_f(const T& q, const T& x, const T& y) {
  detail::check_blei_domain(q, x, y);
  const T q2 = q * q;
  return (q2 * x - q * x * y) / (q2 * (x + y) - T(2) * q * x * y);
}

enum class split_kind { even_halving, odd_split, one_step, two_step };

inline std::string to_string(split_kind k) {
  switch (k) {
    case split_kind::even_halving: return "even-halving";
    case split_kind::odd_split: return "odd-split";
    case split_kind::one_step: return "one-step";
    case split_kind::two_step: return "two-step";
  }
  return "?";
}

/// Blei parameters for building level m out of blocks of sizes
/// (first, second), first + second = m.
///
/// s1 = 2a/(a+1) and s2 = 2b/(b+1) are the mixed exponents of the two
/// blocks; with q = 2 this always gives w(s1, s2) = 2m/(m+1).
struct exponent_split {
  int m = 0;
  int first = 0;
  int second = 0;
  rational q{2};
  rational s1;
  rational s2;
  rational w;
  rational f1;  ///< f(s1, s2)
  rational f2;  ///< f(s2, s1)
  split_kind kind = split_kind::even_halving;

  [[nodiscard]] double q_value() const { return q.to_double(); }
  [[nodiscard]] double s1_value() const { return s1.to_double(); }
  [[nodiscard]] double s2_value() const { return s2.to_double(); }
  [[nodiscard]] double w_value() const { return w.to_double(); }
  [[nodiscard]] double f1_value() const { return f1.to_double(); }
  [[nodiscard]] double f2_value() const { return f2.to_double(); }
};

/// 2k/(k+1), the Bohnenblust-Hille exponent of level k.
inline rational bh_exponent(int k) { return rational(2 * k, k + 1); }

/// Split of level m into blocks (first, m - first) with q = 2.
inline exponent_split block_split(int m, int first, split_kind kind) {
  const int second = m - first;
  if (first < 1 || second < 1)
    throw std::domain_error("block_split: both blocks must be non-empty");
  exponent_split s;
  s.m = m;
  s.first = first;
  s.second = second;
  s.q = rational(2);
  s.s1 = bh_exponent(first);
  s.s2 = bh_exponent(second);
  s.w = blei_w(s.q, s.s1, s.s2);
  s.f1 = blei_f(s.q, s.s1, s.s2);
  s.f2 = blei_f(s.q, s.s2, s.s1);
  s.kind = kind;
  return s;
}

inline exponent_split even_split(int m) {
  if (m < 2 || m % 2 != 0)
    throw std::domain_error("even_split: m must be even and >= 2");
  return block_split(m, m / 2, split_kind::even_halving);
}

inline exponent_split odd_split(int m) {
  if (m < 3 || m % 2 == 0)
    throw std::domain_error("odd_split: m must be odd and >= 3");
  return block_split(m, (m - 1) / 2, split_kind::odd_split);
}

/// (1, m-1) split behind the one-level-at-a-time recursion.
inline exponent_split one_step_split(int m) {
  if (m < 2) throw std::domain_error("one_step_split: m must be >= 2");
  return block_split(m, 1, split_kind::one_step);
}

/// (2, m-2) split behind the two-levels-at-a-time recursion.
inline exponent_split two_step_split(int m) {
  if (m < 3) throw std::domain_error("two_step_split: m must be >= 3");
  return block_split(m, 2, split_kind::two_step);
}

}  // namespace bhc

#endif  // BHC_EXPONENTS_HPP
