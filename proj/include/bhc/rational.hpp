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

#ifndef BHC_RATIONAL_HPP
#define BHC_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bhc {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator, so equality is
/// structural. Arithmetic is carried out in 128-bit intermediates and throws
/// std::overflow_error when a reduced result does not fit in 64 bits.
class rational {
 public:
  constexpr rational() = default;
  constexpr rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT
  rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }

  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend rational operator+(const rational& a, const rational& b) {
    using i128 = __int128;
    return make(i128{a.num_} * b.den_ + i128{b.num_} * a.den_,
                i128{a.den_} * b.den_);
  }
  friend rational operator-(const rational& a, const rational& b) {
    using i128 = __int128;
    return make(i128{a.num_} * b.den_ - i128{b.num_} * a.den_,
                i128{a.den_} * b.den_);
  }
  friend rational operator*(const rational& a, const rational& b) {
    using i128 = __int128;
    return make(i128{a.num_} * b.num_, i128{a.den_} * b.den_);
  }
  friend rational operator/(const rational& a, const rational& b) {
    using i128 = __int128;
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return make(i128{a.num_} * b.den_, i128{a.den_} * b.num_);
  }
  rational operator-() const {
    if (num_ == std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("rational: negation overflow");
    rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  rational& operator+=(const rational& o) { return *this = *this + o; }
  rational& operator-=(const rational& o) { return *this = *this - o; }
  rational& operator*=(const rational& o) { return *this = *this * o; }
  rational& operator/=(const rational& o) { return *this = *this / o; }

  friend bool operator==(const rational&, const rational&) = default;
  friend std::strong_ordering operator<=>(const rational& a,
                                          const rational& b) {
    using i128 = __int128;
    const i128 lhs = i128{a.num_} * b.den_;
    const i128 rhs = i128{b.num_} * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const rational& r) {
    return os << r.str();
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static rational make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr auto lo = std::numeric_limits<std::int64_t>::min();
    constexpr auto hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("rational: result exceeds 64 bits");
    rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace bhc

#endif  // BHC_RATIONAL_HPP
