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

// Upper bounds for the Bohnenblust-Hille constants C_{K,m}.
//
// Every recursive strategy is an instance of one rule: level m is assembled
// from blocks of sizes (a, b), a + b = m, through the Blei split of
// exponents.hpp,
//
//   C_m = (C_a / A_{s1}^b)^{f(s1,s2)} * (C_b / A_{s2}^a)^{f(s2,s1)},
//
// with s1 = 2a/(a+1), s2 = 2b/(b+1) and C_1 = 1. The strategies differ only
// in the choice of (a, b) and in their base levels:
//
//   one-step  (1, m-1)
//   two-step  (2, m-2)
//   halving   (m/2, m/2) for even m, ((m-1)/2, (m+1)/2) for odd m
//
// All values are valid upper bounds, never claimed optimal. Whenever every
// ingredient of a value is an exact power of 2, 2/sqrt(pi) and the K_G
// literal, the exponents are carried as exact rationals next to the double.

#ifndef BHC_RECURSION_HPP
#define BHC_RECURSION_HPP

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bhc/common.hpp"
#include "bhc/exponents.hpp"
#include "bhc/rational.hpp"
#include "bhc/special_fn.hpp"

namespace bhc {

enum class named_constant { k_g_upper, two_over_sqrt_pi };

/// Upper bound 1.4049 for the complex Grothendieck constant (a literal).
inline constexpr double kGrothendieckUpper = 1.4049;
inline constexpr double kTwoOverSqrtPi = std::numbers::inv_sqrtpi * 2.0;

inline constexpr double value_of(named_constant c) {
  return c == named_constant::k_g_upper ? kGrothendieckUpper : kTwoOverSqrtPi;
}

/// Exact monomial 2^a * (2/sqrt(pi))^b * K_G^c with rational exponents.
struct exact_form {
  rational pow2;
  rational pow_dsp;
  rational pow_kg;

  static exact_form dyadic(rational r) { return {r, 0, 0}; }

  [[nodiscard]] bool is_dyadic() const {
    return pow_dsp.is_zero() && pow_kg.is_zero();
  }

  [[nodiscard]] double value() const {
    return std::exp2(pow2.to_double()) *
           std::pow(kTwoOverSqrtPi, pow_dsp.to_double()) *
           std::pow(kGrothendieckUpper, pow_kg.to_double());
  }

  [[nodiscard]] std::string str() const {
    std::string out;
    auto factor = [&out](const std::string& base, const rational& e) {
      if (e.is_zero()) return;
      if (!out.empty()) out += " * ";
      out += base;
      if (e != rational(1)) out += "^(" + e.str() + ")";
    };
    factor("(2/sqrt(pi))", pow_dsp);
    factor("K_G", pow_kg);
    factor("2", pow2);
    return out.empty() ? "1" : out;
  }

  friend exact_form operator+(const exact_form& x, const exact_form& y) {
    return {x.pow2 + y.pow2, x.pow_dsp + y.pow_dsp, x.pow_kg + y.pow_kg};
  }
  friend exact_form operator-(const exact_form& x, const exact_form& y) {
    return {x.pow2 - y.pow2, x.pow_dsp - y.pow_dsp, x.pow_kg - y.pow_kg};
  }
  friend exact_form operator*(const exact_form& x, const rational& k) {
    return {x.pow2 * k, x.pow_dsp * k, x.pow_kg * k};
  }
  friend bool operator==(const exact_form&, const exact_form&) = default;
};

enum class strategy {
  one_step,
  two_step,
  halving,
  original,      ///< m^{(m+1)/(2m)} 2^{(m-1)/2}
  kaijser,       ///< 2^{(m-1)/2}
  queffelec_ds,  ///< (2/sqrt(pi))^{m-1}
  best,
};

inline bool is_baseline(strategy s) {
  return s == strategy::original || s == strategy::kaijser ||
         s == strategy::queffelec_ds;
}

inline std::string to_string(strategy s) {
  switch (s) {
    case strategy::one_step: return "one-step";
    case strategy::two_step: return "two-step";
    case strategy::halving: return "halving";
    case strategy::original: return "baseline-original";
    case strategy::kaijser: return "baseline-kaijser";
    case strategy::queffelec_ds: return "baseline-queffelec-ds";
    case strategy::best: return "best";
  }
  return "?";
}

inline strategy parse_strategy(const std::string& s) {
  for (strategy c : {strategy::one_step, strategy::two_step, strategy::halving,
                     strategy::original, strategy::kaijser,
                     strategy::queffelec_ds, strategy::best}) {
    if (to_string(c) == s) return c;
  }
  if (s == "original") return strategy::original;
  if (s == "kaijser") return strategy::kaijser;
  if (s == "queffelec-ds") return strategy::queffelec_ds;
  throw std::invalid_argument("unknown strategy: " + s);
}

/// A Khinchine constant consumed by one recursion step, raised to `power`.
struct khinchine_use {
  rational p;
  double value = 0.0;
  khinchine_branch branch = khinchine_branch::unit;
  std::optional<rational> exponent;
  int power = 0;
};

enum class step_rule { base, blei_split, baseline };

struct trace_step {
  step_rule rule = step_rule::base;
  int level = 0;
  std::vector<int> children;
  std::optional<exponent_split> split;
  std::vector<khinchine_use> khinchine;
  double value = 0.0;
  std::optional<exact_form> exact;
  std::string note;
};

/// Steps in dependency order: every child level appears before its parent,
/// the last step is the requested level.
struct derivation_trace {
  std::vector<trace_step> steps;
};

/// Recomputes the final value of a trace from its recorded ingredients only.
/// Base and baseline steps are taken as given.
inline double replay(const derivation_trace& trace) {
  if (trace.steps.empty()) throw std::invalid_argument("replay: empty trace");
  std::map<int, double> known{{1, 1.0}};
  double last = 0.0;
  for (const trace_step& s : trace.steps) {
    double v = s.value;
    if (s.rule == step_rule::blei_split) {
      if (!s.split || s.khinchine.size() != 2)
        throw std::invalid_argument("replay: malformed split step");
      const exponent_split& sp = *s.split;
      const auto a = known.find(sp.first);
      const auto b = known.find(sp.second);
      if (a == known.end() || b == known.end())
        throw std::invalid_argument("replay: child level missing");
      const khinchine_use& k1 = s.khinchine[0];
      const khinchine_use& k2 = s.khinchine[1];
      v = std::pow(a->second / std::pow(k1.value, k1.power), sp.f1_value()) *
          std::pow(b->second / std::pow(k2.value, k2.power), sp.f2_value());
    }
    known[s.level] = v;
    last = v;
  }
  return last;
}

/// One computed constant C_{K,m}: a valid upper bound for the
/// Bohnenblust-Hille inequality at level m over the given field.
struct constant_record {
  int m = 0;
  scalar_field field = scalar_field::real;
  strategy strat = strategy::halving;
  /// For strat == best: the strategy that produced the value.
  std::optional<strategy> winner;
  double value = 0.0;
  std::optional<exact_form> exact;
  std::string symbolic;
  derivation_trace trace;

  /// r with value = 2^r, when the value is an exact power of two.
  [[nodiscard]] std::optional<rational> dyadic_exponent() const {
    if (exact && exact->is_dyadic()) return exact->pow2;
    return std::nullopt;
  }
};

namespace detail {

struct level_value {
  double value = 0.0;
  std::optional<exact_form> exact;
};

struct base_level {
  double value = 0.0;
  std::optional<exact_form> exact;
  std::string note;
};

template <class F>
std::optional<exact_form> exact_or_none(F&& f) {
  try {
    return f();
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

class recursion_engine {
 public:
  recursion_engine(std::map<int, base_level> bases,
                   std::function<exponent_split(int)> choose)
      : bases_(std::move(bases)), choose_(std::move(choose)) {}

  level_value level(int m) {
    if (m == 1) return {1.0, exact_form{}};
    if (auto it = memo_.find(m); it != memo_.end()) return it->second;

    trace_step step;
    step.level = m;
    if (auto b = bases_.find(m); b != bases_.end()) {
      step.rule = step_rule::base;
      step.value = b->second.value;
      step.exact = b->second.exact;
      step.note = b->second.note;
    } else {
      const exponent_split sp = choose_(m);
      const level_value ca = level(sp.first);
      const level_value cb = level(sp.second);
      const khinchine_lower a1 = khinchine_A(sp.s1);
      const khinchine_lower a2 = khinchine_A(sp.s2);
      step.rule = step_rule::blei_split;
      step.children = {sp.first, sp.second};
      step.khinchine = {
          {sp.s1, a1.value, a1.branch, a1.exponent, sp.second},
          {sp.s2, a2.value, a2.branch, a2.exponent, sp.first},
      };
      step.value =
          std::pow(ca.value / std::pow(a1.value, sp.second), sp.f1_value()) *
          std::pow(cb.value / std::pow(a2.value, sp.first), sp.f2_value());
      if (ca.exact && cb.exact && a1.exponent && a2.exponent) {
        step.exact = exact_or_none([&] {
          const exact_form left =
              *ca.exact - exact_form::dyadic(*a1.exponent * sp.second);
          const exact_form right =
              *cb.exact - exact_form::dyadic(*a2.exponent * sp.first);
          return left * sp.f1 + right * sp.f2;
        });
      }
      step.split = sp;
    }
    const level_value out{step.value, step.exact};
    memo_[m] = out;
    trace_.steps.push_back(std::move(step));
    return out;
  }

  derivation_trace take_trace() { return std::move(trace_); }

 private:
  std::map<int, base_level> bases_;
  std::function<exponent_split(int)> choose_;
  std::map<int, level_value> memo_;
  derivation_trace trace_;
};

inline void require_level(int m, const char* who) {
  if (m < 2) throw std::domain_error(std::string(who) + ": m must be >= 2");
}

inline base_level real_base(int m) {
  if (m == 2) return {std::numbers::sqrt2, exact_form::dyadic({1, 2}), "C_R(2) = 2^(1/2)"};
  return {std::exp2(5.0 / 6.0), exact_form::dyadic({5, 6}), "C_R(3) = 2^(5/6)"};
}

inline base_level complex_dsp_base(int m) {
  return {std::pow(kTwoOverSqrtPi, m - 1), exact_form{0, m - 1, 0},
          "C_C(" + std::to_string(m) + ") = (2/sqrt(pi))^" +
              std::to_string(m - 1)};
}

inline exponent_split halving_split(int m) {
  return m % 2 == 0 ? even_split(m) : odd_split(m);
}

inline constant_record run_engine(int m, scalar_field field, strategy strat,
                                  std::map<int, base_level> bases,
                                  std::function<exponent_split(int)> choose) {
  recursion_engine engine(std::move(bases), std::move(choose));
  const level_value top = engine.level(m);
  constant_record r;
  r.m = m;
  r.field = field;
  r.strat = strat;
  r.value = top.value;
  r.exact = top.exact;
  if (r.exact) r.symbolic = r.exact->str();
  r.trace = engine.take_trace();
  return r;
}

}  // namespace detail

/// Classical constants: Original, Kaijser and Queffelec / Defant-Sevilla-Peris.
inline constant_record baseline(int m, strategy kind,
                                scalar_field field = scalar_field::real) {
  detail::require_level(m, "baseline");
  if (!is_baseline(kind))
    throw std::invalid_argument("baseline: not a baseline strategy");
  constant_record r;
  r.m = m;
  r.field = field;
  r.strat = kind;
  const double half_m1 = 0.5 * (m - 1);
  switch (kind) {
    case strategy::kaijser:
      r.exact = exact_form::dyadic(rational(m - 1, 2));
      r.value = std::exp2(half_m1);
      break;
    case strategy::queffelec_ds:
      r.exact = exact_form{0, m - 1, 0};
      r.value = std::pow(kTwoOverSqrtPi, m - 1);
      break;
    default: {
      const rational outer(m + 1, 2 * m);
      r.value = std::pow(static_cast<double>(m), outer.to_double()) *
                std::exp2(half_m1);
      r.symbolic = std::to_string(m) + "^(" + outer.str() + ") * 2^(" +
                   rational(m - 1, 2).str() + ")";
      break;
    }
  }
  if (r.exact) r.symbolic = r.exact->str();
  trace_step step;
  step.rule = step_rule::baseline;
  step.level = m;
  step.value = r.value;
  step.exact = r.exact;
  step.note = to_string(kind) + ": " + r.symbolic;
  r.trace.steps.push_back(std::move(step));
  return r;
}

/// C_R(2) = sqrt(2); C_R(m) = 2^{(m-1)/(2m)} (C_R(m-1) / A_{(2m-2)/m})^{1-1/m}.
inline constant_record real_one_step(int m) {
  detail::require_level(m, "real_one_step");
  return detail::run_engine(m, scalar_field::real, strategy::one_step,
                            {{2, detail::real_base(2)}}, one_step_split);
}

/// Bases C_R(2), C_R(3); C_R(m) = 2^{1/2} (C_R(m-2) / A_{(2m-4)/(m-1)}^2)^{(m-2)/m}.
inline constant_record real_two_step(int m) {
  detail::require_level(m, "real_two_step");
  return detail::run_engine(
      m, scalar_field::real, strategy::two_step,
      {{2, detail::real_base(2)}, {3, detail::real_base(3)}}, two_step_split);
}

/// Bases C_R(2), C_R(3); even m halves, odd m splits into (m-1)/2, (m+1)/2.
inline constant_record real_halving(int m) {
  detail::require_level(m, "real_halving");
  return detail::run_engine(
      m, scalar_field::real, strategy::halving,
      {{2, detail::real_base(2)}, {3, detail::real_base(3)}},
      detail::halving_split);
}

/// C_C(2) = K_G <= 1.4049, then the one-step recursion.
inline constant_record complex_one_step(int m) {
  detail::require_level(m, "complex_one_step");
  return detail::run_engine(
      m, scalar_field::complex, strategy::one_step,
      {{2, {kGrothendieckUpper, exact_form{0, 0, 1}, "C_C(2) = K_G <= 1.4049"}}},
      one_step_split);
}

/// Bases (2/sqrt(pi))^{m-1} for m = 2..6, halving recursion above.
inline constant_record complex_halving(int m) {
  detail::require_level(m, "complex_halving");
  std::map<int, detail::base_level> bases;
  for (int k = 2; k <= 6; ++k) bases[k] = detail::complex_dsp_base(k);
  return detail::run_engine(m, scalar_field::complex, strategy::halving,
                            std::move(bases), detail::halving_split);
}

inline constant_record best_constant(int m, scalar_field field);

/// Dispatches (field, strategy) to the matching computation.
inline constant_record compute_constant(int m, scalar_field field,
                                        strategy strat) {
  if (is_baseline(strat)) return baseline(m, strat, field);
  if (strat == strategy::best) return best_constant(m, field);
  if (field == scalar_field::real) {
    switch (strat) {
      case strategy::one_step: return real_one_step(m);
      case strategy::two_step: return real_two_step(m);
      default: return real_halving(m);
    }
  }
  switch (strat) {
    case strategy::one_step: return complex_one_step(m);
    case strategy::halving: return complex_halving(m);
    default:
      throw std::invalid_argument(
          "two-step recursion is only defined for real scalars");
  }
}

/// Smallest value over all strategies and applicable baselines.
///
/// Candidates are scanned baselines first; a recursion only wins when it is
/// strictly smaller (relative margin 1e-12), so ties go to the classical
/// constant.
inline constant_record best_constant(int m, scalar_field field) {
  detail::require_level(m, "best_constant");
  std::vector<strategy> order;
  if (field == scalar_field::real) {
    order = {strategy::kaijser, strategy::original, strategy::halving,
             strategy::two_step, strategy::one_step};
  } else {
    order = {strategy::queffelec_ds, strategy::kaijser, strategy::original,
             strategy::halving, strategy::one_step};
  }
  std::optional<constant_record> best;
  for (strategy s : order) {
    constant_record c = compute_constant(m, field, s);
    if (!best || c.value < best->value * (1.0 - 1e-12)) best = std::move(c);
  }
  best->winner = best->strat;
  best->strat = strategy::best;
  return *best;
}

/// Records for m = 2..m_max, one per level.
inline std::vector<constant_record> constants_table(scalar_field field,
                                                    strategy strat,
                                                    int m_max) {
  if (m_max < 2) throw std::domain_error("constants_table: m_max must be >= 2");
  std::vector<constant_record> rows;
  rows.reserve(static_cast<std::size_t>(m_max - 1));
  for (int m = 2; m <= m_max; ++m)
    rows.push_back(compute_constant(m, field, strat));
  return rows;
}

}  // namespace bhc

#endif  // BHC_RECURSION_HPP
