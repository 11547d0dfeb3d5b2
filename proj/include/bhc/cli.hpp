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

#ifndef BHC_CLI_HPP
#define BHC_CLI_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bhc/report.hpp"

namespace bhc {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCertifiedFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// "4/3" gives an exact rational; "1.5" gives 3/2; "1e-1" only a double.
inline std::pair<std::optional<rational>, double> parse_exponent(const std::string& s) {
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    std::size_t used_num = 0;
    std::size_t used_den = 0;
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    const long long n = std::stoll(num, &used_num);
    const long long d = std::stoll(den, &used_den);
    if (used_num != num.size() || used_den != den.size())
      throw std::invalid_argument("malformed fraction: " + s);
    const rational r(n, d);
    return {r, r.to_double()};
  }
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("malformed number: " + s);
  std::optional<rational> exact;
  const auto dot = s.find('.');
  if (s.find_first_of("eEnN") == std::string::npos) {
    const std::string digits =
        dot == std::string::npos ? s : s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t decimals = dot == std::string::npos ? 0 : s.size() - dot - 1;
    if (decimals <= 15 && digits.size() <= 17) {
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < decimals; ++i) scale *= 10;
      exact = rational(std::stoll(digits), scale);
    }
  }
  return {exact, v};
}

/// Accepts plain integers and scientific forms such as "1e5".
inline std::int64_t parse_count(const std::string& s, const char* what) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size() || !(v >= 1.0) || v > 1e12 || v != std::floor(v))
    throw std::invalid_argument(std::string(what) + " must be a positive integer");
  return static_cast<std::int64_t>(v);
}

inline std::uint64_t parse_seed(const std::string& s) {
  if (s.empty() || s[0] == '-') throw std::invalid_argument("seed must be a 64-bit unsigned integer");
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used, 10);
  if (used != s.size()) throw std::invalid_argument("seed must be a 64-bit unsigned integer");
  return static_cast<std::uint64_t>(v);
}

namespace detail {

struct raw_options {
  std::string field = "real";
  std::string strategy;
  std::string format = "table";
  std::string target;
  std::string p;
  std::string budget;
  std::string seed;
  int m = 0;
  int precision = 4;
};

inline run_config finish_config(run_config cfg, const raw_options& raw,
                                const CLI::App& sub, const char* env_seed) {
  cfg.field = parse_field(raw.field);
  cfg.format = parse_format(raw.format);
  cfg.precision = raw.precision;
  if (!raw.strategy.empty()) cfg.strat = parse_strategy(raw.strategy);
  if (const CLI::Option* opt = sub.get_option_no_throw("--m"); opt && opt->count() > 0)
    cfg.m = raw.m;
  if (!raw.target.empty()) cfg.target = parse_target(raw.target);
  if (!raw.p.empty()) {
    const auto [exact, value] = parse_exponent(raw.p);
    cfg.p = exact;
    cfg.p_value = value;
  }
  if (!raw.budget.empty()) cfg.budget = parse_count(raw.budget, "--budget");
  if (!raw.seed.empty())
    cfg.seed = parse_seed(raw.seed);
  else if (env_seed != nullptr && *env_seed != '\0')
    cfg.seed = parse_seed(env_seed);
  return cfg;
}

}  // namespace detail

/// Parses `args` (without the program name), runs the command, and writes the
/// rendered report to `out`. Returns the process exit code: 0 all checks
/// passed, 1 a certified check failed, 2 invalid arguments.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err, const char* env_seed = std::getenv("BHC_SEED")) {
  CLI::App app{"Bohnenblust-Hille constants: tables, derivations and checks", "bhc"};
  app.require_subcommand(1);

  run_config cfg;
  detail::raw_options raw;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", raw.field, "real or complex")
        ->check(CLI::IsMember({"real", "complex"}));
    sub->add_option("--format", raw.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--precision", raw.precision, "Decimals in tables")
        ->check(CLI::Range(1, 12));
    sub->add_option("--seed", raw.seed, "64-bit seed (default 42, or BHC_SEED)");
    sub->add_flag("--verbose", cfg.verbose, "Include per-trial ratios");
  };
  auto strategy_option = [&](CLI::App* sub) {
    sub->add_option("--strategy", raw.strategy,
                    "one-step, two-step, halving, best, or a baseline name");
  };
  auto level_range = [&](CLI::App* sub) {
    sub->add_option("--max-m", cfg.m_max, "Largest m");
    sub->add_option("--min-m", cfg.m_min, "Smallest m");
  };

  CLI::App* constants = app.add_subcommand("constants", "Table of constants C_m");
  common(constants);
  strategy_option(constants);
  level_range(constants);
  constants->add_flag("--compare", cfg.compare, "Add previous constants side by side");

  CLI::App* explain = app.add_subcommand("explain", "Derivation trace of one constant");
  common(explain);
  strategy_option(explain);
  explain->add_option("--m", raw.m, "Level")->required();

  CLI::App* baselines = app.add_subcommand("baselines", "Classical constants");
  common(baselines);
  level_range(baselines);
  baselines->add_option("--m", raw.m, "Single level");

  CLI::App* verify = app.add_subcommand("verify", "Seeded property suites");
  common(verify);
  strategy_option(verify);
  verify->add_option("target", raw.target, "khinchine, blei, bh or summing")
      ->required()
      ->check(CLI::IsMember({"khinchine", "blei", "bh", "summing"}));
  verify->add_option("--m", raw.m, "Level (bh, summing)");
  verify->add_option("--dim", cfg.dim, "N per slot (bh, summing)");
  verify->add_option("--n", cfg.n, "Vector length (khinchine)");
  verify->add_option("--p", raw.p, "Exponent, e.g. 4/3 (khinchine)");
  verify->add_option("--trials", cfg.trials, "Trials per group");

  CLI::App* search = app.add_subcommand("search", "Extremal search for large ratios");
  common(search);
  search->add_option("--m", raw.m, "Level");
  search->add_option("--dim", cfg.dim, "N per slot");
  search->add_option("--budget", raw.budget, "Ratio evaluations, e.g. 1e5");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0 with the text on `out`.
    return app.exit(e, out, err) == 0 ? kExitPass : kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "constants") cfg.command = command_kind::constants;
  if (name == "explain") cfg.command = command_kind::explain;
  if (name == "baselines") cfg.command = command_kind::baselines;
  if (name == "verify") cfg.command = command_kind::verify;
  if (name == "search") cfg.command = command_kind::search;

  report_document doc;
  try {
    cfg = detail::finish_config(cfg, raw, *chosen, env_seed);
    doc = run_command(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  render(doc, out);
  return doc.exit_code();
}

}  // namespace bhc

#endif  // BHC_CLI_HPP
