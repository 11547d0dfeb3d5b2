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

#ifndef BHC_REPORT_HPP
#define BHC_REPORT_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bhc/common.hpp"
#include "bhc/rational.hpp"
#include "bhc/recursion.hpp"
#include "bhc/search.hpp"
#include "bhc/special_fn.hpp"
#include "bhc/tensor.hpp"
#include "bhc/verify.hpp"

namespace bhc {

using json = nlohmann::ordered_json;

enum class command_kind { constants, explain, baselines, verify, search };
enum class output_format { table, csv, json };
enum class verify_target { khinchine, blei, bh, summing };

inline std::string to_string(command_kind c) {
  switch (c) {
    case command_kind::constants: return "constants";
    case command_kind::explain: return "explain";
    case command_kind::baselines: return "baselines";
    case command_kind::verify: return "verify";
    case command_kind::search: return "search";
  }
  return "?";
}

inline std::string to_string(output_format f) {
  switch (f) {
    case output_format::table: return "table";
    case output_format::csv: return "csv";
    case output_format::json: return "json";
  }
  return "?";
}

inline std::string to_string(verify_target t) {
  switch (t) {
    case verify_target::khinchine: return "khinchine";
    case verify_target::blei: return "blei";
    case verify_target::bh: return "bh";
    case verify_target::summing: return "summing";
  }
  return "?";
}

inline output_format parse_format(const std::string& s) {
  if (s == "table") return output_format::table;
  if (s == "csv") return output_format::csv;
  if (s == "json") return output_format::json;
  throw std::invalid_argument("unknown format: " + s);
}

inline verify_target parse_target(const std::string& s) {
  if (s == "khinchine") return verify_target::khinchine;
  if (s == "blei") return verify_target::blei;
  if (s == "bh") return verify_target::bh;
  if (s == "summing") return verify_target::summing;
  throw std::invalid_argument("unknown verify target: " + s);
}

inline constexpr std::uint64_t kDefaultSeed = 42;

struct run_config {
  command_kind command = command_kind::constants;
  std::optional<verify_target> target;
  scalar_field field = scalar_field::real;
  /// Unset means the command default: halving for tables and traces, best
  /// for checks and searches.
  std::optional<strategy> strat;
  std::optional<int> m;
  int m_min = 2;
  int m_max = 12;
  std::size_t dim = 2;
  std::size_t n = 10;
  /// Exact exponent when given as a fraction or terminating decimal.
  std::optional<rational> p;
  std::optional<double> p_value;
  int trials = 100;
  std::int64_t budget = 100000;
  std::uint64_t seed = kDefaultSeed;
  output_format format = output_format::table;
  int precision = 4;
  bool compare = false;
  bool verbose = false;
};

enum class cell_style { integer, number, text, constant, rational, boolean };

/// How a table renders one key of each row.
struct display_column {
  std::string key;
  std::string header;
  cell_style style = cell_style::number;
};

struct report_document {
  std::string schema_version = "1";
  run_config config;
  std::string title;
  std::vector<display_column> columns;
  std::vector<json> rows;
  json summary = json::object();
  /// Human-readable lines printed after the table (traces, verdicts).
  std::vector<std::string> notes;
  std::vector<std::string> failures;
  double wall_time = 0.0;

  [[nodiscard]] int exit_code() const { return failures.empty() ? 0 : 1; }
};

// ---------------------------------------------------------------------------
// JSON projections

inline json rational_json(const rational& r) {
  return json{{"num", r.num()}, {"den", r.den()}};
}

inline json rational_json(const std::optional<rational>& r) {
  return r ? rational_json(*r) : json(nullptr);
}

inline bool is_rational_json(const json& j) {
  return j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den");
}

inline rational rational_from_json(const json& j) {
  return rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

inline json constant_json(const constant_record& r) {
  json j;
  j["value"] = r.value;
  j["symbolic"] = r.symbolic;
  j["exponent"] = rational_json(r.dyadic_exponent());
  json exact;
  exact["pow2"] = r.exact ? rational_json(r.exact->pow2) : json(nullptr);
  exact["pow_dsp"] = r.exact ? rational_json(r.exact->pow_dsp) : json(nullptr);
  exact["pow_kg"] = r.exact ? rational_json(r.exact->pow_kg) : json(nullptr);
  j["exact"] = exact;
  j["strategy"] = to_string(r.winner ? *r.winner : r.strat);
  return j;
}

inline json constant_ref_json(const std::optional<constant_ref>& c) {
  if (!c) return nullptr;
  json j;
  j["m"] = c->m;
  j["field"] = to_string(c->field);
  j["strategy"] = to_string(c->winner ? *c->winner : c->strat);
  j["value"] = c->value;
  return j;
}

inline json config_json(const run_config& c) {
  json j;
  j["command"] = to_string(c.command);
  j["target"] = c.target ? json(to_string(*c.target)) : json(nullptr);
  j["field"] = to_string(c.field);
  j["strategy"] = c.strat ? json(to_string(*c.strat)) : json(nullptr);
  j["m"] = c.m ? json(*c.m) : json(nullptr);
  j["m_min"] = c.m_min;
  j["m_max"] = c.m_max;
  j["dim"] = c.dim;
  j["n"] = c.n;
  j["p"] = c.p_value ? json(*c.p_value) : json(nullptr);
  j["p_exact"] = rational_json(c.p);
  j["trials"] = c.trials;
  j["budget"] = c.budget;
  j["seed"] = c.seed;
  j["format"] = to_string(c.format);
  j["precision"] = c.precision;
  j["compare"] = c.compare;
  j["verbose"] = c.verbose;
  return j;
}

inline json document_json(const report_document& d) {
  json j;
  j["schema_version"] = d.schema_version;
  j["command"] = to_string(d.config.command);
  j["title"] = d.title;
  j["config"] = config_json(d.config);
  j["rows"] = json::array();
  for (const json& r : d.rows) j["rows"].push_back(r);
  j["summary"] = d.summary;
  j["notes"] = d.notes;
  j["failures"] = d.failures;
  j["wall_time"] = d.wall_time;
  return j;
}

// ---------------------------------------------------------------------------
// Formatting

/// Fixed-point with `precision` decimals. snprintf rounds the exact binary
/// value, so ties are resolved to even.
inline std::string format_fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

/// Shortest text that reads back to the same double.
inline std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline bool is_integral(double v) {
  return std::isfinite(v) && std::abs(v) < 1e15 && v == std::round(v);
}

inline std::string format_number(double v, int precision) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  if (std::abs(v) >= 1e7) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision, v);
    return buf;
  }
  return format_fixed(v, precision);
}

/// "2^(5/6) ≈ 1.7818", or "2^(1) = 2" when the value is an integer.
inline std::string format_constant(const json& c, int precision) {
  if (c.is_null()) return "-";
  const double v = c.at("value").get<double>();
  const std::string sym = c.value("symbolic", "");
  const bool exact = !c.at("exponent").is_null() || !c.at("exact").at("pow2").is_null();
  const double rounded = std::round(v);
  std::string num;
  std::string rel = "≈";
  if (exact && std::abs(v - rounded) <= 1e-12 * std::max(1.0, v)) {
    num = format_fixed(rounded, 0);
    rel = "=";
  } else {
    num = format_number(v, precision);
  }
  if (sym.empty() || sym == num) return num;
  return sym + " " + rel + " " + num;
}

inline std::string format_cell(const json& j, cell_style style, int precision) {
  if (j.is_null()) return "-";
  switch (style) {
    case cell_style::integer:
      return j.is_number() ? std::to_string(j.get<std::int64_t>()) : j.dump();
    case cell_style::number:
      return j.is_number() ? format_number(j.get<double>(), precision) : j.dump();
    case cell_style::text:
      return j.is_string() ? j.get<std::string>() : j.dump();
    case cell_style::constant:
      return format_constant(j, precision);
    case cell_style::rational:
      return is_rational_json(j) ? rational_from_json(j).str() : j.dump();
    case cell_style::boolean:
      return j.is_boolean() ? (j.get<bool>() ? "yes" : "no") : j.dump();
  }
  return j.dump();
}

inline const json& lookup(const json& row, const std::string& key) {
  static const json null_json = nullptr;
  const json* cur = &row;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (!cur->is_object() || !cur->contains(part)) return null_json;
    cur = &(*cur)[part];
    if (dot == std::string::npos) return *cur;
    start = dot + 1;
  }
}

inline void render_table(const report_document& d, std::ostream& out) {
  if (!d.title.empty()) out << d.title << "\n";
  if (!d.columns.empty() && !d.rows.empty()) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(d.columns.size());
    auto display_width = [](const std::string& s) {
      // Count UTF-8 code points.
      std::size_t n = 0;
      for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
      return n;
    };
    for (std::size_t k = 0; k < d.columns.size(); ++k)
      width[k] = display_width(d.columns[k].header);
    for (const json& row : d.rows) {
      std::vector<std::string> line;
      for (std::size_t k = 0; k < d.columns.size(); ++k) {
        const display_column& col = d.columns[k];
        line.push_back(format_cell(lookup(row, col.key), col.style, d.config.precision));
        width[k] = std::max(width[k], display_width(line.back()));
      }
      cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
      std::string text;
      for (std::size_t k = 0; k < line.size(); ++k) {
        if (k > 0) text += "  ";
        text += line[k];
        if (k + 1 < line.size())
          text += std::string(width[k] - display_width(line[k]), ' ');
      }
      out << text << "\n";
    };
    std::vector<std::string> header;
    for (const auto& col : d.columns) header.push_back(col.header);
    emit(header);
    std::size_t rule = 0;
    for (std::size_t w : width) rule += w + 2;
    out << std::string(rule - 2, '-') << "\n";
    for (const auto& line : cells) emit(line);
  }
  for (const std::string& n : d.notes) out << n << "\n";
  for (const std::string& f : d.failures) out << "FAIL: " << f << "\n";
}

namespace detail {

inline std::string csv_scalar(const json& j) {
  if (j.is_null()) return "";
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  if (j.is_number_float()) return format_full(j.get<double>());
  if (is_rational_json(j)) return rational_from_json(j).str();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) out += ";";
      out += csv_scalar(j[i]);
    }
    return out;
  }
  return j.dump();
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void flatten(const json& j, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !is_rational_json(j)) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  out.emplace_back(prefix, csv_scalar(j));
}

}  // namespace detail

/// Flattened key/value pairs of one row; nested keys are joined with '.'.
inline std::vector<std::pair<std::string, std::string>> flatten_row(const json& row) {
  std::vector<std::pair<std::string, std::string>> out;
  detail::flatten(row, "", out);
  return out;
}

inline void render_csv(const report_document& d, std::ostream& out) {
  std::vector<std::string> keys;
  std::vector<std::vector<std::pair<std::string, std::string>>> flat;
  for (const json& row : d.rows) {
    flat.push_back(flatten_row(row));
    for (const auto& [k, v] : flat.back()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
  }
  for (std::size_t i = 0; i < keys.size(); ++i)
    out << (i ? "," : "") << detail::csv_quote(keys[i]);
  out << "\n";
  for (const auto& row : flat) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      std::string v;
      for (const auto& [k, val] : row)
        if (k == keys[i]) v = val;
      out << (i ? "," : "") << detail::csv_quote(v);
    }
    out << "\n";
  }
}

inline void render_json(const report_document& d, std::ostream& out) {
  out << document_json(d).dump(2) << "\n";
}

inline void render(const report_document& d, std::ostream& out) {
  switch (d.config.format) {
    case output_format::table: render_table(d, out); break;
    case output_format::csv: render_csv(d, out); break;
    case output_format::json: render_json(d, out); break;
  }
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline std::string field_letter(scalar_field f) {
  return f == scalar_field::real ? "R" : "C";
}

inline strategy resolve_strategy(const run_config& cfg, strategy fallback) {
  return cfg.strat ? *cfg.strat : fallback;
}

inline void check_level_range(const run_config& cfg) {
  if (cfg.m_max < 2) throw std::invalid_argument("--max-m must be >= 2");
  if (cfg.m_max > 1000) throw std::invalid_argument("--max-m must be <= 1000");
  if (cfg.m_min < 2 || cfg.m_min > cfg.m_max)
    throw std::invalid_argument("--min-m must lie in [2, max-m]");
}

inline std::vector<strategy> compare_strategies(scalar_field field,
                                                strategy primary) {
  std::vector<strategy> out;
  if (field == scalar_field::real) {
    out = {strategy::one_step, strategy::kaijser};
  } else {
    out = {strategy::queffelec_ds, strategy::kaijser, strategy::original};
  }
  out.erase(std::remove(out.begin(), out.end(), primary), out.end());
  return out;
}

inline std::string khinchine_text(const khinchine_use& k, int precision) {
  std::string s = "A_(" + k.p.str() + ")";
  if (k.exponent)
    s += " = 2^(" + k.exponent->str() + ")";
  else if (k.branch == khinchine_branch::unit)
    s += " = 1";
  s += " ≈ " + format_number(k.value, precision) + " [" + to_string(k.branch) + "]";
  return s;
}

inline std::string exact_text(const std::optional<exact_form>& e) {
  return e ? e->str() : std::string();
}

}  // namespace detail

inline report_document cmd_constants(const run_config& cfg) {
  detail::check_level_range(cfg);
  const strategy primary = detail::resolve_strategy(cfg, strategy::halving);
  report_document d;
  d.config = cfg;
  d.title = "C_" + detail::field_letter(cfg.field) + "(m), " + to_string(primary) +
            ", " + to_string(cfg.field) + " scalars";
  d.columns = {{"m", "m", cell_style::integer},
               {"value", "C(m)", cell_style::number},
               {"constant.symbolic", "exact", cell_style::text}};
  if (primary == strategy::best)
    d.columns.push_back({"constant.strategy", "winner", cell_style::text});
  const std::vector<strategy> extra =
      cfg.compare ? detail::compare_strategies(cfg.field, primary)
                  : std::vector<strategy>{};
  for (strategy s : extra)
    d.columns.push_back({"compare." + to_string(s), to_string(s), cell_style::constant});

  for (int m = cfg.m_min; m <= cfg.m_max; ++m) {
    const constant_record r = compute_constant(m, cfg.field, primary);
    json row;
    row["m"] = m;
    row["field"] = to_string(cfg.field);
    row["strategy"] = to_string(primary);
    row["value"] = r.value;
    row["constant"] = constant_json(r);
    if (!extra.empty()) {
      json cmp;
      for (strategy s : extra) cmp[to_string(s)] = constant_json(compute_constant(m, cfg.field, s));
      row["compare"] = cmp;
    }
    d.rows.push_back(std::move(row));
  }
  return d;
}

inline report_document cmd_baselines(const run_config& cfg) {
  run_config c = cfg;
  if (c.m) {
    if (*c.m < 2) throw std::invalid_argument("--m must be >= 2");
    c.m_min = c.m_max = *c.m;
  }
  detail::check_level_range(c);
  report_document d;
  d.config = cfg;
  d.title = "Classical constants";
  d.columns = {{"m", "m", cell_style::integer}};
  const std::array<strategy, 3> kinds = {strategy::queffelec_ds, strategy::kaijser,
                                         strategy::original};
  for (strategy s : kinds)
    d.columns.push_back({to_string(s), to_string(s), cell_style::constant});
  for (int m = c.m_min; m <= c.m_max; ++m) {
    json row;
    row["m"] = m;
    for (strategy s : kinds) row[to_string(s)] = constant_json(baseline(m, s, cfg.field));
    d.rows.push_back(std::move(row));
  }
  return d;
}

inline report_document cmd_explain(const run_config& cfg) {
  if (!cfg.m) throw std::invalid_argument("explain needs --m");
  if (*cfg.m < 2 || *cfg.m > 1000) throw std::invalid_argument("--m must lie in [2, 1000]");
  const strategy strat = detail::resolve_strategy(cfg, strategy::halving);
  const constant_record r = compute_constant(*cfg.m, cfg.field, strat);
  const std::string k = detail::field_letter(cfg.field);
  const int prec = cfg.precision;
  auto name = [&k](int level) { return "C_" + k + "(" + std::to_string(level) + ")"; };

  report_document d;
  d.config = cfg;
  d.title = "Derivation of " + name(r.m) + ", " + to_string(r.winner ? *r.winner : r.strat);
  for (const trace_step& s : r.trace.steps) {
    json row;
    row["level"] = s.level;
    row["rule"] = s.rule == step_rule::base         ? "base"
                  : s.rule == step_rule::blei_split ? "blei-split"
                                                    : "baseline";
    row["kind"] = s.split ? json(to_string(s.split->kind)) : json(nullptr);
    row["first"] = s.split ? json(s.split->first) : json(nullptr);
    row["second"] = s.split ? json(s.split->second) : json(nullptr);
    row["s1"] = s.split ? rational_json(s.split->s1) : json(nullptr);
    row["s2"] = s.split ? rational_json(s.split->s2) : json(nullptr);
    row["w"] = s.split ? rational_json(s.split->w) : json(nullptr);
    row["f1"] = s.split ? rational_json(s.split->f1) : json(nullptr);
    row["f2"] = s.split ? rational_json(s.split->f2) : json(nullptr);
    json ks = json::array();
    for (const khinchine_use& u : s.khinchine) {
      json kj;
      kj["p"] = rational_json(u.p);
      kj["value"] = u.value;
      kj["branch"] = to_string(u.branch);
      kj["exponent"] = rational_json(u.exponent);
      kj["power"] = u.power;
      ks.push_back(kj);
    }
    row["khinchine"] = ks;
    row["value"] = s.value;
    row["exact"] = detail::exact_text(s.exact);
    d.rows.push_back(std::move(row));

    if (s.rule != step_rule::blei_split) {
      d.notes.push_back(s.note + " ≈ " + format_number(s.value, prec));
      continue;
    }
    const exponent_split& sp = *s.split;
    const khinchine_use& a1 = s.khinchine[0];
    const khinchine_use& a2 = s.khinchine[1];
    d.notes.push_back(
        name(s.level) + " = (" + name(sp.first) + " / A_(" + a1.p.str() + ")^" +
        std::to_string(a1.power) + ")^(" + sp.f1.str() + ") * (" + name(sp.second) +
        " / A_(" + a2.p.str() + ")^" + std::to_string(a2.power) + ")^(" +
        sp.f2.str() + ")");
    d.notes.push_back("    " + to_string(sp.kind) + " " + std::to_string(sp.first) +
                      "+" + std::to_string(sp.second) + ": q=" + sp.q.str() +
                      ", s1=" + sp.s1.str() + ", s2=" + sp.s2.str() +
                      ", w=" + sp.w.str() + ", f1=" + sp.f1.str() +
                      ", f2=" + sp.f2.str());
    d.notes.push_back("    " + detail::khinchine_text(a1, prec));
    if (a2.p != a1.p) d.notes.push_back("    " + detail::khinchine_text(a2, prec));
    std::string result = "    = ";
    if (s.exact) result += s.exact->str() + " ";
    result += "≈ " + format_number(s.value, prec);
    d.notes.push_back(result);
  }
  std::string final_line = name(r.m) + " = ";
  if (!r.symbolic.empty()) final_line += r.symbolic + " ";
  final_line += "≈ " + format_number(r.value, prec);
  d.notes.push_back(final_line);
  d.summary["value"] = r.value;
  d.summary["constant"] = constant_json(r);
  d.summary["replay"] = replay(r.trace);
  return d;
}

namespace detail {

struct trial_stats {
  int trials = 0;
  int passes = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int max_trial = -1;
  json ratios = json::array();

  void add(const verification_report& r, int trial, bool keep) {
    if (trials == 0 || r.ratio < min_ratio) min_ratio = r.ratio;
    if (trials == 0 || r.ratio > max_ratio) {
      max_ratio = r.ratio;
      max_trial = trial;
    }
    ++trials;
    if (r.pass) ++passes;
    if (keep) ratios.push_back(r.ratio);
  }

  void write(json& row, bool verbose) const {
    row["trials"] = trials;
    row["passes"] = passes;
    row["min_ratio"] = min_ratio;
    row["max_ratio"] = max_ratio;
    row["max_trial"] = max_trial;
    if (verbose) row["ratios"] = ratios;
  }
};

inline void require_trials(const run_config& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("--trials must be >= 1");
}

inline void record_failure(report_document& d, const verification_report& r,
                           const std::string& where) {
  if (r.certified && !r.pass) {
    d.failures.push_back(where + ": lhs " + format_full(r.lhs) + " > rhs " +
                         format_full(r.rhs) + " (digest " + r.digest + ")");
  }
}

inline report_document verify_khinchine(const run_config& cfg) {
  require_trials(cfg);
  if (cfg.n < 1 || cfg.n > kMaxRademacherLength)
    throw std::invalid_argument("--n must lie in [1, 20]");
  std::vector<std::pair<std::optional<rational>, double>> ps;
  if (cfg.p_value) {
    if (!(*cfg.p_value > 0.0)) throw std::invalid_argument("--p must be positive");
    ps.emplace_back(cfg.p, *cfg.p_value);
  } else {
    for (const rational& p : {rational(1), rational(4, 3), rational(3, 2),
                              rational(5, 3), rational(2)})
      ps.emplace_back(p, p.to_double());
  }
  report_document d;
  d.config = cfg;
  d.title = "Khinchine inequality, exact Rademacher averages, N = " + std::to_string(cfg.n);
  d.columns = {{"p", "p", cell_style::number},     {"trials", "trials", cell_style::integer},
               {"passes", "passes", cell_style::integer}, {"A_p", "A_p", cell_style::number},
               {"min_ratio", "min ratio", cell_style::number},
               {"max_ratio", "max ratio", cell_style::number},
               {"B_p", "B_p", cell_style::number}};
  std::mt19937_64 rng(cfg.seed);
  for (const auto& [p_exact, p] : ps) {
    trial_stats stats;
    for (int t = 0; t < cfg.trials; ++t) {
      std::vector<double> a(cfg.n);
      for (double& x : a) x = uniform_pm1(rng);
      verification_report r = khinchine_check(std::span<const double>(a), p);
      r.seed = cfg.seed;
      stats.add(r, t, cfg.verbose);
      record_failure(d, r, "khinchine p=" + format_full(p) + " trial " + std::to_string(t));
    }
    const khinchine_lower a_p = khinchine_A(p);
    json row;
    row["p"] = p;
    row["p_exact"] = rational_json(p_exact);
    row["A_p"] = a_p.value;
    row["branch"] = to_string(a_p.branch);
    row["B_p"] = khinchine_B(p);
    stats.write(row, cfg.verbose);
    d.rows.push_back(std::move(row));
  }
  return d;
}

inline report_document verify_blei(const run_config& cfg) {
  require_trials(cfg);
  report_document d;
  d.config = cfg;
  d.title = "Blei inequality, random positive matrices up to 6x8, q = 2";
  d.columns = {{"trials", "trials", cell_style::integer},
               {"passes", "passes", cell_style::integer},
               {"min_ratio", "min ratio", cell_style::number},
               {"max_ratio", "max ratio", cell_style::number}};
  std::mt19937_64 rng(cfg.seed);
  trial_stats stats;
  for (int t = 0; t < cfg.trials; ++t) {
    const std::size_t rows = 1 + rng() % 6;
    const std::size_t cols = 1 + rng() % 8;
    const real_form a = random_positive_matrix(rows, cols, rng);
    const double s1 = 1.0 + 0.9 * uniform01(rng);
    const double s2 = 1.0 + 0.9 * uniform01(rng);
    verification_report r = blei_check(a, 2.0, s1, s2);
    r.seed = cfg.seed;
    stats.add(r, t, cfg.verbose);
    record_failure(d, r, "blei trial " + std::to_string(t));
  }
  json row;
  row["q"] = 2.0;
  stats.write(row, cfg.verbose);
  d.rows.push_back(std::move(row));
  return d;
}

inline int verify_level(const run_config& cfg) {
  const int m = cfg.m.value_or(2);
  if (m < 2) throw std::invalid_argument("--m must be >= 2");
  if (cfg.dim < 1) throw std::invalid_argument("--dim must be >= 1");
  if (static_cast<std::size_t>(m - 1) * cfg.dim > kMaxVertexBits)
    throw std::invalid_argument("--m/--dim exceed the sign-vertex budget (2^24)");
  return m;
}

// Every fourth trial draws +-1 coefficients; these include Littlewood-type
// sign patterns where the inequality is tight.
template <class T>
multilinear_form<T> trial_form(const std::vector<std::size_t>& dims, int t,
                               std::mt19937_64& rng) {
  if constexpr (is_complex_v<T>) {
    return random_form<T>(dims, rng);
  } else {
    if (t % 4 == 0) return random_sign_form(dims, rng);
    return random_form<T>(dims, rng);
  }
}

inline report_document verify_bh(const run_config& cfg) {
  require_trials(cfg);
  const int m = verify_level(cfg);
  const strategy strat = resolve_strategy(cfg, strategy::best);
  const constant_record c = compute_constant(m, cfg.field, strat);
  const std::vector<std::size_t> dims(static_cast<std::size_t>(m), cfg.dim);
  report_document d;
  d.config = cfg;
  const bool real = cfg.field == scalar_field::real;
  d.title = "Bohnenblust-Hille, m = " + std::to_string(m) + ", N = " +
            std::to_string(cfg.dim) + ", " + to_string(cfg.field) +
            (real ? " (certified)" : " (diagnostic: sup norm is a lower bound)");
  d.columns = {{"m", "m", cell_style::integer},
               {"dim", "N", cell_style::integer},
               {"trials", "trials", cell_style::integer},
               {"passes", "passes", cell_style::integer},
               {"max_ratio", "max ratio", cell_style::number},
               {"constant", "constant", cell_style::constant},
               {"certified", "certified", cell_style::boolean}};
  std::mt19937_64 rng(cfg.seed);
  trial_stats stats;
  for (int t = 0; t < cfg.trials; ++t) {
    verification_report r;
    if (real) {
      r = bh_check(trial_form<double>(dims, t, rng), c);
    } else {
      r = bh_check(trial_form<complex_t>(dims, t, rng), c, 4,
                   cfg.seed + static_cast<std::uint64_t>(t));
    }
    r.seed = cfg.seed;
    stats.add(r, t, cfg.verbose);
    record_failure(d, r, "bh trial " + std::to_string(t));
  }
  json row;
  row["field"] = to_string(cfg.field);
  row["m"] = m;
  row["dim"] = cfg.dim;
  row["constant"] = constant_json(c);
  row["certified"] = real;
  stats.write(row, cfg.verbose);
  d.rows.push_back(std::move(row));
  return d;
}

inline report_document verify_summing(const run_config& cfg) {
  require_trials(cfg);
  if (cfg.field != scalar_field::real)
    throw std::invalid_argument("verify summing supports --field real only");
  const int m = verify_level(cfg);
  const strategy strat = resolve_strategy(cfg, strategy::best);
  const constant_record c = compute_constant(m, cfg.field, strat);
  const double p = bh_exponent(m).to_double();
  const std::vector<std::size_t> dims(static_cast<std::size_t>(m), cfg.dim);
  report_document d;
  d.config = cfg;
  d.title = "Multiple (p;1)-summing, m = " + std::to_string(m) + ", N = " +
            std::to_string(cfg.dim) + ", p = " + bh_exponent(m).str();
  d.columns = {{"m", "m", cell_style::integer},
               {"dim", "N", cell_style::integer},
               {"trials", "trials", cell_style::integer},
               {"passes", "passes", cell_style::integer},
               {"max_ratio", "max ratio", cell_style::number},
               {"constant", "constant", cell_style::constant}};
  std::mt19937_64 rng(cfg.seed);
  trial_stats stats;
  for (int t = 0; t < cfg.trials; ++t) {
    const real_form a = trial_form<double>(dims, t, rng);
    std::vector<vector_family<double>> fams;
    for (int k = 0; k < m; ++k)
      fams.push_back(random_family<double>(cfg.dim, 1 + rng() % (cfg.dim + 2), rng));
    verification_report r = multiple_summing_check(a, fams, p, c);
    r.seed = cfg.seed;
    stats.add(r, t, cfg.verbose);
    record_failure(d, r, "summing trial " + std::to_string(t));
  }
  json row;
  row["m"] = m;
  row["dim"] = cfg.dim;
  row["p"] = p;
  row["p_exact"] = rational_json(bh_exponent(m));
  row["constant"] = constant_json(c);
  stats.write(row, cfg.verbose);
  d.rows.push_back(std::move(row));
  return d;
}

}  // namespace detail

inline report_document cmd_verify(const run_config& cfg) {
  if (!cfg.target) throw std::invalid_argument("verify needs a target");
  switch (*cfg.target) {
    case verify_target::khinchine: return detail::verify_khinchine(cfg);
    case verify_target::blei: return detail::verify_blei(cfg);
    case verify_target::bh: return detail::verify_bh(cfg);
    case verify_target::summing: return detail::verify_summing(cfg);
  }
  throw std::invalid_argument("unknown verify target");
}

inline report_document cmd_search(const run_config& cfg) {
  const int m = cfg.m.value_or(2);
  if (m < 1) throw std::invalid_argument("--m must be >= 1");
  if (cfg.dim < 1) throw std::invalid_argument("--dim must be >= 1");
  if (cfg.budget < 1) throw std::invalid_argument("--budget must be >= 1");
  if (static_cast<std::size_t>(m - 1) * cfg.dim > kMaxVertexBits)
    throw std::invalid_argument("--m/--dim exceed the sign-vertex budget (2^24)");
  const search_result s = extremal_search(m, cfg.dim, cfg.field, cfg.budget, cfg.seed);

  report_document d;
  d.config = cfg;
  d.title = "Extremal search, m = " + std::to_string(m) + ", N = " +
            std::to_string(cfg.dim) + ", " + to_string(cfg.field);
  d.columns = {{"m", "m", cell_style::integer},
               {"dim", "N", cell_style::integer},
               {"best_ratio", "best ratio", cell_style::number},
               {"upper", "upper", cell_style::number},
               {"gap", "gap", cell_style::number},
               {"restarts", "restarts", cell_style::integer},
               {"evaluations", "evaluations", cell_style::integer},
               {"certified", "certified", cell_style::boolean}};
  json row;
  row["field"] = to_string(cfg.field);
  row["m"] = m;
  row["dim"] = cfg.dim;
  row["best_ratio"] = s.report.ratio;
  row["upper"] = s.upper;
  row["gap"] = s.gap;
  row["restarts"] = s.restarts;
  row["evaluations"] = s.evaluations;
  row["best_restart"] = s.best_restart;
  row["certified"] = s.report.certified;
  row["digest"] = s.report.digest;
  row["constant"] = constant_ref_json(s.report.constant_used);
  json re = json::array();
  json im = json::array();
  for (const complex_t& c : s.tensor) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  row["tensor"]["dims"] = s.dims;
  row["tensor"]["re"] = re;
  if (cfg.field == scalar_field::complex) row["tensor"]["im"] = im;
  d.rows.push_back(std::move(row));

  std::string t = "attaining tensor (row-major):";
  for (const complex_t& c : s.tensor) {
    t += " " + format_number(c.real(), cfg.precision);
    if (cfg.field == scalar_field::complex)
      t += (c.imag() < 0 ? "-" : "+") + format_number(std::abs(c.imag()), cfg.precision) + "i";
  }
  d.notes.push_back(t);
  detail::record_failure(d, s.report, "search sandwich");
  return d;
}

/// Runs one command and stamps the wall time.
inline report_document run_command(const run_config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  report_document d;
  switch (cfg.command) {
    case command_kind::constants: d = cmd_constants(cfg); break;
    case command_kind::explain: d = cmd_explain(cfg); break;
    case command_kind::baselines: d = cmd_baselines(cfg); break;
    case command_kind::verify: d = cmd_verify(cfg); break;
    case command_kind::search: d = cmd_search(cfg); break;
  }
  d.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return d;
}

}  // namespace bhc

#endif  // BHC_REPORT_HPP
