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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bhc/cli.hpp"

namespace {

using bhc::json;

struct cli_result {
  int code = 0;
  std::string out;
  std::string err;
};

cli_result run(const std::vector<std::string>& args, const char* env_seed = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = bhc::run_cli(args, out, err, env_seed);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, const char* env_seed = nullptr) {
  args.push_back("--format");
  args.push_back("json");
  const cli_result r = run(args, env_seed);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::string without_wall_time(json j) {
  j.erase("wall_time");
  return j.dump();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : s) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == sep && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"constants", "--max-m", "3"}).code, 0);
  EXPECT_EQ(run({"constants", "--max-m", "1"}).code, 2);
  EXPECT_EQ(run({"constants", "--min-m", "5", "--max-m", "4"}).code, 2);
  EXPECT_EQ(run({"constants", "--precision", "0"}).code, 2);
  EXPECT_EQ(run({"constants", "--precision", "13"}).code, 2);
  EXPECT_EQ(run({"constants", "--field", "quaternion"}).code, 2);
  EXPECT_EQ(run({"constants", "--strategy", "fastest"}).code, 2);
  EXPECT_EQ(run({"constants", "--field", "complex", "--strategy", "two-step"}).code, 2);
  EXPECT_EQ(run({"explain"}).code, 2);
  EXPECT_EQ(run({"explain", "--m", "1"}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"verify", "everything"}).code, 2);
  EXPECT_EQ(run({"verify", "khinchine", "--n", "21"}).code, 2);
  EXPECT_EQ(run({"verify", "khinchine", "--p", "-1"}).code, 2);
  EXPECT_EQ(run({"verify", "khinchine", "--p", "x/3"}).code, 2);
  EXPECT_EQ(run({"verify", "bh", "--trials", "0"}).code, 2);
  EXPECT_EQ(run({"verify", "bh", "--m", "3", "--dim", "13"}).code, 2);
  EXPECT_EQ(run({"verify", "summing", "--field", "complex"}).code, 2);
  EXPECT_EQ(run({"search", "--budget", "0"}).code, 2);
  EXPECT_EQ(run({"search", "--seed", "-3"}).code, 2);
  EXPECT_EQ(run({"search", "--seed", "12abc"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const cli_result help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("constants"), std::string::npos);
}

TEST(Cli, CertifiedFailureExitsOne) {
  bhc::report_document d;
  EXPECT_EQ(d.exit_code(), 0);
  bhc::constant_record too_small;
  too_small.m = 2;
  too_small.value = 1.0;
  const auto r = bhc::bh_check(bhc::littlewood_form(), too_small);
  EXPECT_FALSE(r.pass);
  bhc::detail::record_failure(d, r, "littlewood vs 1");
  ASSERT_EQ(d.failures.size(), 1u);
  EXPECT_EQ(d.exit_code(), 1);

  // Diagnostic reports never fail a run.
  bhc::verification_report diag = r;
  diag.certified = false;
  bhc::report_document d2;
  bhc::detail::record_failure(d2, diag, "diagnostic");
  EXPECT_EQ(d2.exit_code(), 0);
}

TEST(Constants, RealTableAndCompare) {
  const cli_result r =
      run({"constants", "--field", "real", "--strategy", "halving", "--max-m", "12", "--compare"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("12  3.5636  2^(11/6)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2^(77/24)"), std::string::npos);
  EXPECT_NE(r.out.find("baseline-kaijser"), std::string::npos);
}

TEST(Constants, SingleRow) {
  const json j = run_json({"constants", "--field", "real", "--strategy", "halving", "--max-m", "2"});
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["value"].get<double>(), std::numbers::sqrt2);
  EXPECT_EQ(j["rows"][0]["constant"]["exponent"]["num"], 1);
  EXPECT_EQ(j["rows"][0]["constant"]["exponent"]["den"], 2);
}

TEST(Constants, ComplexCompareColumns) {
  const json j = run_json(
      {"constants", "--field", "complex", "--strategy", "halving", "--max-m", "16", "--compare"});
  ASSERT_EQ(j["rows"].size(), 15u);
  const json& row16 = j["rows"][14];
  EXPECT_EQ(row16["m"], 16);
  EXPECT_NEAR(row16["value"].get<double>(), 2.873, 5e-3);
  EXPECT_NEAR(row16["compare"]["baseline-queffelec-ds"]["value"].get<double>(), 6.121, 5e-4);
  EXPECT_NEAR(row16["compare"]["baseline-kaijser"]["value"].get<double>(), 181.019, 5e-4);
  EXPECT_NEAR(row16["compare"]["baseline-original"]["value"].get<double>(), 789.612, 5e-4);
  EXPECT_EQ(row16["constant"]["exact"]["pow_dsp"]["num"], 3);
}

TEST(Constants, JsonRoundTrip) {
  const cli_result r = run({"constants", "--field", "complex", "--max-m", "10",
                            "--compare", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.dump(2) + "\n", r.out);
  EXPECT_EQ(j["schema_version"], "1");
  for (const json& row : j["rows"]) {
    const int m = row["m"].get<int>();
    EXPECT_EQ(row["value"].get<double>(),
              bhc::complex_halving(m).value);
  }
}

TEST(Constants, CsvMatchesJson) {
  const std::vector<std::string> base = {"constants", "--field", "real", "--max-m", "9",
                                         "--compare"};
  std::vector<std::string> csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  const cli_result csv = run(csv_args);
  ASSERT_EQ(csv.code, 0);
  const json j = run_json(base);

  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  const std::vector<std::string> header = split(line, ',');
  std::size_t row_index = 0;
  while (std::getline(lines, line)) {
    const std::vector<std::string> cells = split(line, ',');
    ASSERT_EQ(cells.size(), header.size());
    std::map<std::string, std::string> by_key;
    for (const auto& [k, v] : bhc::flatten_row(j["rows"][row_index])) by_key[k] = v;
    ASSERT_EQ(by_key.size(), header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      EXPECT_EQ(cells[c], by_key[header[c]]) << header[c];
      const json& leaf = bhc::lookup(j["rows"][row_index], header[c]);
      if (leaf.is_number_float()) {
        EXPECT_EQ(std::stod(cells[c]), leaf.get<double>()) << header[c];
      }
    }
    ++row_index;
  }
  EXPECT_EQ(row_index, j["rows"].size());
}

TEST(Baselines, SingleLevel) {
  const json j = run_json({"baselines", "--m", "3"});
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_NEAR(j["rows"][0]["baseline-original"]["value"].get<double>(), 4.160, 5e-3);
  EXPECT_EQ(j["rows"][0]["baseline-kaijser"]["value"].get<double>(), 2.0);
}

TEST(Explain, HalvingTwelve) {
  const cli_result r = run({"explain", "--field", "real", "--strategy", "halving", "--m", "12"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C_R(12) = 2^(11/6) ≈ 3.5636"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("A_(12/7) = 2^(-1/12)"), std::string::npos);
}

TEST(Explain, OddSplitNine) {
  const json j = run_json({"explain", "--m", "9"});
  const json& last = j["rows"].back();
  EXPECT_EQ(last["level"], 9);
  EXPECT_EQ(last["kind"], "odd-split");
  EXPECT_EQ(last["f1"]["num"], 4);
  EXPECT_EQ(last["f1"]["den"], 9);
  EXPECT_EQ(last["f2"]["num"], 5);
  EXPECT_EQ(last["f2"]["den"], 9);
  EXPECT_NEAR(j["summary"]["replay"].get<double>(), std::exp2(29.0 / 18.0), 1e-12);
}

TEST(Explain, OneStepBase) {
  const json j = run_json({"explain", "--strategy", "one-step", "--m", "2"});
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["rule"], "base");
  ASSERT_EQ(j["notes"].size(), 2u);
}

TEST(Verify, BhSuite) {
  const json j = run_json({"verify", "bh", "--field", "real", "--m", "2", "--dim", "2",
                           "--trials", "200", "--seed", "42"});
  const json& row = j["rows"][0];
  EXPECT_EQ(row["passes"], 200);
  EXPECT_NEAR(row["max_ratio"].get<double>(), std::numbers::sqrt2, 1e-9);
  EXPECT_TRUE(j["failures"].empty());
}

TEST(Verify, KhinchineTwo) {
  const json j = run_json({"verify", "khinchine", "--p", "2", "--n", "8", "--trials", "50"});
  const json& row = j["rows"][0];
  EXPECT_EQ(row["passes"], 50);
  EXPECT_NEAR(row["min_ratio"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(row["max_ratio"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(row["p_exact"]["num"], 2);
}

TEST(Verify, KhinchineDefaultExponents) {
  const json j = run_json({"verify", "khinchine", "--trials", "20"});
  ASSERT_EQ(j["rows"].size(), 5u);
  EXPECT_EQ(j["rows"][1]["p_exact"]["num"], 4);
  EXPECT_EQ(j["rows"][1]["p_exact"]["den"], 3);
}

TEST(Verify, BleiAndSumming) {
  const json blei = run_json({"verify", "blei", "--trials", "200", "--seed", "7"});
  EXPECT_EQ(blei["rows"][0]["passes"], 200);
  const json summing = run_json({"verify", "summing", "--m", "2", "--dim", "3", "--trials", "100"});
  EXPECT_EQ(summing["rows"][0]["passes"], 100);
}

TEST(Verify, VerboseRatios) {
  const json j = run_json({"verify", "blei", "--trials", "12", "--verbose"});
  ASSERT_TRUE(j["rows"][0].contains("ratios"));
  EXPECT_EQ(j["rows"][0]["ratios"].size(), 12u);
  const json quiet = run_json({"verify", "blei", "--trials", "12"});
  EXPECT_FALSE(quiet["rows"][0].contains("ratios"));
}

TEST(Verify, ComplexBhIsDiagnostic) {
  const json j = run_json({"verify", "bh", "--field", "complex", "--m", "2", "--dim", "2",
                           "--trials", "10"});
  EXPECT_EQ(j["rows"][0]["certified"], false);
}

TEST(Search, Littlewood) {
  const json j = run_json({"search", "--m", "2", "--dim", "2", "--budget", "1e5"});
  const json& row = j["rows"][0];
  EXPECT_GE(row["best_ratio"].get<double>(), 1.414213);
  EXPECT_LE(std::abs(row["gap"].get<double>()), 1e-6);
  EXPECT_EQ(row["tensor"]["re"].size(), 4u);
}

TEST(Search, CubicSandwichAndLinear) {
  const json cubic = run_json({"search", "--m", "3", "--dim", "2", "--budget", "1e5"});
  EXPECT_LE(cubic["rows"][0]["best_ratio"].get<double>(), std::exp2(5.0 / 6.0) + 1e-9);
  const json linear = run_json({"search", "--m", "1", "--dim", "4"});
  EXPECT_EQ(linear["rows"][0]["best_ratio"].get<double>(), 1.0);
}

TEST(Determinism, IdenticalJson) {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{
           {"verify", "bh", "--m", "3", "--dim", "2", "--trials", "30", "--verbose"},
           {"search", "--m", "2", "--dim", "3", "--budget", "5000"},
           {"constants", "--field", "complex", "--max-m", "9", "--compare"}}) {
    EXPECT_EQ(without_wall_time(run_json(args)), without_wall_time(run_json(args)));
  }
}

TEST(Seeds, EnvironmentOverride) {
  const std::vector<std::string> args = {"verify", "bh", "--trials", "20", "--verbose"};
  const json from_env = run_json(args, "7");
  std::vector<std::string> with_flag = args;
  with_flag.insert(with_flag.end(), {"--seed", "7"});
  const json from_flag = run_json(with_flag);
  EXPECT_EQ(from_env["config"]["seed"], 7u);
  EXPECT_EQ(from_env["rows"], from_flag["rows"]);

  EXPECT_EQ(run_json(args)["config"]["seed"], 42u);
  with_flag.back() = "9";
  EXPECT_EQ(run_json(with_flag, "7")["config"]["seed"], 9u);
  EXPECT_EQ(run(args, "seven").code, 2);
  const std::string big = "18446744073709551615";
  EXPECT_EQ(run_json({"search", "--budget", "100", "--seed", big})["config"]["seed"],
            18446744073709551615ULL);
}

TEST(Formatting, Precision) {
  const cli_result r = run({"constants", "--max-m", "12", "--precision", "2"});
  EXPECT_NE(r.out.find("12  3.56  "), std::string::npos) << r.out;
  EXPECT_EQ(bhc::format_fixed(0.125, 2), "0.12");
  EXPECT_EQ(bhc::format_fixed(0.375, 2), "0.38");
  EXPECT_EQ(bhc::format_full(0.1), "0.10000000000000001");
}

TEST(Parsing, Exponents) {
  auto [r1, v1] = bhc::parse_exponent("4/3");
  ASSERT_TRUE(r1);
  EXPECT_EQ(*r1, bhc::rational(4, 3));
  EXPECT_EQ(v1, 4.0 / 3.0);
  auto [r2, v2] = bhc::parse_exponent("1.5");
  ASSERT_TRUE(r2);
  EXPECT_EQ(*r2, bhc::rational(3, 2));
  EXPECT_EQ(v2, 1.5);
  auto [r3, v3] = bhc::parse_exponent("1e-1");
  EXPECT_FALSE(r3);
  EXPECT_EQ(v3, 0.1);
  EXPECT_THROW(bhc::parse_exponent("1.5x"), std::invalid_argument);
  EXPECT_THROW(bhc::parse_exponent("3/0"), std::domain_error);
  EXPECT_EQ(bhc::parse_count("1e5", "--budget"), 100000);
  EXPECT_THROW(bhc::parse_count("2.5", "--budget"), std::invalid_argument);
}

}  // namespace
