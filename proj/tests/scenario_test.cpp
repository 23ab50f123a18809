// Copyright 2026 The wexpand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wexpand/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using namespace wexpand;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = WEXPAND_CONFIG_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wexpand_scenario_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

ExperimentConfig small_w3(std::uint64_t seed) {
  ExperimentConfig c = default_config("w3");
  c.seed = seed;
  c.n_resamples = 4;
  return c;
}

}  // namespace

TEST(Config, round_trips_through_json) {
  for (const char* s : {"hom", "w3", "w4", "scaling"}) {
    ExperimentConfig c = default_config(s);
    c.seed = 99;
    c.metadata["note"] = "x";
    if (c.scenario == "hom") c.target_visibility.reset();
    EXPECT_EQ(config_from_json(to_json(c)), c) << s;
    EXPECT_EQ(parse_config(to_json(c).dump()), c) << s;
  }
}

TEST(Config, shipped_configs_load) {
  for (const char* name : {"w3", "w4", "hom", "scaling", "w3_physical"}) {
    EXPECT_NO_THROW(load_config(kConfigs / (std::string(name) + ".json"))) << name;
  }
  const ExperimentConfig w3 = load_config(kConfigs / "w3.json");
  EXPECT_EQ(w3.flux_per_setting, 104.0);
  EXPECT_EQ(w3.metadata.at("pump"), "75 mW");
  EXPECT_EQ(w3.metadata.at("acquisition_per_setting"), "5220 s");
}

TEST(Config, rejects_unknown_and_misplaced_fields) {
  EXPECT_NE(error_of(R"({"scenario": "w3", "seed": 1, "flux": 3})").find("unknown field 'flux'"), std::string::npos);
  EXPECT_NE(error_of(R"({"scenario": "scaling", "nu": 0.3})").find("does not apply to scenario 'scaling'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"scenario": "hom", "max_n": 3})").find("'max_n'"), std::string::npos);
  EXPECT_NE(error_of(R"({"scenario": "w5"})").find("unknown scenario"), std::string::npos);
  EXPECT_NE(error_of(R"({"seed": 1})").find("'scenario'"), std::string::npos);
}

TEST(Config, rejects_bad_values) {
  EXPECT_NE(error_of(R"({"scenario": "w3"})").find("'seed'"), std::string::npos);
  EXPECT_EQ(error_of(R"({"scenario": "w3", "exact": true})"), "");
  EXPECT_NE(error_of(R"({"scenario": "w3", "seed": -4})").find("'seed'"), std::string::npos);
  EXPECT_NE(error_of(R"({"scenario": "w3", "seed": 1, "nu": "big"})").find("'nu'"), std::string::npos);
  EXPECT_NE(error_of(R"({"scenario": "w3", "seed": 1, "n_resamples": 1})").find("'n_resamples'"), std::string::npos);
  EXPECT_NE(error_of(R"({"scenario": "w4", "seed": 1, "sources": "laser"})").find("'sources'"), std::string::npos);
  EXPECT_NE(error_of(R"({"scenario": "scaling", "max_n": 9})").find("'max_n'"), std::string::npos);
  EXPECT_NE(error_of(R"({"scenario": "hom", "target_visibility": 1.2})").find("'target_visibility'"),
            std::string::npos);
}

TEST(Config, syntax_error_reports_line) {
  const std::string msg = error_of("{\n  \"scenario\": \"w3\",\n  \"seed\": 1,,\n}");
  EXPECT_EQ(msg.rfind("cfg.json:3:", 0), 0u) << msg;
}

TEST(Config, hash_ignores_output_only) {
  ExperimentConfig a = small_w3(1);
  ExperimentConfig b = a;
  b.output = "elsewhere.json";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.seed = 2;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).rfind("fnv1a64:", 0), 0u);
}

TEST(Scenario, scaling_rows_match_formula) {
  ExperimentConfig c = default_config("scaling");
  c.max_n = 5;
  const Report rep = run_scenario(c);
  const auto& rows = rep.document.at("results").at("rows");
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& row : rows) {
    const int n = row.at("n").get<int>();
    EXPECT_NEAR(row.at("simulated").get<double>(), (n + 2.0) / (16.0 * n), 1e-10) << n;
    EXPECT_NEAR(row.at("fidelity").get<double>(), 1.0, 1e-10) << n;
  }
  EXPECT_EQ(rep.document.at("schema"), kReportSchema);
}

TEST(Scenario, circuit_file_reproduces_built_in_gate) {
  ExperimentConfig c = load_config(kConfigs / "scaling.json");
  c.max_n = 3;
  const auto builtin = run_scenario(c).document.at("results");
  c.circuit = (kConfigs / "gate_circuit.json").string();
  EXPECT_EQ(run_scenario(c).document.at("results"), builtin);
  c.circuit = (kConfigs / "missing.json").string();
  EXPECT_THROW(run_scenario(c), std::runtime_error);
}

TEST(Scenario, exact_w3_reconstructs_w_state) {
  ExperimentConfig c = default_config("w3");
  c.exact = true;
  const Report rep = run_scenario(c);
  const auto& res = rep.document.at("results");
  EXPECT_GE(res.at("fidelity").get<double>(), 0.999);
  EXPECT_LE(res.at("witness").get<double>(), -0.33);
  EXPECT_NEAR(res.at("postselection_probability").get<double>(), 3.0 / 16.0, 1e-12);
  EXPECT_EQ(res.at("pairwise_eof").size(), 3u);
  ASSERT_TRUE(rep.rho);
  EXPECT_TRUE(rep.csv.empty());
}

TEST(Scenario, exact_w4_reports_all_pairs) {
  ExperimentConfig c = default_config("w4");
  c.exact = true;
  const Report rep = run_scenario(c);
  const auto& eofs = rep.document.at("results").at("pairwise_eof");
  for (const char* k : {"04", "05", "06", "45", "46", "56"}) {
    ASSERT_TRUE(eofs.contains(k)) << k;
    EXPECT_NEAR(eofs.at(k).get<double>(), 0.3546, 5e-4) << k;
  }
  EXPECT_GE(rep.document.at("results").at("sigma01").at("fidelity").get<double>(), 0.999);
  EXPECT_TRUE(rep.seed_rho);
}

TEST(Scenario, sampled_counts_are_near_flux_per_setting) {
  const Report rep = run_scenario(small_w3(3));
  const double mean = rep.document.at("results").at("mean_counts_per_setting").get<double>();
  EXPECT_GT(mean, 80.0);
  EXPECT_LT(mean, 160.0);
  EXPECT_TRUE(rep.document.at("results").contains("bootstrap_errors"));
}

TEST(Scenario, hom_reports_calibrated_curve) {
  ExperimentConfig c = default_config("hom");
  c.delays_um = {-144.0, 0.0, 144.0};
  const Report rep = run_scenario(c);
  const auto& res = rep.document.at("results");
  EXPECT_NEAR(res.at("visibility").get<double>(), 0.85, 1e-9);
  EXPECT_EQ(res.at("curve").size(), 3u);
  EXPECT_LT(res.at("gaussian_max_relative_deviation").get<double>(), 1e-9);
}

TEST(Emit, identical_seeds_give_identical_files) {
  const fs::path dir = scratch("emit");
  const Report a = run_scenario(small_w3(11));
  const Report b = run_scenario(small_w3(11));
  const auto files_a = emit_report(a, dir / "a.json");
  const auto files_b = emit_report(b, dir / "b.json");
  ASSERT_EQ(files_a.size(), 3u);
  ASSERT_EQ(files_b.size(), 3u);
  for (std::size_t i = 0; i < files_a.size(); ++i) EXPECT_EQ(slurp(files_a[i]), slurp(files_b[i])) << files_a[i];
  EXPECT_EQ(files_a[1].filename(), "a.rho.json");
  EXPECT_EQ(files_a[2].filename(), "a.csv");

  const nlohmann::json doc = nlohmann::json::parse(slurp(files_a[0]));
  EXPECT_EQ(doc.at("config_hash"), config_hash(small_w3(11)));
  EXPECT_FALSE(doc.at("config").contains("output"));
  const DensityMatrix rho = density_matrix_from_json(nlohmann::json::parse(slurp(files_a[1])));
  EXPECT_LT(trace_distance(rho, *a.rho), 1e-15);

  EXPECT_NE(slurp(emit_report(run_scenario(small_w3(12)), dir / "c.json")[0]), slurp(files_a[0]));
}

TEST(Cli, runs_scenario_and_reports_errors) {
  const char* cli = std::getenv("WEXPAND_CLI");
  if (cli == nullptr) GTEST_SKIP() << "WEXPAND_CLI not set";
  const fs::path dir = scratch("cli");
  const std::string out = (dir / "w3.json").string();
  const std::string base = std::string("\"") + cli + "\" ";
  ASSERT_EQ(std::system((base + "w3 --exact --out \"" + out + "\" > \"" + (dir / "stdout.txt").string() + "\"").c_str()), 0);
  const nlohmann::json doc = nlohmann::json::parse(slurp(out));
  EXPECT_GE(doc.at("results").at("fidelity").get<double>(), 0.999);
  EXPECT_NE(slurp(dir / "stdout.txt").find("w3.rho.json"), std::string::npos);

  const std::string cfg = (kConfigs / "scaling.json").string();
  const std::string quiet = " 2> \"" + (dir / "stderr.txt").string() + "\"";
  EXPECT_NE(std::system((base + "w3 --out \"" + out + "\"" + quiet).c_str()), 0);
  EXPECT_NE(slurp(dir / "stderr.txt").find("'seed'"), std::string::npos);
  EXPECT_NE(std::system((base + "w3 --config \"" + cfg + "\"" + quiet).c_str()), 0);
  EXPECT_NE(slurp(dir / "stderr.txt").find("scaling"), std::string::npos);
  EXPECT_NE(std::system((base + "w9" + quiet).c_str()), 0);
}
