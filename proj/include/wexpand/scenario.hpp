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

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "wexpand/entanglement.hpp"
#include "wexpand/gates.hpp"
#include "wexpand/hom.hpp"
#include "wexpand/physical.hpp"
#include "wexpand/tomography.hpp"

#ifndef WEXPAND_VERSION
#define WEXPAND_VERSION "0.0.0"
#endif

namespace wexpand {

inline constexpr const char* kReportSchema = "wexpand.report/1";

struct ExperimentConfig {
  std::string scenario;  // hom | w3 | w4 | scaling
  double nu = 0.3;
  double gamma = 1e-3;
  double overlap = 1.0;
  double flux_per_setting = 104.0;
  int n_resamples = 100;
  std::optional<std::uint64_t> seed;
  bool exact = false;
  std::string sources = "ideal";  // ideal | physical
  double coherence_length_um = 144.0;
  std::optional<double> target_visibility;
  std::vector<double> delays_um;  // empty: -3 l_c .. 3 l_c in steps of l_c / 10
  int max_n = 8;
  std::string circuit;  // optional path to a circuit JSON file
  std::string output;
  std::map<std::string, std::string> metadata;

  bool sampling() const { return (scenario == "w3" || scenario == "w4") && !exact; }
  bool operator==(const ExperimentConfig&) const = default;
};

/// Defaults for each scenario, taken from the quoted experimental settings.
inline ExperimentConfig default_config(const std::string& scenario) {
  ExperimentConfig c;
  c.scenario = scenario;
  if (scenario == "hom") {
    c.nu = 0.03;
    c.target_visibility = 0.85;
  } else if (scenario == "w3") {
    c.flux_per_setting = 104.0;  // 0.02 counts/s over 5220 s
  } else if (scenario == "w4") {
    c.flux_per_setting = 85.6;  // 0.02 counts/s over 4280 s
    c.n_resamples = 50;
  } else if (scenario != "scaling") {
    throw std::invalid_argument("config field 'scenario': unknown scenario '" + scenario +
                                "' (expected hom, w3, w4 or scaling)");
  }
  return c;
}

namespace detail {

inline const std::set<std::string>& fields_for(const std::string& scenario) {
  static const std::map<std::string, std::set<std::string>> table = {
      {"hom", {"nu", "gamma", "overlap", "coherence_length_um", "target_visibility", "delays_um"}},
      {"w3", {"nu", "gamma", "overlap", "flux_per_setting", "n_resamples", "exact", "sources", "circuit"}},
      {"w4", {"nu", "gamma", "overlap", "flux_per_setting", "n_resamples", "exact", "sources", "circuit"}},
      {"scaling", {"overlap", "max_n", "circuit"}},
  };
  return table.at(scenario);
}

inline const std::set<std::string>& common_fields() {
  static const std::set<std::string> s = {"scenario", "seed", "output", "metadata"};
  return s;
}

template <class T>
T field(const nlohmann::json& j, const std::string& name, const char* expected) {
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("config field '" + name + "': expected " + expected);
  }
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace detail

inline void validate(const ExperimentConfig& c) {
  default_config(c.scenario);
  auto fail = [](const std::string& f, const std::string& why) {
    throw std::invalid_argument("config field '" + f + "': " + why);
  };
  if (!(c.nu >= 0.0)) fail("nu", "must be >= 0");
  if (!(c.gamma >= 0.0 && c.gamma < 1.0)) fail("gamma", "must be in [0, 1)");
  if (!(c.overlap >= 0.0 && c.overlap <= 1.0)) fail("overlap", "must be in [0, 1]");
  if (!(c.flux_per_setting > 0.0)) fail("flux_per_setting", "must be > 0");
  if (c.n_resamples < 0 || c.n_resamples == 1) fail("n_resamples", "must be 0 (no bootstrap) or >= 2");
  if (c.sources != "ideal" && c.sources != "physical") fail("sources", "expected 'ideal' or 'physical'");
  if (!(c.coherence_length_um > 0.0)) fail("coherence_length_um", "must be > 0");
  if (c.target_visibility && !(*c.target_visibility > 0.0 && *c.target_visibility < 1.0)) {
    fail("target_visibility", "must be in (0, 1)");
  }
  if (c.max_n < 1 || c.max_n > 8) fail("max_n", "must be in 1..8");
  if (c.sampling() && !c.seed) fail("seed", "required for sampled scenario '" + c.scenario + "' (or set exact)");
  if (c.scenario == "w3" || c.scenario == "w4") {
    if (c.sources == "physical" && c.nu == 0.0) fail("nu", "physical sources need nu > 0");
    if (c.sources == "physical" && c.gamma == 0.0) fail("gamma", "physical sources need gamma > 0");
  }
  if (c.scenario == "hom" && (c.nu == 0.0 || c.gamma == 0.0)) fail("nu", "hom scan needs nu > 0 and gamma > 0");
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["scenario"] = c.scenario;
  if (c.seed) j["seed"] = *c.seed;
  if (!c.output.empty()) j["output"] = c.output;
  if (!c.metadata.empty()) j["metadata"] = c.metadata;
  const auto& fields = detail::fields_for(c.scenario);
  auto put = [&](const std::string& name, const nlohmann::json& v) {
    if (fields.count(name)) j[name] = v;
  };
  put("nu", c.nu);
  put("gamma", c.gamma);
  put("overlap", c.overlap);
  put("flux_per_setting", c.flux_per_setting);
  put("n_resamples", c.n_resamples);
  put("exact", c.exact);
  put("sources", c.sources);
  put("coherence_length_um", c.coherence_length_um);
  put("target_visibility", c.target_visibility ? nlohmann::json(*c.target_visibility) : nlohmann::json(nullptr));
  if (!c.delays_um.empty()) put("delays_um", c.delays_um);
  put("max_n", c.max_n);
  if (!c.circuit.empty()) put("circuit", c.circuit);
  return j;
}

/// Strict parse: unknown fields and fields that do not apply to the chosen
/// scenario are errors.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  if (!j.contains("scenario")) throw std::invalid_argument("config field 'scenario': missing");
  ExperimentConfig c = default_config(detail::field<std::string>(j, "scenario", "a string"));
  const auto& allowed = detail::fields_for(c.scenario);
  for (const auto& [key, value] : j.items()) {
    if (detail::common_fields().count(key) || allowed.count(key)) continue;
    static const std::set<std::string> known = {"nu", "gamma", "overlap", "flux_per_setting", "n_resamples",
                                                "exact", "sources", "coherence_length_um", "target_visibility",
                                                "delays_um", "max_n", "circuit"};
    if (known.count(key)) {
      throw std::invalid_argument("config field '" + key + "': does not apply to scenario '" + c.scenario + "'");
    }
    throw std::invalid_argument("config: unknown field '" + key + "'");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw std::invalid_argument("config field 'seed': expected an unsigned 64-bit integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("output")) c.output = detail::field<std::string>(j, "output", "a string");
  if (j.contains("metadata")) c.metadata = detail::field<std::map<std::string, std::string>>(j, "metadata", "an object of strings");
  if (j.contains("nu")) c.nu = detail::field<double>(j, "nu", "a number");
  if (j.contains("gamma")) c.gamma = detail::field<double>(j, "gamma", "a number");
  if (j.contains("overlap")) c.overlap = detail::field<double>(j, "overlap", "a number");
  if (j.contains("flux_per_setting")) c.flux_per_setting = detail::field<double>(j, "flux_per_setting", "a number");
  if (j.contains("n_resamples")) c.n_resamples = detail::field<int>(j, "n_resamples", "an integer");
  if (j.contains("exact")) c.exact = detail::field<bool>(j, "exact", "a boolean");
  if (j.contains("sources")) c.sources = detail::field<std::string>(j, "sources", "a string");
  if (j.contains("coherence_length_um")) {
    c.coherence_length_um = detail::field<double>(j, "coherence_length_um", "a number");
  }
  if (j.contains("target_visibility")) {
    if (j.at("target_visibility").is_null()) {
      c.target_visibility.reset();
    } else {
      c.target_visibility = detail::field<double>(j, "target_visibility", "a number or null");
    }
  }
  if (j.contains("delays_um")) c.delays_um = detail::field<std::vector<double>>(j, "delays_um", "an array of numbers");
  if (j.contains("max_n")) c.max_n = detail::field<int>(j, "max_n", "an integer");
  if (j.contains("circuit")) c.circuit = detail::field<std::string>(j, "circuit", "a string");
  if (j.contains("n_resamples") && !j.at("n_resamples").is_number_integer()) {
    throw std::invalid_argument("config field 'n_resamples': expected an integer");
  }
  validate(c);
  return c;
}

/// Parses config text; syntax errors report line and column.
inline ExperimentConfig parse_config(const std::string& text, const std::string& source = "config") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw std::invalid_argument(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                ": JSON syntax error");
  }
  try {
    return config_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(source + ": " + e.what());
  }
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig c = parse_config(ss.str(), path.string());
  if (!c.circuit.empty() && std::filesystem::path(c.circuit).is_relative()) {
    c.circuit = (path.parent_path() / c.circuit).lexically_normal().string();
  }
  return c;
}

/// Hash of the canonical config text, output path excluded.
inline std::string config_hash(const ExperimentConfig& c) {
  nlohmann::json j = to_json(c);
  j.erase("output");
  return "fnv1a64:" + detail::hex64(detail::fnv1a64(j.dump()));
}

struct Report {
  nlohmann::json document;
  std::optional<DensityMatrix> rho;       // main reconstructed state
  std::optional<DensityMatrix> seed_rho;  // w4: reconstructed two-photon seed
  std::string csv;                        // hom curve, counts or scaling table
};

namespace detail {

inline nlohmann::json annotated(double value, double error) { return {{"value", value}, {"error", error}}; }

inline std::optional<Circuit> load_circuit(const ExperimentConfig& c) {
  if (c.circuit.empty()) return std::nullopt;
  std::ifstream in(c.circuit);
  if (!in) throw std::runtime_error("cannot read circuit file " + c.circuit);
  try {
    return circuit_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("circuit file " + c.circuit + ": " + e.what());
  }
}

inline SourceParams source_params(const ExperimentConfig& c) {
  SourceParams p;
  p.nu = c.nu;
  p.gamma = c.gamma;
  p.overlap = c.overlap;
  p.coherence_length_um = c.coherence_length_um;
  p.spdc_second_order = true;
  return p;
}

struct Tomography {
  ReconstructionResult rec;
  std::vector<CountRecord> counts;
  Statistics errors;
};

/// flux_per_setting is the count a setting collects when its projector
/// probability is the maximally mixed 1/2^n, so a typical setting sees about
/// flux counts. sample_counts takes the rate per unit probability.
inline double counts_per_unit_probability(const ExperimentConfig& c, int n_qubits) {
  return c.flux_per_setting * std::ldexp(1.0, n_qubits);
}

template <class StatisticFn>
Tomography run_tomography(const DensityMatrix& truth, const ExperimentConfig& c, std::uint64_t stream,
                          StatisticFn statistic) {
  const auto settings = default_settings(static_cast<int>(truth.num_qubits()));
  ImlmOptions opt;
  opt.qubit_order = truth.qubit_order();
  opt.keep_trace = false;
  if (c.exact) {
    std::vector<double> obs;
    for (const auto& s : settings) obs.push_back(expected_probability(truth, s));
    return {imlm_reconstruct(settings, obs, opt), {}, {}};
  }
  std::vector<CountRecord> counts = sample_counts(truth, settings, counts_per_unit_probability(c, static_cast<int>(truth.num_qubits())), derive_seed(*c.seed, stream));
  ReconstructionResult rec = imlm_reconstruct(counts, opt);
  Statistics errors;
  if (c.n_resamples >= 2) errors = bootstrap_errors(counts, c.n_resamples, derive_seed(*c.seed, stream + 1), statistic, opt);
  return {std::move(rec), std::move(counts), std::move(errors)};
}

inline double mean_counts(const std::vector<CountRecord>& counts) {
  double total = 0.0;
  for (const auto& r : counts) total += static_cast<double>(r.count);
  return counts.empty() ? 0.0 : total / static_cast<double>(counts.size());
}

inline nlohmann::json imlm_summary(const ReconstructionResult& r) {
  return {{"iterations", r.iterations}, {"converged", r.converged}, {"log_likelihood", r.log_likelihood}};
}

inline nlohmann::json eof_json(const PairwiseEofTable& t) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [pair, value] : t) j[pair_key(pair)] = value;
  return j;
}

inline Statistics state_statistics(const DensityMatrix& rho, int n) {
  Statistics s{{"fidelity", fidelity(rho, w_state_qubits(n))}, {"witness", witness_value(rho, n)}};
  for (const auto& [pair, value] : pairwise_eof_table(rho)) s["eof_" + pair_key(pair)] = value;
  return s;
}

inline std::string counts_csv(const std::vector<CountRecord>& counts) {
  std::ostringstream os;
  write_counts_csv(os, counts);
  return os.str();
}

inline Report run_scaling(const ExperimentConfig& c) {
  ExpansionOptions opt;
  opt.ancilla_overlap = c.overlap;
  opt.circuit = load_circuit(c);
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,analytic,simulated,fidelity\n";
  for (int n = 1; n <= c.max_n; ++n) {
    const ExpansionResult r = expand_w(n, opt);
    const double f = fidelity(r.rho, w_state_qubits(n + 2));
    rows.push_back({{"n", n}, {"analytic", success_probability_analytic(n)}, {"simulated", r.probability}, {"fidelity", f}});
    csv << n << ',' << success_probability_analytic(n) << ',' << r.probability << ',' << f << '\n';
  }
  Report rep;
  rep.document["results"] = {{"rows", rows}};
  rep.document["reference"] = {{"probability_n1", 3.0 / 16.0}, {"probability_n2", 1.0 / 8.0},
                               {"formula", "(N+2)/(16N)"}};
  rep.csv = csv.str();
  return rep;
}

inline Report run_hom(const ExperimentConfig& c) {
  SourceParams p = source_params(c);
  p.spdc_second_order = false;
  nlohmann::json fit = nlohmann::json::object();
  if (c.target_visibility) {
    const HomCalibration cal = calibrate_hom(p, *c.target_visibility);
    p.overlap = cal.overlap;
    p.exponent_scale = cal.exponent_scale;
    fit = {{"overlap", cal.overlap}, {"exponent_scale", cal.exponent_scale}, {"visibility", cal.visibility}};
  }
  std::vector<double> delays = c.delays_um;
  if (delays.empty()) {
    for (int k = -30; k <= 30; ++k) delays.push_back(k * c.coherence_length_um / 10.0);
  }
  const auto curve = hom_scan(delays, p);
  const double far = hom_coincidence_at_overlap(p, 0.0);
  const double visibility = hom_visibility(p);
  double worst = 0.0;
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : curve) {
    const double x = pt.delay_um / c.coherence_length_um;
    const double gaussian = far * (1.0 - visibility * std::exp(-x * x));
    worst = std::max(worst, std::abs(pt.coincidence_probability - gaussian) / gaussian);
    points.push_back({{"delay_um", pt.delay_um}, {"coincidence_probability", pt.coincidence_probability}});
  }
  Report rep;
  rep.document["results"] = {{"visibility", visibility},
                             {"asymptote", far},
                             {"overlap", p.overlap},
                             {"exponent_scale", p.exponent_scale},
                             {"fit", fit},
                             {"gaussian_max_relative_deviation", worst},
                             {"curve", points}};
  rep.document["reference"] = {{"visibility", 0.85}, {"coherence_length_um", 144.0}, {"nu", 0.03}};
  std::ostringstream os;
  write_hom_csv(os, curve);
  rep.csv = os.str();
  return rep;
}

inline Report run_w3(const ExperimentConfig& c) {
  const std::optional<Circuit> circuit = load_circuit(c);
  DensityMatrix truth = DensityMatrix::maximally_mixed({4, 5, 6});
  double probability = 0.0;
  if (c.sources == "ideal") {
    ExpansionOptions opt;
    opt.ancilla_overlap = c.overlap;
    opt.circuit = circuit;
    ExpansionResult r = expand_w(1, opt);
    truth = std::move(r.rho);
    probability = r.probability;
  } else {
    PostselectionResult r = circuit ? physical_w1_to_w3(source_params(c), *circuit) : physical_w1_to_w3(source_params(c));
    if (!r.accepted()) throw std::domain_error("w3: post-selection never succeeds with these sources");
    truth = std::move(*r.rho);
    probability = r.probability;
  }
  const Tomography t = run_tomography(truth, c, 0, [](const DensityMatrix& rho) { return state_statistics(rho, 3); });
  const Statistics s = state_statistics(t.rec.rho, 3);

  Report rep;
  auto& res = rep.document["results"];
  res["postselection_probability"] = probability;
  res["generated_state_fidelity"] = fidelity(truth, w_state_qubits(3));
  res["fidelity"] = s.at("fidelity");
  res["witness"] = s.at("witness");
  res["pairwise_eof"] = eof_json(pairwise_eof_table(t.rec.rho));
  res["imlm"] = imlm_summary(t.rec);
  res["mode"] = c.exact ? "exact" : "sampled";
  if (!t.counts.empty()) res["mean_counts_per_setting"] = mean_counts(t.counts);
  if (!t.errors.empty()) res["bootstrap_errors"] = t.errors;
  rep.document["reference"] = {
      {"fidelity", annotated(0.836, 0.042)},
      {"witness", annotated(-0.169, 0.042)},
      {"pairwise_eof", {{"45", annotated(0.354, 0.070)}, {"46", annotated(0.273, 0.065)}, {"56", annotated(0.316, 0.074)}}},
      {"note", "experimental values, shown for comparison only"}};
  rep.rho = t.rec.rho;
  if (!t.counts.empty()) rep.csv = counts_csv(t.counts);
  return rep;
}

inline Report run_w4(const ExperimentConfig& c) {
  const std::optional<Circuit> circuit = load_circuit(c);
  DensityMatrix seed_truth = DensityMatrix::from_pure(w_state_qubits(2), {0, 1});
  DensityMatrix truth = DensityMatrix::maximally_mixed({0, 4, 5, 6});
  double probability = 0.0;
  if (c.sources == "ideal") {
    ExpansionOptions opt;
    opt.ancilla_overlap = c.overlap;
    opt.circuit = circuit;
    ExpansionResult r = expand_w(2, opt);
    truth = std::move(r.rho);
    probability = r.probability;
  } else {
    const SourceParams p = source_params(c);
    PostselectionResult seed = physical_w2(p);
    PostselectionResult r = circuit ? physical_w2_to_w4(p, *circuit) : physical_w2_to_w4(p);
    if (!seed.accepted() || !r.accepted()) throw std::domain_error("w4: post-selection never succeeds with these sources");
    seed_truth = std::move(*seed.rho);
    truth = std::move(*r.rho);
    probability = r.probability;
  }

  auto seed_stat = [](const DensityMatrix& rho) {
    return Statistics{{"fidelity", fidelity(rho, w_state_qubits(2))}, {"eof", eof(rho)}};
  };
  const Tomography ts = run_tomography(seed_truth, c, 0, seed_stat);
  const Tomography t = run_tomography(truth, c, 2, [](const DensityMatrix& rho) { return state_statistics(rho, 4); });
  const Statistics s = state_statistics(t.rec.rho, 4);

  Report rep;
  auto& res = rep.document["results"];
  nlohmann::json seed_json = {{"fidelity", fidelity(ts.rec.rho, w_state_qubits(2))},
                              {"eof", eof(ts.rec.rho)},
                              {"imlm", imlm_summary(ts.rec)}};
  if (!ts.errors.empty()) seed_json["bootstrap_errors"] = ts.errors;
  res["sigma01"] = seed_json;
  res["postselection_probability"] = probability;
  res["generated_state_fidelity"] = fidelity(truth, w_state_qubits(4));
  res["fidelity"] = s.at("fidelity");
  res["witness"] = s.at("witness");
  res["pairwise_eof"] = eof_json(pairwise_eof_table(t.rec.rho));
  res["imlm"] = imlm_summary(t.rec);
  res["mode"] = c.exact ? "exact" : "sampled";
  if (!t.counts.empty()) res["mean_counts_per_setting"] = mean_counts(t.counts);
  if (!t.errors.empty()) res["bootstrap_errors"] = t.errors;
  rep.document["reference"] = {
      {"sigma01",
       {{"fidelity", annotated(0.977, 0.005)},
        {"eof", nlohmann::json::array({annotated(0.964, 0.013), annotated(0.95, 0.02)})}}},
      {"fidelity", annotated(0.784, 0.028)},
      {"witness", annotated(-0.034, 0.028)},
      {"pairwise_eof",
       {{"04", nlohmann::json::array({annotated(0.184, 0.037), annotated(0.15, 0.03)})},
        {"05", annotated(0.072, 0.028)},
        {"06", annotated(0.146, 0.033)},
        {"45", annotated(0.040, 0.022)},
        {"46", annotated(0.167, 0.033)},
        {"56", annotated(0.133, 0.030)}}},
      {"ideal_pairwise_eof", eof_from_concurrence(0.5)},
      {"note", "experimental values, shown for comparison only; the text quotes two values for sigma01 and sigma04"}};
  rep.rho = t.rec.rho;
  rep.seed_rho = ts.rec.rho;
  if (!t.counts.empty()) rep.csv = counts_csv(t.counts);
  return rep;
}

}  // namespace detail

inline Report run_scenario(const ExperimentConfig& c) {
  validate(c);
  Report rep;
  if (c.scenario == "scaling") {
    rep = detail::run_scaling(c);
  } else if (c.scenario == "hom") {
    rep = detail::run_hom(c);
  } else if (c.scenario == "w3") {
    rep = detail::run_w3(c);
  } else {
    rep = detail::run_w4(c);
  }
  nlohmann::json cfg = to_json(c);
  cfg.erase("output");
  rep.document["schema"] = kReportSchema;
  rep.document["tool_version"] = WEXPAND_VERSION;
  rep.document["scenario"] = c.scenario;
  rep.document["config"] = cfg;
  rep.document["config_hash"] = config_hash(c);
  nlohmann::json warnings = nlohmann::json::array();
  if (c.scenario != "scaling") {
    for (const auto& w : detail::source_params(c).warnings()) warnings.push_back(w);
  }
  rep.document["warnings"] = warnings;
  return rep;
}

/// Path of a side file next to the report: "out/run.json" -> "out/run<suffix>".
inline std::filesystem::path side_path(const std::filesystem::path& report, const std::string& suffix) {
  std::filesystem::path p = report;
  if (p.extension() == ".json") p.replace_extension();
  p += suffix;
  return p;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

/// Writes the report JSON plus density-matrix and CSV side files.
inline std::vector<std::filesystem::path> emit_report(const Report& rep, const std::filesystem::path& path) {
  std::vector<std::filesystem::path> written;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  write_text(path, rep.document.dump(2) + "\n");
  written.push_back(path);
  if (rep.rho) {
    written.push_back(side_path(path, ".rho.json"));
    write_text(written.back(), nlohmann::json(*rep.rho).dump(2) + "\n");
  }
  if (rep.seed_rho) {
    written.push_back(side_path(path, ".sigma01.rho.json"));
    write_text(written.back(), nlohmann::json(*rep.seed_rho).dump(2) + "\n");
  }
  if (!rep.csv.empty()) {
    written.push_back(side_path(path, ".csv"));
    write_text(written.back(), rep.csv);
  }
  return written;
}

}  // namespace wexpand
