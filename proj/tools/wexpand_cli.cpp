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

// wexpand: runs one of the expansion scenarios and writes a JSON report.
//
//   wexpand w3 --config configs/w3.json --seed 7 --out out/w3.json
//   wexpand scaling --exact

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wexpand/scenario.hpp"

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool exact = false;
  std::string out;
};

int run(const std::string& scenario, const Options& o) {
  wexpand::ExperimentConfig c =
      o.config.empty() ? wexpand::default_config(scenario) : wexpand::load_config(o.config);
  if (c.scenario != scenario) {
    throw std::invalid_argument("config " + o.config + " is for scenario '" + c.scenario + "', not '" + scenario +
                                "'");
  }
  if (o.seed) c.seed = o.seed;
  if (o.exact) {
    if (scenario != "w3" && scenario != "w4") throw std::invalid_argument("--exact applies only to w3 and w4");
    c.exact = true;
  }
  if (!o.out.empty()) c.output = o.out;
  if (c.output.empty()) c.output = scenario + "_report.json";
  wexpand::validate(c);

  const wexpand::Report rep = wexpand::run_scenario(c);
  for (const auto& w : rep.document.at("warnings")) std::cerr << "warning: " << w.get<std::string>() << '\n';
  for (const auto& path : wexpand::emit_report(rep, c.output)) std::cout << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulates W-state expansion gates and their tomography.", "wexpand"};
  app.set_version_flag("--version", std::string(WEXPAND_VERSION));
  app.require_subcommand(1);

  Options o;
  const std::pair<const char*, const char*> scenarios[] = {
      {"hom", "two-photon interference scan at the first splitter"},
      {"w3", "expand a single photon to W3 and reconstruct it"},
      {"w4", "expand W2 to W4 and reconstruct both states"},
      {"scaling", "success probability and fidelity for N = 1..max_n"},
  };
  for (const auto& [name, help] : scenarios) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "seed for count sampling and bootstrap");
    sub->add_flag("--exact", o.exact, "feed expected probabilities to the reconstruction");
    sub->add_option("--out", o.out, "report path (default <scenario>_report.json)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return run(app.get_subcommands().front()->get_name(), o);
  } catch (const std::exception& e) {
    std::cerr << "wexpand: " << e.what() << '\n';
    return 1;
  }
}
