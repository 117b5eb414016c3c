// Copyright 2026 The ptheta Authors
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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptheta/acceptance.hpp"
#include "ptheta/experiments.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 1;
  std::vector<std::string> formats;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "JSON experiment configuration");
  cmd->add_option("--out", opts.out_dir,
                  "Output directory (overrides output.directory)");
  cmd->add_option("--seed", opts.seed, "Master seed (overrides run.seed)")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--workers", opts.workers, "Worker thread count")
      ->check(CLI::Range(1, 256));
  cmd->add_option("--format", opts.formats, "Output formats")
      ->check(CLI::IsMember({"csv", "json"}));
}

ptheta::ExperimentConfig make_config(const CommonOpts& opts) {
  ptheta::ExperimentConfig cfg = opts.config_path.empty()
                                     ? ptheta::default_config()
                                     : ptheta::load_config(opts.config_path);
  if (opts.seed_set) {
    cfg.seed = opts.seed;
    cfg.resolved["run"]["seed"] = opts.seed;
  }
  if (!opts.formats.empty()) {
    cfg.emit_csv = false;
    cfg.emit_json = false;
    for (const std::string& f : opts.formats) {
      if (f == "csv") cfg.emit_csv = true;
      if (f == "json") cfg.emit_json = true;
    }
    std::vector<std::string> fmts;
    if (cfg.emit_csv) fmts.push_back("csv");
    if (cfg.emit_json) fmts.push_back("json");
    cfg.resolved["output"]["formats"] = fmts;
  }
  // --out relocates the run without entering the resolved echo: the same
  // configuration must produce the same bytes wherever it is written.
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum autocorrelation statistics via theta sums"};
  app.require_subcommand(1);

  CommonOpts opts;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Potential and eigenstate densities over an x-grid");
  CLI::App* partner = app.add_subcommand(
      "partner", "Darboux partner potential and paired eigenfunctions");
  CLI::App* autocorr = app.add_subcommand(
      "autocorr", "Rescaled autocorrelation traces or random-time samples");
  CLI::App* limit = app.add_subcommand(
      "limit", "Haar-sampled limit law with tail/KS/dependence reports");
  CLI::App* verify =
      app.add_subcommand("verify", "Run the full acceptance suite");
  for (CLI::App* cmd : {spectrum, partner, autocorr, limit}) {
    add_common(cmd, opts);
  }
  int verify_workers = 1;
  verify->add_option("--workers", verify_workers, "Worker thread count")
      ->check(CLI::Range(1, 256));

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      auto results = ptheta::acceptance::run_all(verify_workers);
      ptheta::acceptance::print_results(std::cout, results);
      return ptheta::acceptance::all_passed(results) ? 0 : 1;
    }
    const ptheta::ExperimentConfig cfg = make_config(opts);
    if (spectrum->parsed()) {
      ptheta::run_spectrum(cfg, opts.workers);
    } else if (partner->parsed()) {
      ptheta::run_partner(cfg, opts.workers);
    } else if (autocorr->parsed()) {
      ptheta::run_autocorr(cfg, opts.workers);
    } else if (limit->parsed()) {
      ptheta::run_limit(cfg, opts.workers);
    }
    std::cout << "wrote " << cfg.out_dir.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
