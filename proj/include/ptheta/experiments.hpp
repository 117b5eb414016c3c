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

#pragma once

// Experiment runners behind the command-line tool.  Each runner reads an
// ExperimentConfig, writes its data products into the output directory,
// and finishes with the reproducibility trio: resolved_config.json (the
// exact configuration after defaults), seeds.json (every derived stream),
// and version.txt.  Outputs are byte-identical for a fixed (config, seed)
// regardless of worker count.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ptheta/autocorr.hpp"
#include "ptheta/io.hpp"
#include "ptheta/jacobi_group.hpp"
#include "ptheta/poschl_teller.hpp"
#include "ptheta/rng.hpp"
#include "ptheta/stats.hpp"
#include "ptheta/susy_partner.hpp"
#include "ptheta/theta.hpp"
#include "ptheta/windows.hpp"

namespace ptheta {

inline constexpr const char* kVersionString = "ptheta 0.1.0";

// Seed stream ids for the registry; every random stream a runner uses is
// derived as derive_seed(master, id) and listed in seeds.json.
inline constexpr std::uint64_t kStreamHaar = 101;
inline constexpr std::uint64_t kStreamTimeBase = 200;  // + index into n_list

struct XGridSpec {
  double lo = 0.01;
  double hi = kHalfPi - 0.01;
  long steps = 400;
};

struct ExperimentConfig {
  PTParams params{std::sqrt(2.0), 4.0};
  bool has_partner = false;
  PartnerSpec partner{PartnerKind::FirstOrder, 0.0, 0.0, 0};
  Window f1{Indicator{0.0, 1.0}};
  Window f0{Indicator{1.0 / 3.0, 4.0 / 3.0}};
  std::vector<long> n_list{32, 128, 512};
  long count = 100000;
  std::uint64_t seed = 1;
  TimeDensity density = TimeDensity::uniform(0.0, 1.0);
  TimeGrid grid{0.0, 1.0, 400};
  bool random_times = false;  // run.time_model: "grid" | "random"
  XGridSpec x_grid;
  std::vector<int> levels{0, 1, 2, 3, 4};
  std::vector<double> radii{2.5, 3.0, 3.5};
  double dependence_radius = 2.0;
  std::filesystem::path out_dir = "out";
  bool emit_csv = true;
  bool emit_json = true;
  nlohmann::json resolved;  // normalized config, echoed into the output
};

namespace detail {

[[noreturn]] inline void config_fail(const std::string& where,
                                     const std::string& what) {
  throw ParameterError("config: " + where + ": " + what);
}

inline double get_num(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) config_fail(where, "expected a number");
  return j.get<double>();
}

inline long get_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) config_fail(where, "expected an integer");
  return j.get<long>();
}

inline const nlohmann::json& get_field(const nlohmann::json& j,
                                       const std::string& key,
                                       const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) config_fail(where + "." + key, "missing field");
  return *it;
}

inline std::string get_str(const nlohmann::json& j, const std::string& where) {
  if (!j.is_string()) config_fail(where, "expected a string");
  return j.get<std::string>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Window and density specs.

inline Window parse_window(const nlohmann::json& j, const std::string& where,
                           const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) detail::config_fail(where, "expected an object");
  const std::string kind =
      detail::get_str(detail::get_field(j, "kind", where), where + ".kind");
  if (kind == "indicator") {
    return Window(Indicator{
        detail::get_num(detail::get_field(j, "a", where), where + ".a"),
        detail::get_num(detail::get_field(j, "b", where), where + ".b")});
  }
  if (kind == "hermite") {
    return Window(HermiteBasis{static_cast<int>(
        detail::get_int(detail::get_field(j, "k", where), where + ".k"))});
  }
  if (kind == "gaussian") {
    return Window(GaussianBump{
        detail::get_num(detail::get_field(j, "center", where),
                        where + ".center"),
        detail::get_num(detail::get_field(j, "width", where),
                        where + ".width")});
  }
  if (kind == "table") {
    std::vector<double> grid, values;
    if (j.contains("path")) {
      const std::string rel =
          detail::get_str(j.at("path"), where + ".path");
      auto cols = io::read_two_column_csv(
          base_dir.empty() ? std::filesystem::path(rel) : base_dir / rel);
      grid = std::move(cols.first);
      values = std::move(cols.second);
    } else {
      for (const auto& v : detail::get_field(j, "grid", where)) {
        grid.push_back(detail::get_num(v, where + ".grid[]"));
      }
      for (const auto& v : detail::get_field(j, "values", where)) {
        values.push_back(detail::get_num(v, where + ".values[]"));
      }
    }
    return Window(TableFn{std::move(grid), std::move(values)});
  }
  detail::config_fail(where + ".kind", "unknown window kind '" + kind + "'");
}

inline nlohmann::json window_to_json(const Window& w) {
  nlohmann::json j;
  switch (w.kind()) {
    case WindowKind::Indicator:
      j["kind"] = "indicator";
      j["a"] = w.as_indicator().a;
      j["b"] = w.as_indicator().b;
      break;
    case WindowKind::HermiteBasis:
      j["kind"] = "hermite";
      j["k"] = w.as_hermite().k;
      break;
    case WindowKind::GaussianBump:
      j["kind"] = "gaussian";
      j["center"] = w.as_bump().center;
      j["width"] = w.as_bump().width;
      break;
    case WindowKind::TableFn:
      j["kind"] = "table";
      j["grid"] = w.as_table().grid;
      j["values"] = w.as_table().values;
      break;
  }
  return j;
}

inline TimeDensity parse_density(const nlohmann::json& j,
                                 const std::string& where,
                                 const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) detail::config_fail(where, "expected an object");
  const std::string kind =
      detail::get_str(detail::get_field(j, "kind", where), where + ".kind");
  if (kind == "uniform" || kind == "triangular") {
    const double a =
        detail::get_num(detail::get_field(j, "a", where), where + ".a");
    const double b =
        detail::get_num(detail::get_field(j, "b", where), where + ".b");
    return kind == "uniform" ? TimeDensity::uniform(a, b)
                             : TimeDensity::triangular(a, b);
  }
  if (kind == "table") {
    if (j.contains("path")) {
      const std::string rel = detail::get_str(j.at("path"), where + ".path");
      auto cols = io::read_two_column_csv(
          base_dir.empty() ? std::filesystem::path(rel) : base_dir / rel);
      return TimeDensity::table(std::move(cols.first), std::move(cols.second));
    }
    std::vector<double> grid, values;
    for (const auto& v : detail::get_field(j, "grid", where)) {
      grid.push_back(detail::get_num(v, where + ".grid[]"));
    }
    for (const auto& v : detail::get_field(j, "values", where)) {
      values.push_back(detail::get_num(v, where + ".values[]"));
    }
    return TimeDensity::table(std::move(grid), std::move(values));
  }
  detail::config_fail(where + ".kind", "unknown density kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Config parsing.  Unknown keys are rejected so typos fail loudly.

inline ExperimentConfig parse_config(const nlohmann::json& j,
                                     const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) detail::config_fail("<root>", "expected an object");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    if (k != "model" && k != "partner" && k != "windows" && k != "run" &&
        k != "output") {
      detail::config_fail(k, "unknown section");
    }
  }
  ExperimentConfig cfg;
  nlohmann::json density_json = {{"kind", "uniform"}, {"a", 0.0}, {"b", 1.0}};

  if (j.contains("model")) {
    const auto& m = j.at("model");
    cfg.params = PTParams(
        detail::get_num(detail::get_field(m, "alpha", "model"), "model.alpha"),
        detail::get_num(detail::get_field(m, "beta", "model"), "model.beta"));
  }
  if (j.contains("partner")) {
    const auto& p = j.at("partner");
    cfg.has_partner = true;
    const std::string kind = detail::get_str(
        detail::get_field(p, "kind", "partner"), "partner.kind");
    if (kind == "first") {
      cfg.partner.kind = PartnerKind::FirstOrder;
    } else if (kind == "second") {
      cfg.partner.kind = PartnerKind::SecondOrder;
    } else {
      detail::config_fail("partner.kind", "expected 'first' or 'second'");
    }
    cfg.partner.eps1 = detail::get_num(
        detail::get_field(p, "eps1", "partner"), "partner.eps1");
    cfg.partner.eps2 =
        p.contains("eps2") ? detail::get_num(p.at("eps2"), "partner.eps2")
                           : 0.0;
    cfg.partner.level_l =
        p.contains("level")
            ? static_cast<int>(detail::get_int(p.at("level"), "partner.level"))
            : 0;
  }
  if (j.contains("windows")) {
    const auto& w = j.at("windows");
    if (w.contains("f1")) cfg.f1 = parse_window(w.at("f1"), "windows.f1", base_dir);
    if (w.contains("f0")) cfg.f0 = parse_window(w.at("f0"), "windows.f0", base_dir);
  }
  if (j.contains("run")) {
    const auto& r = j.at("run");
    if (r.contains("n_list")) {
      cfg.n_list.clear();
      for (const auto& v : r.at("n_list")) {
        const long n = detail::get_int(v, "run.n_list[]");
        if (n < 1) detail::config_fail("run.n_list[]", "N must be >= 1");
        cfg.n_list.push_back(n);
      }
      if (cfg.n_list.empty()) detail::config_fail("run.n_list", "empty");
    }
    if (r.contains("count")) {
      cfg.count = detail::get_int(r.at("count"), "run.count");
      if (cfg.count < 1) detail::config_fail("run.count", "must be >= 1");
    }
    if (r.contains("seed")) {
      if (!r.at("seed").is_number_unsigned() &&
          !r.at("seed").is_number_integer()) {
        detail::config_fail("run.seed", "expected an integer");
      }
      cfg.seed = r.at("seed").get<std::uint64_t>();
    }
    if (r.contains("density")) {
      density_json = r.at("density");
      cfg.density = parse_density(density_json, "run.density", base_dir);
    }
    if (r.contains("time_model")) {
      const std::string tm =
          detail::get_str(r.at("time_model"), "run.time_model");
      if (tm == "grid") {
        cfg.random_times = false;
      } else if (tm == "random") {
        cfg.random_times = true;
      } else {
        detail::config_fail("run.time_model", "expected 'grid' or 'random'");
      }
    }
    if (r.contains("grid")) {
      const auto& g = r.at("grid");
      cfg.grid.t0 = detail::get_num(detail::get_field(g, "t0", "run.grid"),
                                    "run.grid.t0");
      cfg.grid.t1 = detail::get_num(detail::get_field(g, "t1", "run.grid"),
                                    "run.grid.t1");
      cfg.grid.steps = detail::get_int(
          detail::get_field(g, "steps", "run.grid"), "run.grid.steps");
      if (!(cfg.grid.t1 > cfg.grid.t0) || cfg.grid.steps < 1) {
        detail::config_fail("run.grid", "need t1 > t0 and steps >= 1");
      }
    }
    if (r.contains("x_grid")) {
      const auto& g = r.at("x_grid");
      cfg.x_grid.lo = detail::get_num(detail::get_field(g, "lo", "run.x_grid"),
                                      "run.x_grid.lo");
      cfg.x_grid.hi = detail::get_num(detail::get_field(g, "hi", "run.x_grid"),
                                      "run.x_grid.hi");
      cfg.x_grid.steps = detail::get_int(
          detail::get_field(g, "steps", "run.x_grid"), "run.x_grid.steps");
    }
    if (!(cfg.x_grid.lo > 0.0) || !(cfg.x_grid.hi < kHalfPi) ||
        !(cfg.x_grid.lo < cfg.x_grid.hi) || cfg.x_grid.steps < 1) {
      detail::config_fail("run.x_grid", "need 0 < lo < hi < pi/2, steps >= 1");
    }
    if (r.contains("levels")) {
      cfg.levels.clear();
      for (const auto& v : r.at("levels")) {
        const long n = detail::get_int(v, "run.levels[]");
        if (n < 0 || n > kEigenMaxIndex) {
          detail::config_fail("run.levels[]", "level out of range");
        }
        cfg.levels.push_back(static_cast<int>(n));
      }
    }
    if (r.contains("radii")) {
      cfg.radii.clear();
      for (const auto& v : r.at("radii")) {
        const double x = detail::get_num(v, "run.radii[]");
        if (!(x > 0.0)) detail::config_fail("run.radii[]", "must be positive");
        cfg.radii.push_back(x);
      }
    }
    if (r.contains("dependence_radius")) {
      cfg.dependence_radius =
          detail::get_num(r.at("dependence_radius"), "run.dependence_radius");
      if (!(cfg.dependence_radius > 0.0)) {
        detail::config_fail("run.dependence_radius", "must be positive");
      }
    }
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    if (o.contains("directory")) {
      cfg.out_dir = detail::get_str(o.at("directory"), "output.directory");
    }
    if (o.contains("formats")) {
      cfg.emit_csv = false;
      cfg.emit_json = false;
      for (const auto& v : o.at("formats")) {
        const std::string f = detail::get_str(v, "output.formats[]");
        if (f == "csv") {
          cfg.emit_csv = true;
        } else if (f == "json") {
          cfg.emit_json = true;
        } else {
          detail::config_fail("output.formats[]", "expected 'csv' or 'json'");
        }
      }
    }
  }

  // Normalized echo: every field the run will actually use.
  nlohmann::json res;
  res["model"] = {{"alpha", cfg.params.alpha}, {"beta", cfg.params.beta}};
  if (cfg.has_partner) {
    res["partner"] = {
        {"kind",
         cfg.partner.kind == PartnerKind::FirstOrder ? "first" : "second"},
        {"eps1", cfg.partner.eps1},
        {"eps2", cfg.partner.eps2},
        {"level", cfg.partner.level_l}};
  }
  res["windows"] = {{"f1", window_to_json(cfg.f1)},
                    {"f0", window_to_json(cfg.f0)}};
  res["run"] = {{"n_list", cfg.n_list},
                {"count", cfg.count},
                {"seed", cfg.seed},
                {"density", density_json},
                {"time_model", cfg.random_times ? "random" : "grid"},
                {"grid",
                 {{"t0", cfg.grid.t0},
                  {"t1", cfg.grid.t1},
                  {"steps", cfg.grid.steps}}},
                {"x_grid",
                 {{"lo", cfg.x_grid.lo},
                  {"hi", cfg.x_grid.hi},
                  {"steps", cfg.x_grid.steps}}},
                {"levels", cfg.levels},
                {"radii", cfg.radii},
                {"dependence_radius", cfg.dependence_radius}};
  res["output"] = {{"directory", cfg.out_dir.string()},
                   {"formats", [&] {
                      std::vector<std::string> f;
                      if (cfg.emit_csv) f.push_back("csv");
                      if (cfg.emit_json) f.push_back("json");
                      return f;
                    }()}};
  cfg.resolved = std::move(res);
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("config: " + path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path());
}

inline ExperimentConfig default_config() {
  return parse_config(nlohmann::json::object());
}

// ---------------------------------------------------------------------------
// Shared output epilogue.

namespace detail {

inline void write_run_artifacts(
    const ExperimentConfig& cfg,
    const std::map<std::string, std::uint64_t>& streams) {
  nlohmann::json seeds;
  seeds["master"] = cfg.seed;
  nlohmann::json derived = nlohmann::json::object();
  for (const auto& [name, value] : streams) derived[name] = value;
  seeds["streams"] = derived;
  io::write_file(cfg.out_dir / "resolved_config.json",
                 cfg.resolved.dump(2) + "\n");
  io::write_file(cfg.out_dir / "seeds.json", seeds.dump(2) + "\n");
  io::write_file(cfg.out_dir / "version.txt",
                 std::string(kVersionString) + "\n");
}

// Max over a safe interior grid of |(-psi''/2 + V psi - E psi)| / (1+|E|),
// with the second derivative from a five-point stencil.
template <typename F, typename V>
double fd_eigen_residual(F&& psi, V&& pot, double energy) {
  const double h = 1e-3;
  const double lo = 0.15, hi = kHalfPi - 0.15;
  const int steps = 200;
  double worst = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double x =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
    const double d2 = (-psi(x - 2.0 * h) + 16.0 * psi(x - h) - 30.0 * psi(x) +
                       16.0 * psi(x + h) - psi(x + 2.0 * h)) /
                      (12.0 * h * h);
    const double r = std::abs(-0.5 * d2 + (pot(x) - energy) * psi(x));
    worst = std::max(worst, r / (1.0 + std::abs(energy)));
  }
  return worst;
}

inline std::vector<double> x_grid_points(const XGridSpec& g) {
  std::vector<double> xs(static_cast<std::size_t>(g.steps) + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = g.lo + (g.hi - g.lo) * static_cast<double>(i) /
                       static_cast<double>(g.steps);
  }
  return xs;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Runners.

// Potential and probability densities |psi_n|^2 over the x-grid.
inline void run_spectrum(const ExperimentConfig& cfg, int /*workers*/ = 1) {
  const std::vector<double> xs = detail::x_grid_points(cfg.x_grid);
  std::vector<std::string> header{"x", "v0"};
  for (int n : cfg.levels) header.push_back("psi2_" + std::to_string(n));
  std::vector<std::vector<double>> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    std::vector<double> row{x, potential_v0(cfg.params, x)};
    for (int n : cfg.levels) {
      const double p = eigenfunction(cfg.params, n, x);
      row.push_back(p * p);
    }
    rows.push_back(std::move(row));
  }
  io::write_csv(cfg.out_dir / "spectrum.csv", header, rows);
  detail::write_run_artifacts(cfg, {});
}

// Partner potential, paired eigenfunctions, and a residual report.
inline void run_partner(const ExperimentConfig& cfg, int /*workers*/ = 1) {
  if (!cfg.has_partner) {
    throw ParameterError("run_partner: config has no partner section");
  }
  const PartnerModel model(cfg.params, cfg.partner);
  const std::vector<double> xs = detail::x_grid_points(cfg.x_grid);

  std::vector<std::string> header{"x", "v0", "v1"};
  for (int n : cfg.levels) {
    header.push_back("base_" + std::to_string(n));
    header.push_back("partner_" + std::to_string(n));
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    std::vector<double> row{x, potential_v0(cfg.params, x),
                            model.potential_v1(x)};
    for (int n : cfg.levels) {
      row.push_back(eigenfunction(cfg.params, n, x));
      row.push_back(model.partner_eigenfunction(n, x));
    }
    rows.push_back(std::move(row));
  }
  io::write_csv(cfg.out_dir / "partner.csv", header, rows);

  if (cfg.emit_json) {
    nlohmann::json res;
    res["kind"] =
        cfg.partner.kind == PartnerKind::FirstOrder ? "first" : "second";
    nlohmann::json levels = nlohmann::json::array();
    for (int n : cfg.levels) {
      const double en = eigenvalue(cfg.params, n);
      const double base = detail::fd_eigen_residual(
          [&](double x) { return eigenfunction(cfg.params, n, x); },
          [&](double x) { return potential_v0(cfg.params, x); }, en);
      const double part = detail::fd_eigen_residual(
          [&](double x) { return model.partner_eigenfunction(n, x); },
          [&](double x) { return model.potential_v1(x); }, en);
      levels.push_back({{"n", n},
                        {"energy", en},
                        {"base_residual", base},
                        {"partner_residual", part}});
    }
    res["levels"] = levels;
    io::write_file(cfg.out_dir / "residuals.json", res.dump(2) + "\n");
  }
  detail::write_run_artifacts(cfg, {});
}

// X_N traces over a time grid, or sample sets at random times, plus the
// theta-lift consistency check in the metadata.
inline void run_autocorr(const ExperimentConfig& cfg, int workers = 1) {
  std::map<std::string, std::uint64_t> streams;
  nlohmann::json meta;
  nlohmann::json lift = nlohmann::json::object();

  const bool liftable =
      cfg.f1.support().lo >= 0.0 && cfg.f0.support().lo >= 0.0;
  ThetaFunction* th1 = nullptr;
  ThetaFunction* th0 = nullptr;
  ThetaFunction th1s{cfg.f1}, th0s{cfg.f0};
  if (liftable) {
    th1 = &th1s;
    th0 = &th0s;
  }

  for (std::size_t idx = 0; idx < cfg.n_list.size(); ++idx) {
    const long n_scale = cfg.n_list[idx];
    const AutocorrEvaluator eval(AutocorrConfig(
        cfg.params, cfg.f1, cfg.f0, n_scale, TimeModel(cfg.grid)));

    if (cfg.random_times) {
      const std::uint64_t s = derive_seed(cfg.seed, kStreamTimeBase + idx);
      streams["times_N" + std::to_string(n_scale)] = s;
      EmpiricalLaw law = sample_time_law(cfg.params, cfg.f1, cfg.f0, n_scale,
                                         cfg.density, cfg.count, s, workers);
      if (cfg.emit_csv) {
        std::vector<std::vector<double>> rows;
        rows.reserve(law.samples.size());
        for (const ThetaPair& p : law.samples) {
          rows.push_back({p.c1.real(), p.c1.imag(), p.c0.real(), p.c0.imag()});
        }
        io::write_csv(cfg.out_dir /
                          ("xn_samples_N" + std::to_string(n_scale) + ".csv"),
                      {"re1", "im1", "re0", "im0"}, rows);
      }
    } else {
      const std::vector<double> ts = grid_times(cfg.grid);
      std::vector<std::vector<double>> rows;
      rows.reserve(ts.size());
      for (double t : ts) {
        const auto x = eval.rescaled(t);
        rows.push_back(
            {t, x.first.real(), x.first.imag(), x.second.real(),
             x.second.imag()});
      }
      io::write_csv(cfg.out_dir /
                        ("xn_trace_N" + std::to_string(n_scale) + ".csv"),
                    {"t", "re1", "im1", "re0", "im0"}, rows);
    }

    if (liftable) {
      double worst = 0.0;
      for (int i = 0; i < 20; ++i) {
        const double t = cfg.grid.t0 + (cfg.grid.t1 - cfg.grid.t0) *
                                           static_cast<double>(i) / 19.0;
        const auto x = eval.rescaled(t);
        const GroupPoint g = lift_time(t, n_scale, cfg.params.gamma);
        worst = std::max(worst, std::abs(x.first - (*th1)(g)));
        worst = std::max(worst, std::abs(x.second - (*th0)(g)));
      }
      lift["N" + std::to_string(n_scale)] = worst;
    }
  }
  meta["lift_identity_max_error"] = lift;
  meta["lift_identity_checked"] = liftable;
  if (cfg.emit_json) {
    io::write_file(cfg.out_dir / "metadata.json", meta.dump(2) + "\n");
  }
  detail::write_run_artifacts(cfg, streams);
}

// Haar sampling, tail/KS/dependence reports.
inline void run_limit(const ExperimentConfig& cfg, int workers = 1) {
  std::map<std::string, std::uint64_t> streams;
  const std::uint64_t haar_seed = derive_seed(cfg.seed, kStreamHaar);
  streams["haar"] = haar_seed;

  const EmpiricalLaw law =
      sample_limit_law(cfg.f1, cfg.f0, cfg.count, haar_seed, workers);
  if (cfg.emit_csv) {
    std::vector<std::vector<double>> rows;
    rows.reserve(law.samples.size());
    for (const ThetaPair& p : law.samples) {
      rows.push_back({p.c1.real(), p.c1.imag(), p.c0.real(), p.c0.imag()});
    }
    io::write_csv(cfg.out_dir / "limit_samples.csv",
                  {"re1", "im1", "re0", "im0"}, rows);
  }

  if (cfg.emit_json) {
    // Tail report against the R^-6 law.
    const TailReport tr = tail_report(law, cfg.f1, cfg.radii);
    nlohmann::json tj;
    tj["count"] = cfg.count;
    tj["seed"] = haar_seed;
    tj["d_constant"] = tr.d_const;
    tj["predicted_available"] = tr.predicted_available;
    nlohmann::json rows = nlohmann::json::array();
    for (const TailRow& r : tr.rows) {
      rows.push_back({{"radius", r.radius},
                      {"prob1", r.comp1.p},
                      {"lo1", r.comp1.lo},
                      {"hi1", r.comp1.hi},
                      {"exceed1", r.exceed1},
                      {"reliable1", r.reliable1},
                      {"prob0", r.comp0.p},
                      {"lo0", r.comp0.lo},
                      {"hi0", r.comp0.hi},
                      {"exceed0", r.exceed0},
                      {"reliable0", r.reliable0},
                      {"predicted", r.predicted}});
    }
    tj["rows"] = rows;
    try {
      tj["loglog_slope_comp1"] = tail_loglog_slope(law, cfg.radii);
    } catch (const ParameterError&) {
      // Too few resolvable radii; the field is simply absent.
    }
    io::write_file(cfg.out_dir / "tail_report.json", tj.dump(2) + "\n");

    // KS of |X_N| functionals against the Haar law, per N.
    nlohmann::json kj;
    kj["count"] = cfg.count;
    nlohmann::json per_n = nlohmann::json::array();
    for (std::size_t idx = 0; idx < cfg.n_list.size(); ++idx) {
      const long n_scale = cfg.n_list[idx];
      const std::uint64_t s = derive_seed(cfg.seed, kStreamTimeBase + idx);
      streams["times_N" + std::to_string(n_scale)] = s;
      const EmpiricalLaw xn = sample_time_law(
          cfg.params, cfg.f1, cfg.f0, n_scale, cfg.density, cfg.count, s,
          workers);
      per_n.push_back({{"N", n_scale},
                       {"seed", s},
                       {"abs1", ks_distance(xn, law, Functional::kAbs1)},
                       {"abs0", ks_distance(xn, law, Functional::kAbs0)},
                       {"re1", ks_distance(xn, law, Functional::kRe1)},
                       {"im1", ks_distance(xn, law, Functional::kIm1)},
                       {"re0", ks_distance(xn, law, Functional::kRe0)},
                       {"im0", ks_distance(xn, law, Functional::kIm0)},
                       {"abs_sum", ks_distance(xn, law, Functional::kAbsSum)}});
    }
    kj["per_n"] = per_n;
    io::write_file(cfg.out_dir / "ks_report.json", kj.dump(2) + "\n");

    // Joint-exceedance dependence diagnostic.
    const DependenceReport dep = dependence_report(law, cfg.dependence_radius);
    nlohmann::json dj;
    dj["count"] = cfg.count;
    dj["seed"] = haar_seed;
    dj["radius"] = dep.radius;
    dj["joint"] = dep.joint;
    dj["product"] = dep.product;
    dj["ratio"] = dep.ratio;
    dj["ratio_se"] = dep.ratio_se;
    dj["corr_sq_moduli"] = dep.corr_sq_moduli;
    dj["exceed1"] = dep.exceed1;
    dj["exceed0"] = dep.exceed0;
    dj["exceed_joint"] = dep.exceed_joint;
    dj["reliable"] = dep.reliable;
    io::write_file(cfg.out_dir / "dependence.json", dj.dump(2) + "\n");
  }
  detail::write_run_artifacts(cfg, streams);
}

}  // namespace ptheta
