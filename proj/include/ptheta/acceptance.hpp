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

// The release gate: eleven end-to-end checks covering the analytic layer
// (orthonormality, residuals, factorization energies), the two evaluation
// paths of the theta sum (lift identity, lattice invariance, reduction
// cross-oracle), the Monte Carlo reproductions (tail law, convergence in
// law, robustness, dependence), and byte-level determinism of the
// experiment runners.  Each check reports pass/fail with a measured
// figure against its pinned tolerance.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "ptheta/autocorr.hpp"
#include "ptheta/experiments.hpp"
#include "ptheta/jacobi_group.hpp"
#include "ptheta/poschl_teller.hpp"
#include "ptheta/quadrature.hpp"
#include "ptheta/rng.hpp"
#include "ptheta/stats.hpp"
#include "ptheta/susy_partner.hpp"
#include "ptheta/theta.hpp"
#include "ptheta/windows.hpp"

namespace ptheta {
namespace acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr std::uint64_t kAcceptanceSeed = 20260819;

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << x;
  return ss.str();
}

// Gauss-Legendre inner products of eigenfunctions over (0, pi/2).
inline double orthonormality_deviation(const PTParams& p, int n_max,
                                       const QuadratureRule& rule) {
  const std::size_t nodes = rule.nodes.size();
  std::vector<std::vector<double>> psi(
      static_cast<std::size_t>(n_max) + 1, std::vector<double>(nodes));
  std::vector<double> xs(nodes), ws(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    xs[i] = 0.25 * kPi * (rule.nodes[i] + 1.0);
    ws[i] = 0.25 * kPi * rule.weights[i];
  }
  for (int n = 0; n <= n_max; ++n) {
    for (std::size_t i = 0; i < nodes; ++i) {
      psi[static_cast<std::size_t>(n)][i] = eigenfunction(p, n, xs[i]);
    }
  }
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    for (int m = n; m <= n_max; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i < nodes; ++i) {
        s += ws[i] * psi[static_cast<std::size_t>(n)][i] *
             psi[static_cast<std::size_t>(m)][i];
      }
      const double target = n == m ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(s - target));
    }
  }
  return worst;
}

template <typename Fn>
CriterionResult timed(int id, const std::string& name, Fn&& fn) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

inline bool files_identical(const std::filesystem::path& a,
                            const std::filesystem::path& b) {
  return io::read_file(a) == io::read_file(b);
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline std::vector<CriterionResult> run_all(int workers = 1) {
  std::vector<CriterionResult> out;
  const double sqrt2 = std::sqrt(2.0);

  // 1. Orthonormality of the first 21 bound states.
  out.push_back(detail::timed(1, "orthonormality", [&](CriterionResult& r) {
    const QuadratureRule& rule = gauss_legendre(1500);
    double worst = 0.0;
    for (auto [a, b] : std::array<std::array<double, 2>, 3>{
             {{sqrt2, 4.0}, {sqrt2, 3.0}, {2.5, 3.7}}}) {
      worst = std::max(
          worst, detail::orthonormality_deviation(PTParams(a, b), 20, rule));
    }
    r.pass = worst < 1e-8;
    r.detail = "max |<psi_n,psi_m> - delta| = " + detail::fmt(worst) +
               " (tol 1e-8)";
  }));

  // 2. Schroedinger residuals for base and partner states, n <= 10.
  out.push_back(detail::timed(2, "eigen-residuals", [&](CriterionResult& r) {
    double worst_base = 0.0, worst_first = 0.0, worst_second = 0.0;
    const PTParams fig(sqrt2, 3.0), gen(2.5, 3.7), fig4(sqrt2, 4.0);
    for (const PTParams& p : {fig, gen}) {
      for (int n = 0; n <= 10; ++n) {
        worst_base = std::max(
            worst_base,
            ptheta::detail::fd_eigen_residual(
                [&](double x) { return eigenfunction(p, n, x); },
                [&](double x) { return potential_v0(p, x); },
                eigenvalue(p, n)));
      }
    }
    const std::array<std::pair<PTParams, double>, 2> first_cases{
        {{fig, 4.0}, {gen, 10.0}}};
    for (const auto& [p, eps] : first_cases) {
      const PartnerModel m(p, {PartnerKind::FirstOrder, eps, 0.0, 0});
      for (int n = 0; n <= 10; ++n) {
        worst_first = std::max(
            worst_first,
            ptheta::detail::fd_eigen_residual(
                [&](double x) { return m.partner_eigenfunction(n, x); },
                [&](double x) { return m.potential_v1(x); },
                eigenvalue(p, n)));
      }
    }
    const std::array<std::pair<PTParams, std::pair<double, double>>, 2>
        second_cases{{{fig4, {20.0, 16.0}}, {gen, {28.0, 24.0}}}};
    for (const auto& [p, eps] : second_cases) {
      const PartnerModel m(
          p, {PartnerKind::SecondOrder, eps.first, eps.second, 0});
      for (int n = 0; n <= 10; ++n) {
        worst_second = std::max(
            worst_second,
            ptheta::detail::fd_eigen_residual(
                [&](double x) { return m.partner_eigenfunction(n, x); },
                [&](double x) { return m.potential_v1(x); },
                eigenvalue(p, n)));
      }
    }
    r.pass = worst_base < 1e-5 && worst_first < 1e-5 && worst_second < 1e-4;
    r.detail = "base " + detail::fmt(worst_base) + " (tol 1e-5), first-order " +
               detail::fmt(worst_first) + " (tol 1e-5), second-order " +
               detail::fmt(worst_second) + " (tol 1e-4)";
  }));

  // 3. ||A+ psi_n||^2 = E_n - eps, n <= 10.
  out.push_back(detail::timed(3, "factorization-energy",
                              [&](CriterionResult& r) {
    const PTParams p(sqrt2, 3.0);
    const double eps = 4.0;
    const PartnerModel m(p, {PartnerKind::FirstOrder, eps, 0.0, 0});
    const QuadratureRule& rule = gauss_legendre(1500);
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
      double q = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = 0.25 * kPi * (rule.nodes[i] + 1.0);
        const double v = m.apply_intertwiner(n, x);
        q += 0.25 * kPi * rule.weights[i] * v * v;
      }
      worst = std::max(worst, std::abs(q - (eigenvalue(p, n) - eps)));
    }
    r.pass = worst < 1e-6;
    r.detail = "max |norm^2 - (E_n - eps)| = " + detail::fmt(worst) +
               " (tol 1e-6)";
  }));

  // 4. Lift identity: sqrt(N) A_N(t) equals the theta sum at the lifted
  // point, N in {8, 32, 128}, 100 random times, both windows.
  out.push_back(detail::timed(4, "lift-identity", [&](CriterionResult& r) {
    const PTParams p(sqrt2, 3.0);
    const Window w1{Indicator{0.0, 1.0}};
    const Window w0{Indicator{1.0 / 3.0, 4.0 / 3.0}};
    const ThetaFunction th1(w1), th0(w0);
    Rng rng(derive_seed(kAcceptanceSeed, 4));
    double worst = 0.0;
    for (long n_scale : {8L, 32L, 128L}) {
      const std::vector<double> prof1 = coefficient_profile(w1, n_scale);
      const std::vector<double> prof0 = coefficient_profile(w0, n_scale);
      const double sqn = std::sqrt(static_cast<double>(n_scale));
      for (int i = 0; i < 100; ++i) {
        const double t = rng.uniform();
        const auto a = autocorr_from_profiles(p, prof1, prof0, t);
        const GroupPoint g = lift_time(t, n_scale, p.gamma);
        worst = std::max(worst, std::abs(sqn * a.first - th1(g)));
        worst = std::max(worst, std::abs(sqn * a.second - th0(g)));
      }
    }
    r.pass = worst < 1e-10;
    r.detail = "max |sqrt(N) A_N - theta| = " + detail::fmt(worst) +
               " (tol 1e-10)";
  }));

  // 5. Invariance under the five lattice generators at Haar points.
  out.push_back(detail::timed(5, "lattice-invariance",
                              [&](CriterionResult& r) {
    Rng rng(derive_seed(kAcceptanceSeed, 5));
    std::vector<GroupPoint> pts;
    for (int i = 0; i < 100; ++i) pts.push_back(sample_haar(rng));
    double worst_smooth = 0.0, worst_sharp = 0.0;
    for (int k = 0; k <= 3; ++k) {
      const ThetaFunction th{Window(HermiteBasis{k})};
      for (const GroupPoint& g : pts) {
        const cplx base = th(g);
        const double den = std::max(std::abs(base), 1e-6);
        for (int gen = 1; gen <= 5; ++gen) {
          worst_smooth = std::max(
              worst_smooth, std::abs(th(apply_generator(gen, g)) - base) / den);
        }
      }
    }
    const ThetaFunction ti{Window(Indicator{0.0, 1.0})};
    for (const GroupPoint& g : pts) {
      const cplx base = ti(g);
      const double den = std::max(std::abs(base), 1e-6);
      for (int gen = 1; gen <= 5; ++gen) {
        worst_sharp = std::max(
            worst_sharp, std::abs(ti(apply_generator(gen, g)) - base) / den);
      }
    }
    r.pass = worst_smooth < 1e-8 && worst_sharp < 1e-5;
    r.detail = "hermite " + detail::fmt(worst_smooth) +
               " (tol 1e-8), indicator " + detail::fmt(worst_sharp) +
               " (tol 1e-5)";
  }));

  // 6. Reduction cross-oracle: theta at the reduced point vs the direct
  // sum at y down to 1e-4.
  out.push_back(detail::timed(6, "reduction-cross-check",
                              [&](CriterionResult& r) {
    Rng rng(derive_seed(kAcceptanceSeed, 6));
    const std::array<Window, 2> fs{Window(HermiteBasis{0}),
                                   Window(GaussianBump{0.3, 0.7})};
    double worst = 0.0;
    for (const Window& f : fs) {
      const ThetaFunction th(f);
      for (int i = 0; i < 100; ++i) {
        GroupPoint g;
        g.x = rng.uniform() - 0.5;
        g.y = std::pow(10.0, -1.0 - 3.0 * rng.uniform());
        g.phi = kPi * rng.uniform();
        g.xi1 = rng.uniform() - 0.5;
        g.xi2 = rng.uniform() - 0.5;
        g.zeta = rng.uniform() - 0.5;
        const cplx direct = th(g);
        const cplx reduced = th(reduce_to_fundamental(g));
        worst = std::max(worst, std::abs(direct - reduced) /
                                    std::max(1.0, std::abs(reduced)));
      }
    }
    r.pass = worst < 1e-8;
    r.detail = "max mismatch = " + detail::fmt(worst) + " (tol 1e-8)";
  }));

  // 7. Tail law at 10^6 Haar samples for the ground-mode window.
  out.push_back(detail::timed(7, "tail-law", [&](CriterionResult& r) {
    const Window f{HermiteBasis{0}};
    const EmpiricalLaw law = sample_limit_law(
        f, f, 1000000, derive_seed(kAcceptanceSeed, 7), workers);
    const double d = d_constant(f);
    const double n = static_cast<double>(law.count());
    double ratio_lo = 1e300, ratio_hi = 0.0;
    for (double radius : {2.5, 3.0, 3.5}) {
      long k = 0;
      for (const ThetaPair& s : law.samples) {
        if (std::abs(s.c1) > radius) ++k;
      }
      const double emp = static_cast<double>(k) / n;
      const double pred = 2.0 * d / (kPi * kPi) * std::pow(radius, -6.0);
      const double ratio = emp / pred;
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
    }
    const double slope =
        tail_loglog_slope(law, {2.5, 2.875, 3.25, 3.625, 4.0});
    r.pass = ratio_lo >= 0.8 && ratio_hi <= 1.25 && slope >= -6.6 &&
             slope <= -5.4;
    r.detail = "emp/pred in [" + detail::fmt(ratio_lo) + ", " +
               detail::fmt(ratio_hi) + "] (need [0.8, 1.25]), slope " +
               detail::fmt(slope) + " (need [-6.6, -5.4]), D = " +
               detail::fmt(d);
  }));

  // Laws shared between criteria 8 and 9.
  const PTParams p83(sqrt2, 3.0);
  const Window w1{Indicator{0.0, 1.0}};
  const Window w0{Indicator{1.0 / 3.0, 4.0 / 3.0}};
  EmpiricalLaw haar_law, xn512_uniform;

  // 8. Convergence in law: KS against the Haar law shrinks with N.
  out.push_back(detail::timed(8, "convergence-in-law",
                              [&](CriterionResult& r) {
    const long count = 100000;
    haar_law = sample_limit_law(w1, w0, count,
                                derive_seed(kAcceptanceSeed, 80), workers);
    const TimeDensity uni = TimeDensity::uniform(0.0, 1.0);
    std::vector<double> ks;
    for (long n_scale : {32L, 128L, 512L}) {
      EmpiricalLaw xn = sample_time_law(
          p83, w1, w0, n_scale, uni, count,
          derive_seed(kAcceptanceSeed, 800 + static_cast<std::uint64_t>(n_scale)),
          workers);
      ks.push_back(ks_distance(xn, haar_law, Functional::kAbs1));
      if (n_scale == 512) xn512_uniform = std::move(xn);
    }
    int inversions = 0;
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
      if (ks[i + 1] > ks[i]) ++inversions;
    }
    r.pass = ks.back() < 0.02 && inversions <= 1;
    r.detail = "KS(N=32,128,512) = " + detail::fmt(ks[0]) + ", " +
               detail::fmt(ks[1]) + ", " + detail::fmt(ks[2]) +
               " (need last < 0.02, inversions " + std::to_string(inversions) +
               " <= 1)";
  }));

  // 9. The near-limit law is insensitive to the time density and to gamma.
  out.push_back(detail::timed(9, "density-and-gamma-robustness",
                              [&](CriterionResult& r) {
    const long count = 100000;
    const EmpiricalLaw tri = sample_time_law(
        p83, w1, w0, 512, TimeDensity::triangular(0.0, 2.0), count,
        derive_seed(kAcceptanceSeed, 90), workers);
    const PTParams pe(1.3, std::exp(1.0) - 1.3);  // gamma = e
    const EmpiricalLaw ge = sample_time_law(
        pe, w1, w0, 512, TimeDensity::uniform(0.0, 1.0), count,
        derive_seed(kAcceptanceSeed, 91), workers);
    const double ks_rho = ks_distance(xn512_uniform, tri, Functional::kAbs1);
    const double ks_gam = ks_distance(xn512_uniform, ge, Functional::kAbs1);
    r.pass = ks_rho < 0.02 && ks_gam < 0.02;
    r.detail = "KS(density) = " + detail::fmt(ks_rho) + ", KS(gamma) = " +
               detail::fmt(ks_gam) + " (tol 0.02 each)";
  }));

  // 10. Joint exceedances are not independent; the degenerate pair gives
  // the exact 1/P ratio.
  out.push_back(detail::timed(10, "joint-exceedance-dependence",
                              [&](CriterionResult& r) {
    const EmpiricalLaw law = sample_limit_law(
        w1, w0, 1000000, derive_seed(kAcceptanceSeed, 10), workers);
    const DependenceReport dep = dependence_report(law, 2.0);
    const double sigmas =
        dep.ratio_se > 0.0 ? std::abs(dep.ratio - 1.0) / dep.ratio_se : 0.0;

    const EmpiricalLaw same = sample_limit_law(
        w1, w1, 10000, derive_seed(kAcceptanceSeed, 100), workers);
    const DependenceReport dd = dependence_report(same, 2.0);
    const double p1 =
        static_cast<double>(dd.exceed1) / static_cast<double>(same.count());
    const double ident = std::abs(dd.ratio * p1 - 1.0);

    r.pass = dep.reliable && sigmas > 5.0 && ident < 1e-12;
    r.detail = "ratio = " + detail::fmt(dep.ratio) + " +- " +
               detail::fmt(dep.ratio_se) + " (" + detail::fmt(sigmas) +
               " sigma from 1, need > 5), degenerate |ratio*p - 1| = " +
               detail::fmt(ident) + " (tol 1e-12)";
  }));

  // 11. Byte-identical outputs across reruns and worker counts.
  out.push_back(detail::timed(11, "determinism", [&](CriterionResult& r) {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "ptheta_acceptance_11";
    fs::remove_all(root);

    nlohmann::json j;
    j["model"] = {{"alpha", sqrt2}, {"beta", 3.0}};
    j["run"] = {{"n_list", {32}},
                {"count", 12305},
                {"seed", 424242},
                {"time_model", "random"}};
    const ExperimentConfig base = parse_config(j);

    auto run_all_cmds = [&](const fs::path& dir, int nworkers) {
      ExperimentConfig cfg = base;
      cfg.out_dir = dir / "limit";
      run_limit(cfg, nworkers);
      cfg.out_dir = dir / "autocorr";
      run_autocorr(cfg, nworkers);
      cfg.out_dir = dir / "spectrum";
      run_spectrum(cfg, nworkers);
    };
    run_all_cmds(root / "a", 1);
    run_all_cmds(root / "b", 1);
    run_all_cmds(root / "c", 8);

    std::vector<std::string> mismatches;
    for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
      if (!entry.is_regular_file()) continue;
      const fs::path rel = fs::relative(entry.path(), root / "a");
      if (!detail::files_identical(entry.path(), root / "b" / rel)) {
        mismatches.push_back("rerun:" + rel.string());
      }
      if (!detail::files_identical(entry.path(), root / "c" / rel)) {
        mismatches.push_back("workers:" + rel.string());
      }
    }
    r.pass = mismatches.empty();
    if (mismatches.empty()) {
      r.detail = "rerun and 8-worker outputs byte-identical";
    } else {
      r.detail = "mismatched files:";
      for (const std::string& m : mismatches) r.detail += " " + m;
    }
    fs::remove_all(root);
  }));

  return out;
}

inline bool all_passed(const std::vector<CriterionResult>& rs) {
  for (const CriterionResult& r : rs) {
    if (!r.pass) return false;
  }
  return true;
}

template <typename Stream>
void print_results(Stream& os, const std::vector<CriterionResult>& rs) {
  for (const CriterionResult& r : rs) {
    os << "criterion " << r.id << " (" << r.name << "): "
       << (r.pass ? "PASS" : "FAIL") << " - " << r.detail << " ["
       << detail::fmt(r.seconds) << " s]\n";
  }
  os << (all_passed(rs) ? "acceptance: ALL CRITERIA PASSED"
                        : "acceptance: FAILURES PRESENT")
     << "\n";
}

}  // namespace acceptance
}  // namespace ptheta
