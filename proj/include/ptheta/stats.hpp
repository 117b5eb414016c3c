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

// Monte Carlo side: empirical laws of theta pairs under Haar measure or
// under random-time sampling of X_N, the sixth-power constant D(f), tail
// reports against the R^-6 law, two-sample Kolmogorov-Smirnov distances,
// and the joint-exceedance dependence diagnostic.
//
// Sampling is deterministically parallel: work is cut into fixed batches
// of 4096 samples, batch b draws from an Rng seeded by derive_seed(seed, b),
// and results land in preassigned slots.  Output is byte-identical for any
// worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "ptheta/autocorr.hpp"
#include "ptheta/errors.hpp"
#include "ptheta/jacobi_group.hpp"
#include "ptheta/quadrature.hpp"
#include "ptheta/rng.hpp"
#include "ptheta/theta.hpp"
#include "ptheta/windows.hpp"

namespace ptheta {

inline constexpr long kSampleBatch = 4096;
// 95% two-sided normal quantile, used by every interval in this module.
inline constexpr double kZ95 = 1.959963984540054;

enum class Provenance { kHaarSampled, kTimeSampled };

struct EmpiricalLaw {
  std::vector<ThetaPair> samples;
  Provenance provenance = Provenance::kHaarSampled;
  long n_scale = 0;  // time-sampled laws: the N of X_N
  std::uint64_t seed = 0;
  long failures = 0;

  long count() const { return static_cast<long>(samples.size()); }
};

namespace detail {

// Runs fn(batch_index, begin, end) over [0, count) in fixed batches using
// the requested number of threads.  Batch geometry is independent of the
// worker count, so any per-batch PRNG use stays reproducible.
template <typename Fn>
void run_batches(long count, int workers, Fn&& fn) {
  if (count <= 0) return;
  const long batches = (count + kSampleBatch - 1) / kSampleBatch;
  if (workers <= 1 || batches == 1) {
    for (long b = 0; b < batches; ++b) {
      fn(b, b * kSampleBatch, std::min(count, (b + 1) * kSampleBatch));
    }
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long b = next.fetch_add(1);
      if (b >= batches) return;
      fn(b, b * kSampleBatch, std::min(count, (b + 1) * kSampleBatch));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Samplers.

// Theta pairs at Haar-random points of the fundamental domain.
inline EmpiricalLaw sample_limit_law(const Window& f1, const Window& f0,
                                     long count, std::uint64_t seed,
                                     int workers = 1) {
  if (count < 0) throw ParameterError("sample_limit_law: count < 0");
  const ThetaFunction t1(f1), t0(f0);
  EmpiricalLaw law;
  law.samples.resize(static_cast<std::size_t>(count));
  law.provenance = Provenance::kHaarSampled;
  law.seed = seed;
  std::atomic<long> failures{0};
  detail::run_batches(count, workers, [&](long b, long lo, long hi) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    for (long i = lo; i < hi; ++i) {
      const GroupPoint g = sample_haar(rng);
      try {
        law.samples[static_cast<std::size_t>(i)] = pair_value(t1, t0, g);
      } catch (const AccuracyError&) {
        const double q = std::nan("");
        law.samples[static_cast<std::size_t>(i)] = {cplx(q, q), cplx(q, q)};
        failures.fetch_add(1);
      }
    }
  });
  law.failures = failures.load();
  if (law.failures * 1000 > count) {
    throw AccuracyError("sample_limit_law: too many evaluation failures",
                        static_cast<double>(law.failures), count);
  }
  return law;
}

// Rescaled autocorrelation pairs X_N at random times.
inline EmpiricalLaw sample_time_law(const PTParams& params, const Window& f1,
                                    const Window& f0, long n_scale,
                                    const TimeDensity& density, long count,
                                    std::uint64_t seed, int workers = 1) {
  if (count < 0) throw ParameterError("sample_time_law: count < 0");
  if (n_scale < 1) throw ParameterError("sample_time_law: N must be >= 1");
  const std::vector<double> prof1 = coefficient_profile(f1, n_scale);
  const std::vector<double> prof0 = coefficient_profile(f0, n_scale);
  const double sqn = std::sqrt(static_cast<double>(n_scale));
  EmpiricalLaw law;
  law.samples.resize(static_cast<std::size_t>(count));
  law.provenance = Provenance::kTimeSampled;
  law.n_scale = n_scale;
  law.seed = seed;
  detail::run_batches(count, workers, [&](long b, long lo, long hi) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    for (long i = lo; i < hi; ++i) {
      const double t = density.quantile(rng.uniform());
      const auto a = autocorr_from_profiles(params, prof1, prof0, t);
      law.samples[static_cast<std::size_t>(i)] = {sqn * a.first,
                                                  sqn * a.second};
    }
  });
  return law;
}

// ---------------------------------------------------------------------------
// The sixth-power constant D(f) = int_0^pi int |f_phi(w)|^6 dw dphi.

inline double d_constant(const Window& f) {
  if (f.sharp()) {
    throw ParameterError(
        "d_constant: defined only for windows of decay class eta > 1");
  }
  // Integrand is pi-periodic in phi (the half-turn reflects w), so a
  // midpoint rule in phi converges spectrally; w uses Gauss-Legendre on
  // [-W, W] with W set from the kappa_6 decay bound.
  const KappaEstimate kap = kappa_eta(f, 6.0);
  double w_max = kap.w_radius;
  const double k6 = std::pow(kap.value, 6.0);
  while (w_max < 240.0 &&
         kPi * 2.0 * k6 * std::pow(1.0 + w_max, -35.0) / 35.0 > 1e-14) {
    w_max += 4.0;
  }
  const std::vector<double> coeffs = make_rotated_window(f, 0.0, 1e-11).coeffs;
  const int n_phi = 96;
  const int n_w = std::max(400, static_cast<int>(16.0 * w_max));
  const QuadratureRule& rule = gauss_legendre(n_w);
  double total = 0.0;
  for (int ip = 0; ip < n_phi; ++ip) {
    const double phi = kPi * (static_cast<double>(ip) + 0.5) /
                       static_cast<double>(n_phi);
    double slice = 0.0;
    for (int iw = 0; iw < n_w; ++iw) {
      const double w = w_max * rule.nodes[static_cast<std::size_t>(iw)];
      const double m = std::abs(rotated_window_series(coeffs, phi, w));
      slice += w_max * rule.weights[static_cast<std::size_t>(iw)] *
               std::pow(m, 6.0);
    }
    total += slice;
  }
  return total * kPi / static_cast<double>(n_phi);
}

// ---------------------------------------------------------------------------
// Wilson score interval.

struct WilsonInterval {
  double p = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

inline WilsonInterval wilson_interval(long hits, long n, double z = kZ95) {
  if (n <= 0) throw ParameterError("wilson_interval: empty sample");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {p, center - half, center + half};
}

// ---------------------------------------------------------------------------
// Tail report.

struct TailRow {
  double radius = 0.0;
  // Per component: empirical exceedance probability with Wilson 95% CI.
  WilsonInterval comp1;
  WilsonInterval comp0;
  long exceed1 = 0;
  long exceed0 = 0;
  bool reliable1 = true;  // false when fewer than 20 exceedances
  bool reliable0 = true;
  double predicted = 0.0;  // (2 D(f) / pi^2) R^-6; 0 when unavailable
};

struct TailReport {
  std::vector<TailRow> rows;
  double d_const = 0.0;
  bool predicted_available = false;
};

// Exceedance table for |theta| of both components against the R^-6 law.
// The predicted column uses D(f) of the given window and is marked
// unavailable for sharp windows (outside the decay-class hypothesis).
inline TailReport tail_report(const EmpiricalLaw& law, const Window& f,
                              const std::vector<double>& radii) {
  if (law.count() == 0) throw ParameterError("tail_report: empty law");
  TailReport rep;
  if (!f.sharp()) {
    rep.d_const = d_constant(f);
    rep.predicted_available = true;
  }
  const long n = law.count();
  for (double r : radii) {
    TailRow row;
    row.radius = r;
    for (const ThetaPair& s : law.samples) {
      if (std::abs(s.c1) > r) ++row.exceed1;
      if (std::abs(s.c0) > r) ++row.exceed0;
    }
    row.comp1 = wilson_interval(row.exceed1, n);
    row.comp0 = wilson_interval(row.exceed0, n);
    row.reliable1 = row.exceed1 >= 20;
    row.reliable0 = row.exceed0 >= 20;
    if (rep.predicted_available) {
      row.predicted = 2.0 * rep.d_const / (kPi * kPi) * std::pow(r, -6.0);
    }
    rep.rows.push_back(row);
  }
  return rep;
}

// Least-squares slope of log P(|theta_1| > R) against log R.
inline double tail_loglog_slope(const EmpiricalLaw& law,
                                const std::vector<double>& radii) {
  std::vector<double> xs, ys;
  const long n = law.count();
  for (double r : radii) {
    long k = 0;
    for (const ThetaPair& s : law.samples) {
      if (std::abs(s.c1) > r) ++k;
    }
    if (k < 20) continue;
    xs.push_back(std::log(r));
    ys.push_back(std::log(static_cast<double>(k) / static_cast<double>(n)));
  }
  if (xs.size() < 2) {
    throw ParameterError("tail_loglog_slope: too few resolvable radii");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Two-sample Kolmogorov-Smirnov over 1-d functionals of the pair.

enum class Functional { kAbs1, kAbs0, kRe1, kIm1, kRe0, kIm0, kAbsSum };

inline double functional_value(const ThetaPair& s, Functional which) {
  switch (which) {
    case Functional::kAbs1: return std::abs(s.c1);
    case Functional::kAbs0: return std::abs(s.c0);
    case Functional::kRe1: return s.c1.real();
    case Functional::kIm1: return s.c1.imag();
    case Functional::kRe0: return s.c0.real();
    case Functional::kIm0: return s.c0.imag();
    case Functional::kAbsSum: return std::abs(s.c1) + std::abs(s.c0);
  }
  return 0.0;
}

inline double ks_distance(const EmpiricalLaw& a, const EmpiricalLaw& b,
                          Functional which) {
  if (a.count() == 0 || b.count() == 0) {
    throw ParameterError("ks_distance: empty law");
  }
  std::vector<double> xa, xb;
  xa.reserve(a.samples.size());
  xb.reserve(b.samples.size());
  for (const ThetaPair& s : a.samples) xa.push_back(functional_value(s, which));
  for (const ThetaPair& s : b.samples) xb.push_back(functional_value(s, which));
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

// One-sample KS against a CDF.
template <typename Cdf>
double ks_distance_cdf(std::vector<double> xs, Cdf&& cdf) {
  if (xs.empty()) throw ParameterError("ks_distance_cdf: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = cdf(xs[i]);
    d = std::max(d, std::abs(c - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - c));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Dependence diagnostic at radius R.

struct DependenceReport {
  double radius = 0.0;
  double joint = 0.0;    // P(|theta_1| > R and |theta_0| > R)
  double product = 0.0;  // P(|theta_1| > R) P(|theta_0| > R)
  double ratio = 0.0;    // joint / product
  double ratio_se = 0.0;
  double corr_sq_moduli = 0.0;  // Pearson corr of (|theta_1|^2, |theta_0|^2)
  long exceed1 = 0;
  long exceed0 = 0;
  long exceed_joint = 0;
  bool reliable = true;  // both marginal exceedance counts >= 100
};

inline DependenceReport dependence_report(const EmpiricalLaw& law, double r) {
  const long n = law.count();
  if (n == 0) throw ParameterError("dependence_report: empty law");
  DependenceReport rep;
  rep.radius = r;
  double m1 = 0.0, m0 = 0.0;
  for (const ThetaPair& s : law.samples) {
    const bool a = std::abs(s.c1) > r;
    const bool b = std::abs(s.c0) > r;
    rep.exceed1 += a;
    rep.exceed0 += b;
    rep.exceed_joint += a && b;
    m1 += std::norm(s.c1);
    m0 += std::norm(s.c0);
  }
  const double nn = static_cast<double>(n);
  m1 /= nn;
  m0 /= nn;
  double c11 = 0.0, c00 = 0.0, c10 = 0.0;
  for (const ThetaPair& s : law.samples) {
    const double d1 = std::norm(s.c1) - m1;
    const double d0 = std::norm(s.c0) - m0;
    c11 += d1 * d1;
    c00 += d0 * d0;
    c10 += d1 * d0;
  }
  rep.corr_sq_moduli =
      c11 > 0.0 && c00 > 0.0 ? c10 / std::sqrt(c11 * c00) : 0.0;

  const double pj = static_cast<double>(rep.exceed_joint) / nn;
  const double p1 = static_cast<double>(rep.exceed1) / nn;
  const double p0 = static_cast<double>(rep.exceed0) / nn;
  rep.joint = pj;
  rep.product = p1 * p0;
  rep.reliable = rep.exceed1 >= 100 && rep.exceed0 >= 100;
  if (p1 > 0.0 && p0 > 0.0) {
    rep.ratio = pj / (p1 * p0);
    // Delta method over the multinomial (p_joint, p1, p0) estimators:
    //   cov(pj^, p1^) = pj (1 - p1) / n          (joint event implies each)
    //   cov(p1^, p0^) = (pj - p1 p0) / n
    const double g_j = 1.0 / (p1 * p0);
    const double g_1 = -pj / (p1 * p1 * p0);
    const double g_0 = -pj / (p1 * p0 * p0);
    const double v_jj = pj * (1.0 - pj) / nn;
    const double v_11 = p1 * (1.0 - p1) / nn;
    const double v_00 = p0 * (1.0 - p0) / nn;
    const double v_j1 = pj * (1.0 - p1) / nn;
    const double v_j0 = pj * (1.0 - p0) / nn;
    const double v_10 = (pj - p1 * p0) / nn;
    const double var = g_j * g_j * v_jj + g_1 * g_1 * v_11 +
                       g_0 * g_0 * v_00 + 2.0 * g_j * g_1 * v_j1 +
                       2.0 * g_j * g_0 * v_j0 + 2.0 * g_1 * g_0 * v_10;
    rep.ratio_se = std::sqrt(std::max(0.0, var));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Small moment helper for heavy-tail diagnostics.

inline double abs_moment(const EmpiricalLaw& law, int component, double p) {
  if (law.count() == 0) throw ParameterError("abs_moment: empty law");
  double s = 0.0;
  for (const ThetaPair& t : law.samples) {
    s += std::pow(std::abs(component == 0 ? t.c0 : t.c1), p);
  }
  return s / static_cast<double>(law.count());
}

}  // namespace ptheta
