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

// Physical-side observables: occupation profiles f(n/N)/N, the pair of
// autocorrelation sums A_N(t) = (1/N) sum_n f_l(n/N) exp(i E_n t), and the
// rescaled X_N = sqrt(N) A_N.  Time randomization draws from uniform,
// triangular, or tabulated densities by inverse CDF.

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "ptheta/errors.hpp"
#include "ptheta/poschl_teller.hpp"
#include "ptheta/rng.hpp"
#include "ptheta/windows.hpp"

namespace ptheta {

// ---------------------------------------------------------------------------
// Time densities.

class TimeDensity {
 public:
  static TimeDensity uniform(double a, double b) {
    check_interval(a, b);
    TimeDensity d;
    d.kind_ = Kind::kUniform;
    d.a_ = a;
    d.b_ = b;
    return d;
  }

  static TimeDensity triangular(double a, double b) {
    check_interval(a, b);
    TimeDensity d;
    d.kind_ = Kind::kTriangular;
    d.a_ = a;
    d.b_ = b;
    return d;
  }

  // Piecewise-linear density through (grid[i], values[i]).  Must be
  // nonnegative and integrate to 1 within 1e-6.
  static TimeDensity table(std::vector<double> grid,
                           std::vector<double> values) {
    if (grid.size() < 2 || grid.size() != values.size()) {
      throw ParameterError("TimeDensity: table needs matching grid/values");
    }
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if (!(grid[i + 1] > grid[i])) {
        throw ParameterError("TimeDensity: grid must be increasing");
      }
      if (values[i] < 0.0 || values[i + 1] < 0.0) {
        throw ParameterError("TimeDensity: negative density value");
      }
      mass += 0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]);
    }
    if (std::abs(mass - 1.0) > 1e-6) {
      throw ParameterError("TimeDensity: table density mass " +
                           std::to_string(mass) + " is not 1");
    }
    TimeDensity d;
    d.kind_ = Kind::kTable;
    d.grid_ = std::move(grid);
    d.values_ = std::move(values);
    d.cdf_.assign(d.grid_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < d.grid_.size(); ++i) {
      d.cdf_[i + 1] = d.cdf_[i] + 0.5 * (d.values_[i] + d.values_[i + 1]) *
                                      (d.grid_[i + 1] - d.grid_[i]);
    }
    d.cdf_.back() = mass;
    return d;
  }

  double pdf(double t) const {
    switch (kind_) {
      case Kind::kUniform:
        return (t >= a_ && t < b_) ? 1.0 / (b_ - a_) : 0.0;
      case Kind::kTriangular: {
        if (t < a_ || t >= b_) return 0.0;
        const double m = 0.5 * (a_ + b_), h = b_ - a_;
        return t < m ? 4.0 * (t - a_) / (h * h) : 4.0 * (b_ - t) / (h * h);
      }
      case Kind::kTable: {
        if (t < grid_.front() || t >= grid_.back()) return 0.0;
        auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
        const double s = (t - grid_[i]) / (grid_[i + 1] - grid_[i]);
        return values_[i] + s * (values_[i + 1] - values_[i]);
      }
    }
    return 0.0;
  }

  // Inverse CDF at u in [0, 1).
  double quantile(double u) const {
    switch (kind_) {
      case Kind::kUniform:
        return a_ + (b_ - a_) * u;
      case Kind::kTriangular: {
        const double h = b_ - a_;
        return u < 0.5 ? a_ + 0.5 * h * std::sqrt(2.0 * u)
                       : b_ - 0.5 * h * std::sqrt(2.0 * (1.0 - u));
      }
      case Kind::kTable: {
        const double target = u * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
        i = i == 0 ? 0 : i - 1;
        if (i + 1 >= grid_.size()) i = grid_.size() - 2;
        const double h = grid_[i + 1] - grid_[i];
        const double rem = target - cdf_[i];
        const double d0 = values_[i];
        const double slope2 = 0.5 * (values_[i + 1] - values_[i]) / h;
        // Solve slope2*s^2 + d0*s = rem for s in [0, h].
        double s;
        if (std::abs(slope2) * h < 1e-14 * std::max(d0, 1e-300)) {
          s = d0 > 0.0 ? rem / d0 : 0.0;
        } else {
          const double disc = d0 * d0 + 4.0 * slope2 * rem;
          s = (-d0 + std::sqrt(std::max(0.0, disc))) / (2.0 * slope2);
        }
        return grid_[i] + std::clamp(s, 0.0, h);
      }
    }
    return a_;
  }

  double lo() const { return kind_ == Kind::kTable ? grid_.front() : a_; }
  double hi() const { return kind_ == Kind::kTable ? grid_.back() : b_; }

 private:
  enum class Kind { kUniform, kTriangular, kTable };

  static void check_interval(double a, double b) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
      throw ParameterError("TimeDensity: need finite a < b");
    }
  }

  TimeDensity() = default;

  Kind kind_ = Kind::kUniform;
  double a_ = 0.0, b_ = 1.0;
  std::vector<double> grid_, values_, cdf_;
};

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  long steps = 100;  // number of intervals; emits steps+1 points
};

struct RandomTimes {
  TimeDensity density = TimeDensity::uniform(0.0, 1.0);
  long count = 0;
  std::uint64_t seed = 0;
};

using TimeModel = std::variant<TimeGrid, RandomTimes>;

struct AutocorrConfig {
  PTParams params;
  Window f1;
  Window f0;
  long n_scale = 1;
  TimeModel time_model = TimeGrid{};

  AutocorrConfig(PTParams p, Window w1, Window w0, long big_n, TimeModel tm)
      : params(p),
        f1(std::move(w1)),
        f0(std::move(w0)),
        n_scale(big_n),
        time_model(std::move(tm)) {
    if (n_scale < 1) throw ParameterError("AutocorrConfig: N must be >= 1");
    if (!f1.support().compact || !f0.support().compact) {
      throw ParameterError(
          "AutocorrConfig: occupation windows must be compactly supported");
    }
  }
};

// ---------------------------------------------------------------------------
// Profiles and sums.

// (f(n/N)/N) for n = 0 .. ceil(N * sup supp f).  Lattice hits on a window
// boundary follow the half-open convention of the window itself.
inline std::vector<double> coefficient_profile(const Window& f, long big_n) {
  if (big_n < 1) throw ParameterError("coefficient_profile: N must be >= 1");
  const WindowSupport sup = f.support();
  if (!sup.compact) {
    throw ParameterError("coefficient_profile: window must be compact");
  }
  const double top = std::max(0.0, sup.hi);
  const long n_max = static_cast<long>(std::ceil(static_cast<double>(big_n) * top));
  std::vector<double> prof(static_cast<std::size_t>(n_max) + 1, 0.0);
  const double inv = 1.0 / static_cast<double>(big_n);
  for (long n = 0; n <= n_max; ++n) {
    prof[static_cast<std::size_t>(n)] =
        f(static_cast<double>(n) * inv) * inv;
  }
  return prof;
}

// Autocorrelation pair at time t from precomputed profiles; the phase
// exp(i E_n t) is shared between the components.
inline std::pair<cplx, cplx> autocorr_from_profiles(
    const PTParams& params, const std::vector<double>& prof1,
    const std::vector<double>& prof0, double t) {
  const std::size_t len = std::max(prof1.size(), prof0.size());
  cplx a1 = 0.0, a0 = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    const double c1 = n < prof1.size() ? prof1[n] : 0.0;
    const double c0 = n < prof0.size() ? prof0[n] : 0.0;
    if (c1 == 0.0 && c0 == 0.0) continue;
    const cplx ph = std::polar(1.0, eigenvalue(params, static_cast<int>(n)) * t);
    a1 += c1 * ph;
    a0 += c0 * ph;
  }
  return {a1, a0};
}

inline std::pair<cplx, cplx> autocorrelation(const AutocorrConfig& cfg,
                                             double t) {
  return autocorr_from_profiles(cfg.params,
                                coefficient_profile(cfg.f1, cfg.n_scale),
                                coefficient_profile(cfg.f0, cfg.n_scale), t);
}

inline std::pair<cplx, cplx> rescaled_x(const AutocorrConfig& cfg, double t) {
  auto a = autocorrelation(cfg, t);
  const double s = std::sqrt(static_cast<double>(cfg.n_scale));
  return {s * a.first, s * a.second};
}

// Profile-cached evaluator for bulk time sweeps.
class AutocorrEvaluator {
 public:
  explicit AutocorrEvaluator(const AutocorrConfig& cfg)
      : params_(cfg.params),
        prof1_(coefficient_profile(cfg.f1, cfg.n_scale)),
        prof0_(coefficient_profile(cfg.f0, cfg.n_scale)),
        sqrt_n_(std::sqrt(static_cast<double>(cfg.n_scale))) {}

  std::pair<cplx, cplx> autocorrelation(double t) const {
    return autocorr_from_profiles(params_, prof1_, prof0_, t);
  }

  std::pair<cplx, cplx> rescaled(double t) const {
    auto a = autocorrelation(t);
    return {sqrt_n_ * a.first, sqrt_n_ * a.second};
  }

 private:
  PTParams params_;
  std::vector<double> prof1_, prof0_;
  double sqrt_n_;
};

// ---------------------------------------------------------------------------
// Time draws.

inline std::vector<double> sample_random_times(const RandomTimes& model) {
  if (model.count < 0) throw ParameterError("sample_random_times: count < 0");
  std::vector<double> out(static_cast<std::size_t>(model.count));
  Rng rng(model.seed);
  for (double& t : out) t = model.density.quantile(rng.uniform());
  return out;
}

inline std::vector<double> grid_times(const TimeGrid& grid) {
  if (grid.steps < 1) throw ParameterError("grid_times: steps must be >= 1");
  if (!(grid.t1 > grid.t0)) throw ParameterError("grid_times: need t1 > t0");
  std::vector<double> out(static_cast<std::size_t>(grid.steps) + 1);
  const double h = (grid.t1 - grid.t0) / static_cast<double>(grid.steps);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = grid.t0 + h * static_cast<double>(i);
  }
  out.back() = grid.t1;
  return out;
}

}  // namespace ptheta
