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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "ptheta/autocorr.hpp"
#include "ptheta/jacobi_group.hpp"
#include "ptheta/rng.hpp"
#include "ptheta/theta.hpp"

namespace {

using namespace ptheta;

}  // namespace

TEST_CASE("coefficient profiles sample the window on the lattice",
          "[autocorr]") {
  SECTION("exact small case") {
    const std::vector<double> prof =
        coefficient_profile(Window{Indicator{0.0, 1.0}}, 4);
    REQUIRE(prof.size() == 5);
    for (int n = 0; n < 4; ++n) REQUIRE(prof[static_cast<std::size_t>(n)] == 0.25);
    REQUIRE(prof[4] == 0.0);  // half-open at the right edge
  }

  SECTION("profiles are riemann sums of the window") {
    const Window tent{TableFn{{0.0, 0.8, 1.6}, {0.0, 1.25, 0.0}}};
    const std::vector<double> prof = coefficient_profile(tent, 512);
    double total = 0.0;
    for (double p : prof) {
      REQUIRE(p >= 0.0);
      total += p;
    }
    REQUIRE(std::abs(total - 1.0) < 0.01);
  }

  SECTION("guards") {
    REQUIRE_THROWS_AS(coefficient_profile(Window{HermiteBasis{0}}, 8),
                      ParameterError);
    REQUIRE_THROWS_AS(coefficient_profile(Window{Indicator{0.0, 1.0}}, 0),
                      ParameterError);
  }
}

TEST_CASE("autocorrelation sums behave like characteristic functions",
          "[autocorr]") {
  const PTParams p(std::sqrt(2.0), 3.0);
  const Window box1{Indicator{0.0, 1.0}};
  const Window box0{Indicator{1.0 / 3.0, 4.0 / 3.0}};
  const AutocorrConfig cfg(p, box1, box0, 32, TimeGrid{});

  SECTION("value at zero is the profile mass") {
    const std::vector<double> prof = coefficient_profile(box1, 32);
    double mass = 0.0;
    for (double c : prof) mass += c;
    const auto a = autocorrelation(cfg, 0.0);
    REQUIRE(a.first == cplx(mass, 0.0));
  }

  SECTION("modulus is maximal at zero and conjugates under time reversal") {
    const double peak = autocorrelation(cfg, 0.0).first.real();
    for (double t : {0.3, 1.7, 2.2}) {
      const auto fwd = autocorrelation(cfg, t);
      const auto bwd = autocorrelation(cfg, -t);
      REQUIRE(std::abs(fwd.first) <= peak + 1e-14);
      REQUIRE(bwd.first == std::conj(fwd.first));
      REQUIRE(bwd.second == std::conj(fwd.second));
    }
  }

  SECTION("the cached evaluator reproduces the one-shot sums") {
    const AutocorrEvaluator ev(cfg);
    for (double t : {0.0, 0.9, -1.3}) {
      REQUIRE(ev.autocorrelation(t) == autocorrelation(cfg, t));
      REQUIRE(ev.rescaled(t) == rescaled_x(cfg, t));
    }
  }

  SECTION("a single occupied level gives a pure phase") {
    const AutocorrConfig tiny(p, box1, box0, 1, TimeGrid{});
    const auto x = rescaled_x(tiny, 0.7);
    REQUIRE(std::abs(std::abs(x.first) - 1.0) < 1e-15);
    REQUIRE(std::abs(std::abs(x.second) - 1.0) < 1e-15);
  }
}

TEST_CASE("rescaled sums equal the theta values on the lifted section",
          "[autocorr]") {
  const PTParams p(std::sqrt(2.0), 3.0);
  const Window w1{Indicator{0.0, 1.0}};
  const Window w0{Indicator{1.0 / 3.0, 4.0 / 3.0}};
  const ThetaFunction th1(w1), th0(w0);
  Rng rng(314159);
  double worst = 0.0;
  for (long n_scale : {8L, 32L}) {
    const std::vector<double> prof1 = coefficient_profile(w1, n_scale);
    const std::vector<double> prof0 = coefficient_profile(w0, n_scale);
    const double sqn = std::sqrt(static_cast<double>(n_scale));
    for (int i = 0; i < 25; ++i) {
      const double t = rng.uniform();
      const auto a = autocorr_from_profiles(p, prof1, prof0, t);
      const GroupPoint g = lift_time(t, n_scale, p.gamma);
      worst = std::max(worst, std::abs(sqn * a.first - th1(g)));
      worst = std::max(worst, std::abs(sqn * a.second - th0(g)));
    }
  }
  REQUIRE(worst < 1e-10);
}

TEST_CASE("time densities expose consistent pdf and quantile maps",
          "[autocorr]") {
  SECTION("uniform") {
    const TimeDensity u = TimeDensity::uniform(2.0, 5.0);
    REQUIRE(u.lo() == 2.0);
    REQUIRE(u.hi() == 5.0);
    REQUIRE(u.quantile(0.0) == 2.0);
    REQUIRE(std::abs(u.quantile(0.5) - 3.5) < 1e-15);
    REQUIRE(u.pdf(3.0) == 1.0 / 3.0);
    REQUIRE(u.pdf(1.9) == 0.0);
    REQUIRE(u.pdf(5.0) == 0.0);
  }

  SECTION("triangular") {
    const TimeDensity tr = TimeDensity::triangular(1.0, 3.0);
    REQUIRE(std::abs(tr.quantile(0.5) - 2.0) < 1e-15);
    REQUIRE(std::abs(tr.quantile(0.125) - 1.5) < 1e-15);
    REQUIRE(tr.pdf(2.0) == 1.0);  // 2 / (b - a) at the peak
    REQUIRE(tr.pdf(1.0) == 0.0);
    REQUIRE(tr.pdf(3.0) == 0.0);
  }

  SECTION("a tabulated tent equals the triangular closed form") {
    const TimeDensity tab = TimeDensity::table({1.0, 2.0, 3.0}, {0.0, 1.0, 0.0});
    const TimeDensity tr = TimeDensity::triangular(1.0, 3.0);
    for (int i = 1; i < 20; ++i) {
      const double u = static_cast<double>(i) / 20.0;
      REQUIRE(std::abs(tab.quantile(u) - tr.quantile(u)) < 1e-12);
    }
    REQUIRE(std::abs(tab.pdf(2.0) - 1.0) < 1e-15);
  }

  SECTION("guards") {
    REQUIRE_THROWS_AS(TimeDensity::uniform(2.0, 2.0), ParameterError);
    REQUIRE_THROWS_AS(TimeDensity::table({1.0, 2.0}, {1.0, 2.0}),
                      ParameterError);  // mass 1.5
    REQUIRE_THROWS_AS(TimeDensity::table({1.0, 0.5, 2.0}, {0.0, 2.0, 0.0}),
                      ParameterError);
    REQUIRE_THROWS_AS(TimeDensity::table({1.0, 2.0, 3.0}, {0.0, 1.0}),
                      ParameterError);
    REQUIRE_THROWS_AS(TimeDensity::table({0.0, 1.0}, {2.0, -0.5}),
                      ParameterError);
  }
}

TEST_CASE("time draws follow the requested densities", "[autocorr]") {
  SECTION("uniform empirical law") {
    RandomTimes model{TimeDensity::uniform(0.0, 1.0), 100000, 7};
    const std::vector<double> ts = sample_random_times(model);
    REQUIRE(ts.size() == 100000);
    std::vector<double> sorted = ts;
    std::sort(sorted.begin(), sorted.end());
    double d = 0.0;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      d = std::max(d, std::abs(sorted[i] - static_cast<double>(i) / n));
      d = std::max(d, std::abs(static_cast<double>(i + 1) / n - sorted[i]));
    }
    REQUIRE(d < 0.01);

    // Same seed, same stream.
    REQUIRE(sample_random_times(model) == ts);
  }

  SECTION("triangular histogram") {
    RandomTimes model{TimeDensity::triangular(1.0, 3.0), 100000, 8};
    const std::vector<double> ts = sample_random_times(model);
    const int bins = 40;
    std::vector<long> hist(bins, 0);
    for (double t : ts) {
      const int b = std::min(
          bins - 1, static_cast<int>((t - 1.0) / 2.0 * bins));
      ++hist[static_cast<std::size_t>(std::max(0, b))];
    }
    auto cdf = [](double t) {
      const double s = t - 1.0;
      return t < 2.0 ? 0.5 * s * s : 1.0 - 0.5 * (2.0 - s) * (2.0 - s);
    };
    for (int b = 0; b < bins; ++b) {
      const double e0 = 1.0 + 2.0 * b / static_cast<double>(bins);
      const double e1 = 1.0 + 2.0 * (b + 1) / static_cast<double>(bins);
      const double want = cdf(e1) - cdf(e0);
      const double got =
          static_cast<double>(hist[static_cast<std::size_t>(b)]) / 100000.0;
      REQUIRE(std::abs(got - want) < 0.015);
    }
  }

  SECTION("guards") {
    REQUIRE(sample_random_times({TimeDensity::uniform(0.0, 1.0), 0, 1})
                .empty());
    REQUIRE_THROWS_AS(
        sample_random_times({TimeDensity::uniform(0.0, 1.0), -1, 1}),
        ParameterError);
  }
}

TEST_CASE("time grids are inclusive and exact at both ends", "[autocorr]") {
  const std::vector<double> ts = grid_times({0.0, 1.0, 4});
  REQUIRE(ts == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const std::vector<double> odd = grid_times({0.0, 1.0, 3});
  REQUIRE(odd.size() == 4);
  REQUIRE(odd.back() == 1.0);
  REQUIRE_THROWS_AS(grid_times({0.0, 1.0, 0}), ParameterError);
  REQUIRE_THROWS_AS(grid_times({1.0, 1.0, 4}), ParameterError);
}

TEST_CASE("autocorrelation configs require physical occupations",
          "[autocorr]") {
  const PTParams p(std::sqrt(2.0), 3.0);
  const Window box{Indicator{0.0, 1.0}};
  REQUIRE_THROWS_AS(AutocorrConfig(p, Window{HermiteBasis{0}}, box, 8,
                                   TimeGrid{}),
                    ParameterError);
  REQUIRE_THROWS_AS(AutocorrConfig(p, box, Window{GaussianBump{0.0, 1.0}}, 8,
                                   TimeGrid{}),
                    ParameterError);
  REQUIRE_THROWS_AS(AutocorrConfig(p, box, box, 0, TimeGrid{}),
                    ParameterError);
}
