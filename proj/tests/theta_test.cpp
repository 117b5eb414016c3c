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

#include "ptheta/jacobi_group.hpp"
#include "ptheta/rng.hpp"
#include "ptheta/theta.hpp"
#include "ptheta/windows.hpp"

namespace {

using namespace ptheta;

cplx unit_phase(double t) { return std::polar(1.0, kTwoPi * t); }

// Direct lattice sum oracle.  The rotated window comes from its own
// certified series (tol 1e-12) rather than the ThetaFunction internals,
// and the lattice cut is a crude fixed w-radius instead of the tuned
// per-window radii.
cplx theta_oracle(const Window& f, const GroupPoint& g) {
  const double sq = std::sqrt(g.y);
  std::vector<double> coeffs;
  if (f.kind() == WindowKind::HermiteBasis) {
    coeffs = hermite_coeffs(f, f.as_hermite().k + 1);
  } else {
    coeffs = make_rotated_window(f, g.phi, 1e-12).coeffs;
  }
  const double reach = 30.0;
  const long n0 = static_cast<long>(std::ceil(g.xi2 - reach / sq));
  const long n1 = static_cast<long>(std::floor(g.xi2 + reach / sq));
  cplx sum = 0.0;
  for (long n = n0; n <= n1; ++n) {
    const double wn = static_cast<double>(n) - g.xi2;
    sum += rotated_window_series(coeffs, g.phi, wn * sq) *
           unit_phase(0.5 * wn * wn * g.x + static_cast<double>(n) * g.xi1);
  }
  return std::pow(g.y, 0.25) * unit_phase(g.zeta - 0.5 * g.xi1 * g.xi2) * sum;
}

}  // namespace

TEST_CASE("theta values match a direct lattice sum", "[theta]") {
  const Window h0{HermiteBasis{0}};
  const Window h2{HermiteBasis{2}};
  const Window bump{GaussianBump{0.3, 0.7}};
  Rng rng(5150);
  for (const Window& f : {h0, h2, bump}) {
    const ThetaFunction th(f);
    for (int i = 0; i < 8; ++i) {
      const GroupPoint g = sample_haar(rng);
      const cplx got = th(g);
      const cplx want = theta_oracle(f, g);
      REQUIRE(std::abs(got - want) < 1e-9 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("sharp windows on the axis sum their exact support", "[theta]") {
  const Window box{Indicator{0.0, 1.0}};
  const Window tent{TableFn{{0.0, 0.4, 1.2}, {0.0, 1.0, 0.0}}};
  Rng rng(31);
  for (const Window& f : {box, tent}) {
    const ThetaFunction th(f);
    for (long m : {0L, 1L, 2L, 5L}) {
      GroupPoint g = sample_haar(rng);
      g.phi = static_cast<double>(m) * kPi;
      const double sq = std::sqrt(g.y);
      const double refl = (m % 2 == 0) ? 1.0 : -1.0;
      cplx front(1.0, 0.0);
      switch (m % 4) {  // (-i)^m
        case 1: front = {0.0, -1.0}; break;
        case 2: front = {-1.0, 0.0}; break;
        case 3: front = {0.0, 1.0}; break;
        default: break;
      }
      cplx sum = 0.0;
      for (long n = -4000; n <= 4000; ++n) {
        const double wn = static_cast<double>(n) - g.xi2;
        const double fv = f(refl * wn * sq);
        if (fv == 0.0) continue;
        sum += fv * unit_phase(0.5 * wn * wn * g.x +
                               static_cast<double>(n) * g.xi1);
      }
      const cplx want = std::pow(g.y, 0.25) *
                        unit_phase(g.zeta - 0.5 * g.xi1 * g.xi2) * front * sum;
      const cplx got = th(g);
      REQUIRE(std::abs(got - want) < 1e-12 * (1.0 + std::abs(want)));
      if (m == 0) {
        REQUIRE(theta(f, g) == got);
      }
    }
  }
}

TEST_CASE("theta is invariant under the lattice generators", "[theta]") {
  const std::vector<Window> windows = {
      Window{HermiteBasis{0}},    Window{HermiteBasis{1}},
      Window{HermiteBasis{3}},    Window{GaussianBump{0.3, 0.7}},
      Window{Indicator{0.0, 1.0}},
      Window{TableFn{{-0.3, 0.5, 1.0}, {0.0, 0.8, 0.0}}}};
  Rng rng(99);
  for (const Window& f : windows) {
    const ThetaFunction th(f);
    const double tol = f.sharp() ? 1e-6 : 1e-8;
    for (int i = 0; i < 40; ++i) {
      const GroupPoint g = sample_haar(rng);
      const cplx v0 = th(g);
      for (int k = 1; k <= 5; ++k) {
        const cplx vk = th(apply_generator(k, g));
        REQUIRE(std::abs(vk - v0) < tol * (1.0 + std::abs(v0)));
      }
    }
  }
}

TEST_CASE("theta is invariant under full reduction", "[theta]") {
  const std::vector<Window> windows = {Window{HermiteBasis{1}},
                                       Window{GaussianBump{0.3, 0.7}}};
  Rng rng(555);
  for (const Window& f : windows) {
    const ThetaFunction th(f);
    for (int i = 0; i < 20; ++i) {
      GroupPoint g;
      g.x = (rng.uniform() - 0.5) * 8.0;
      g.y = std::exp(std::log(1e-3) +
                     rng.uniform() * (std::log(3.0) - std::log(1e-3)));
      g.phi = (rng.uniform() - 0.5) * 20.0;
      g.xi1 = (rng.uniform() - 0.5) * 6.0;
      g.xi2 = (rng.uniform() - 0.5) * 6.0;
      g.zeta = (rng.uniform() - 0.5) * 6.0;
      const cplx a = th(g);
      const cplx b = th(reduce_to_fundamental(g));
      REQUIRE(std::abs(a - b) < 1e-8 * (1.0 + std::abs(a)));
    }
  }
}

TEST_CASE("pair evaluation matches the single evaluations", "[theta]") {
  const Window h0{HermiteBasis{0}};
  const Window bump{GaussianBump{0.3, 0.7}};
  const Window box1{Indicator{0.0, 1.0}};
  const Window box2{Indicator{1.0 / 3.0, 4.0 / 3.0}};

  SECTION("smooth pair off the axis") {
    const ThetaFunction a(h0), b(bump);
    Rng rng(808);
    for (int i = 0; i < 10; ++i) {
      const GroupPoint g = sample_haar(rng);
      const ThetaPair pv = pair_value(a, b, g);
      const cplx va = a(g), vb = b(g);
      REQUIRE(std::abs(pv.c1 - va) < 1e-12 * (1.0 + std::abs(va)));
      REQUIRE(std::abs(pv.c0 - vb) < 1e-12 * (1.0 + std::abs(vb)));
      const ThetaPair tp = theta_pair(h0, bump, g);
      REQUIRE(tp.c1 == va);
      REQUIRE(tp.c0 == vb);
    }
  }

  SECTION("sharp pair off the axis") {
    const ThetaFunction a(box1), b(box2);
    Rng rng(809);
    for (int i = 0; i < 6; ++i) {
      const GroupPoint g = sample_haar(rng);
      const ThetaPair pv = pair_value(a, b, g);
      REQUIRE(std::abs(pv.c1 - a(g)) < 1e-13 * (1.0 + std::abs(pv.c1)));
      REQUIRE(std::abs(pv.c0 - b(g)) < 1e-13 * (1.0 + std::abs(pv.c0)));
    }
  }

  SECTION("sharp pair on the axis falls back to the exact sums") {
    const ThetaFunction a(box1), b(box2);
    const GroupPoint g = lift_time(0.4, 16, std::sqrt(2.0) + 3.0);
    const ThetaPair pv = pair_value(a, b, g);
    REQUIRE(pv.c1 == a(g));
    REQUIRE(pv.c0 == b(g));
  }
}

TEST_CASE("the rotation coordinate has period four pi with a sign", "[theta]") {
  Rng rng(7);
  for (const Window& f :
       {Window{HermiteBasis{2}}, Window{GaussianBump{0.3, 0.7}}}) {
    const ThetaFunction th(f);
    const GroupPoint g = sample_haar(rng);
    GroupPoint g2 = g;
    g2.phi = g.phi + 2.0 * kPi;
    GroupPoint g4 = g;
    g4.phi = g.phi + 4.0 * kPi;
    const cplx v = th(g);
    REQUIRE(std::abs(th(g2) + v) < 1e-10 * (1.0 + std::abs(v)));
    REQUIRE(std::abs(th(g4) - v) < 1e-10 * (1.0 + std::abs(v)));
  }
}

TEST_CASE("a single lattice term dominates at large height", "[theta]") {
  const GroupPoint g{0.3, 1e6, 1.2, 0.375, 1e-5, -0.2};
  const ThetaFunction th(Window{HermiteBasis{0}});
  const double w0 = 0.0 - g.xi2;
  const cplx want = std::pow(g.y, 0.25) *
                    unit_phase(g.zeta - 0.5 * g.xi1 * g.xi2) *
                    std::polar(1.0, -0.5 * g.phi) *
                    hermite_fn(0, w0 * std::sqrt(g.y)) *
                    unit_phase(0.5 * w0 * w0 * g.x);
  const cplx got = th(g);
  REQUIRE(std::abs(got - want) < 1e-10 * std::abs(want));
}

TEST_CASE("a frozen point value pins the overall normalization", "[theta]") {
  const GroupPoint g0{0.13, 1.07, 0.9, 0.21, -0.33, 0.05};
  const ThetaFunction th(Window{HermiteBasis{0}});
  const cplx got = th(g0);
  const cplx want(0.9624893215960757, -0.12428765933055924);
  REQUIRE(std::abs(got - want) < 1e-9);
}

TEST_CASE("theta guards and reported bounds", "[theta]") {
  const Window h0{HermiteBasis{0}};
  const Window box{Indicator{0.0, 1.0}};
  const Window bump{GaussianBump{0.3, 0.7}};

  const ThetaFunction th(h0);
  REQUIRE_THROWS_AS(th({0.0, 0.0, 0.0, 0.0, 0.0, 0.0}), DomainError);
  REQUIRE_THROWS_AS(th({0.0, -1.0, 0.0, 0.0, 0.0, 0.0}), DomainError);

  REQUIRE_THROWS_AS(ThetaFunction(h0, ThetaOptions{0.0, 400}), ParameterError);
  REQUIRE_THROWS_AS(ThetaFunction(box, ThetaOptions{1e-10, 0}),
                    ParameterError);
  REQUIRE_THROWS_AS(ThetaFunction(box, ThetaOptions{1e-10, 514}),
                    ParameterError);

  const ThetaFunction tb(bump);
  REQUIRE(tb.achieved_bound() == 1e-10);

  // Sharp windows report the L2 mass their Hermite projection discards.
  const ThetaFunction ts(box);
  const std::vector<double> c = hermite_coeffs(box, 400);
  double kept = 0.0;
  for (double ck : c) kept += ck * ck;
  const double tail = std::sqrt(std::max(0.0, window_l2_squared(box) - kept));
  REQUIRE(std::abs(ts.achieved_bound() - tail) < 1e-15);
  REQUIRE(ts.achieved_bound() > 0.0);
  REQUIRE(ts.achieved_bound() < 0.5);

  // Heights so small the lattice cut would need tens of millions of terms
  // are refused rather than silently truncated.
  REQUIRE_THROWS_AS(ts({0.0, 1e-13, 0.4, 0.0, 0.0, 0.0}), AccuracyError);
}
