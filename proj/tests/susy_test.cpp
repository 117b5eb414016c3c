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

#include "ptheta/poschl_teller.hpp"
#include "ptheta/quadrature.hpp"
#include "ptheta/susy_partner.hpp"

namespace {

using namespace ptheta;

template <typename F>
double fd_first(F&& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) /
         (12 * h);
}

template <typename F>
double fd_second(F&& f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) -
          f(x + 2 * h)) /
         (12 * h * h);
}

// Raw factorization seed u_eps = sin^alpha cos^(1-beta) v_eps, assembled
// from scratch so the model's log-derivatives can be cross-checked by
// differentiating this product numerically.
double raw_seed(const PTParams& p, double eps, double x) {
  return std::pow(std::sin(x), p.alpha) *
         std::pow(std::cos(x), 1.0 - p.beta) *
         detail::seed_vjet(p, eps, x).v;
}

}  // namespace

TEST_CASE("reduced seeds carry consistent jets", "[susy]") {
  const PTParams p(std::sqrt(2.0), 3.0);
  for (double eps : {-2.0, 4.0, 9.0}) {
    auto v = [&](double x) { return detail::seed_vjet(p, eps, x).v; };
    for (double x : {0.3, 0.7, 1.0, 1.3, 1.5}) {
      const detail::VJet j = detail::seed_vjet(p, eps, x);
      REQUIRE(std::abs(j.dv - fd_first(v, x, 1e-4)) <
              1e-8 * (1.0 + std::abs(j.dv)));
      const double v2 = detail::seed_v2(p, eps, x, j);
      REQUIRE(std::abs(v2 - fd_second(v, x, 1e-3)) <
              1e-5 * (1.0 + std::abs(v2)));
    }
  }
}

TEST_CASE("first-order partner model", "[susy]") {
  const PTParams p(std::sqrt(2.0), 3.0);
  const double eps = 4.0;
  const PartnerModel m(p, {PartnerKind::FirstOrder, eps, 0.0, 0});

  // The seed is nodeless on the open interval.
  const double s0 = m.seed_value(0.1);
  for (int i = 1; i <= 200; ++i) {
    REQUIRE(m.seed_value(kHalfPi * i / 201.0) * s0 > 0.0);
  }

  // kappa = (log u_eps)' and V1 = V0 - (log u_eps)''.
  auto logu = [&](double x) { return std::log(std::abs(raw_seed(p, eps, x))); };
  for (double x : {0.3, 0.8, 1.2}) {
    REQUIRE(std::abs(m.kappa(x) - fd_first(logu, x, 1e-4)) <
            1e-7 * (1.0 + std::abs(m.kappa(x))));
    const double v1 = potential_v0(p, x) - fd_second(logu, x, 1e-3);
    REQUIRE(std::abs(m.potential_v1(x) - v1) <
            1e-5 * (1.0 + std::abs(m.potential_v1(x))));
  }

  // Partner states solve the partner equation at unchanged energies.
  for (int n : {0, 2, 5}) {
    const double e = eigenvalue(p, n);
    auto phi = [&](double x) { return m.partner_eigenfunction(n, x); };
    double worst = 0.0;
    for (int i = 0; i <= 80; ++i) {
      const double x = 0.2 + (kHalfPi - 0.4) * i / 80.0;
      const double resid =
          -0.5 * fd_second(phi, x, 1e-3) + (m.potential_v1(x) - e) * phi(x);
      worst = std::max(worst, std::abs(resid) / (1.0 + e));
    }
    REQUIRE(worst < 1e-6);
  }

  // ||A+ psi_n||^2 = E_n - eps, so the normalized images are unit vectors.
  for (int n : {0, 1, 4}) {
    const double gap = eigenvalue(p, n) - eps;
    const double q = integrate_gl(
        [&](double x) {
          const double v = m.apply_intertwiner(n, x);
          return v * v;
        },
        0.0, kHalfPi, 1000);
    REQUIRE(std::abs(q - gap) < 1e-7 * gap);
    const double nrm = integrate_gl(
        [&](double x) {
          const double v = m.partner_eigenfunction(n, x);
          return v * v;
        },
        0.0, kHalfPi, 1000);
    REQUIRE(std::abs(nrm - 1.0) < 1e-7);
  }

  // Distinct partner states stay orthogonal.
  const double cross = integrate_gl(
      [&](double x) {
        return m.partner_eigenfunction(0, x) * m.partner_eigenfunction(3, x);
      },
      0.0, kHalfPi, 1000);
  REQUIRE(std::abs(cross) < 1e-8);
}

TEST_CASE("second-order partner model", "[susy]") {
  const PTParams p(std::sqrt(2.0), 4.0);
  // Gap between E_0 ~ 14.66 and E_1 ~ 27.49.
  const PartnerModel m(p, {PartnerKind::SecondOrder, 20.0, 16.0, 0});

  // seed_value exposes the reduced Wronskian; W_u = S^2 W_v.
  auto logw = [&](double x) {
    const double s2 = std::pow(std::sin(x), 2.0 * p.alpha) *
                      std::pow(std::cos(x), 2.0 - 2.0 * p.beta);
    return std::log(std::abs(s2 * m.seed_value(x)));
  };
  for (double x : {0.35, 0.8, 1.2}) {
    REQUIRE(std::abs(m.eta(x) - fd_first(logw, x, 1e-4)) <
            1e-6 * (1.0 + std::abs(m.eta(x))));
    const double v1 = potential_v0(p, x) - fd_second(logw, x, 1e-3);
    REQUIRE(std::abs(m.potential_v1(x) - v1) <
            2e-4 * (1.0 + std::abs(m.potential_v1(x))));
  }

  // The Wronskian is nodeless across the interval.
  const double w0 = m.seed_value(0.1);
  for (int i = 1; i <= 200; ++i) {
    REQUIRE(m.seed_value(kHalfPi * i / 201.0) * w0 > 0.0);
  }

  for (int n : {0, 2, 4}) {
    const double e = eigenvalue(p, n);
    auto phi = [&](double x) { return m.partner_eigenfunction(n, x); };
    double worst = 0.0;
    for (int i = 0; i <= 80; ++i) {
      const double x = 0.2 + (kHalfPi - 0.4) * i / 80.0;
      const double resid =
          -0.5 * fd_second(phi, x, 1e-3) + (m.potential_v1(x) - e) * phi(x);
      worst = std::max(worst, std::abs(resid) / (1.0 + e));
    }
    REQUIRE(worst < 1e-4);
  }

  // ||B+ psi_n||^2 = (E_n - eps1)(E_n - eps2).
  for (int n : {0, 1, 3}) {
    const double gap =
        (eigenvalue(p, n) - 20.0) * (eigenvalue(p, n) - 16.0);
    const double q = integrate_gl(
        [&](double x) {
          const double v = m.apply_intertwiner(n, x);
          return v * v;
        },
        0.0, kHalfPi, 1200);
    REQUIRE(std::abs(q - gap) < 1e-6 * std::abs(gap));
    const double nrm = integrate_gl(
        [&](double x) {
          const double v = m.partner_eigenfunction(n, x);
          return v * v;
        },
        0.0, kHalfPi, 1200);
    REQUIRE(std::abs(nrm - 1.0) < 1e-6);
  }
}

TEST_CASE("partner preconditions are enforced", "[susy]") {
  const PTParams thin(std::sqrt(2.0), 1.8);
  REQUIRE_THROWS_AS(PartnerModel(thin, {PartnerKind::FirstOrder, 1.0, 0.0, 0}),
                    ParameterError);
  const PTParams p(std::sqrt(2.0), 3.0);
  REQUIRE_THROWS_AS(
      PartnerModel(p, {PartnerKind::FirstOrder, eigenvalue(p, 0) + 0.1, 0.0, 0}),
      ParameterError);
  // Second order needs beta > 3 and both seeds inside the level gap.
  REQUIRE_THROWS_AS(PartnerModel(p, {PartnerKind::SecondOrder, 20.0, 16.0, 0}),
                    ParameterError);
  const PTParams q(std::sqrt(2.0), 4.0);
  REQUIRE_THROWS_AS(PartnerModel(q, {PartnerKind::SecondOrder, 16.0, 20.0, 0}),
                    ParameterError);
  REQUIRE_THROWS_AS(PartnerModel(q, {PartnerKind::SecondOrder, 20.0, 20.0, 0}),
                    ParameterError);
  REQUIRE_THROWS_AS(PartnerModel(q, {PartnerKind::SecondOrder, 20.0, 10.0, 0}),
                    ParameterError);
  REQUIRE_THROWS_AS(PartnerModel(q, {PartnerKind::SecondOrder, 30.0, 16.0, 0}),
                    ParameterError);
  REQUIRE_THROWS_AS(PartnerModel(q, {PartnerKind::SecondOrder, 20.0, 16.0, -1}),
                    ParameterError);

  const PartnerModel first(p, {PartnerKind::FirstOrder, 4.0, 0.0, 0});
  REQUIRE_THROWS_AS(first.eta(0.5), ParameterError);
  REQUIRE_THROWS_AS(first.theta_coef(0.5), ParameterError);
  REQUIRE_THROWS_AS(first.kappa(0.0), DomainError);
  const PartnerModel second(q, {PartnerKind::SecondOrder, 20.0, 16.0, 0});
  REQUIRE_THROWS_AS(second.kappa(0.5), ParameterError);
}
