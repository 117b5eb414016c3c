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

namespace {

using namespace ptheta;

double inner(const PTParams& p, int n, int m, std::size_t nodes) {
  return integrate_gl(
      [&](double x) { return eigenfunction(p, n, x) * eigenfunction(p, m, x); },
      0.0, kHalfPi, nodes);
}

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

}  // namespace

TEST_CASE("potential and spectrum closed forms", "[pt_model]") {
  const PTParams p(std::sqrt(2.0), 4.0);
  // At x = pi/4 both 1/(2 sin^2), 1/(2 cos^2) factors are 1, so
  // V0 = (alpha-1)alpha + (beta-1)beta = 14 - sqrt(2).
  REQUIRE(std::abs(potential_v0(p, 0.25 * kPi) - (14.0 - std::sqrt(2.0))) <
          1e-12);
  const PTParams q(std::sqrt(2.0), 3.0);
  REQUIRE(std::abs(q.gamma - (std::sqrt(2.0) + 3.0)) < 1e-15);
  REQUIRE(std::abs(eigenvalue(q, 0) - (5.5 + 3.0 * std::sqrt(2.0))) < 1e-12);
  for (int n = 0; n < 6; ++n) {
    const double k = 2.0 * n + q.gamma;
    REQUIRE(eigenvalue(q, n) == 0.5 * k * k);
    if (n > 0) REQUIRE(eigenvalue(q, n) > eigenvalue(q, n - 1));
  }
  const EigenState st = eigen_state(q, 3);
  REQUIRE(st.n == 3);
  REQUIRE(st.energy == eigenvalue(q, 3));
  REQUIRE(st.norm_const > 0.0);
}

TEST_CASE("eigenfunctions are normalized and orthogonal", "[pt_model]") {
  for (const PTParams& p : {PTParams(std::sqrt(2.0), 4.0),
                            PTParams(2.5, 3.7)}) {
    for (int n : {0, 1, 5, 12, 20}) {
      REQUIRE(std::abs(inner(p, n, n, 1500) - 1.0) < 1e-9);
    }
    REQUIRE(std::abs(inner(p, 0, 2, 1500)) < 1e-10);
    REQUIRE(std::abs(inner(p, 1, 3, 1500)) < 1e-10);
    REQUIRE(std::abs(inner(p, 2, 5, 1500)) < 1e-10);
  }
}

TEST_CASE("ground state matches its explicit form", "[pt_model]") {
  const PTParams p(1.8, 2.6);
  const double n0 = std::sqrt(
      2.0 * p.gamma *
      std::exp(std::lgamma(p.gamma) - std::lgamma(p.alpha + 0.5) -
               std::lgamma(p.beta + 0.5)));
  for (double x : {0.3, 0.9, 1.4}) {
    const double want =
        n0 * std::pow(std::sin(x), p.alpha) * std::pow(std::cos(x), p.beta);
    REQUIRE(std::abs(eigenfunction(p, 0, x) - want) < 1e-12 * want);
  }
}

TEST_CASE("eigenfunctions satisfy the eigenvalue equation", "[pt_model]") {
  const PTParams p(std::sqrt(2.0), 3.0);
  const double h = 1e-3;
  for (int n : {0, 3, 8}) {
    const double e = eigenvalue(p, n);
    auto psi = [&](double x) { return eigenfunction(p, n, x); };
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = 0.2 + (kHalfPi - 0.4) * i / 100.0;
      const double resid =
          -0.5 * fd_second(psi, x, h) + (potential_v0(p, x) - e) * psi(x);
      worst = std::max(worst, std::abs(resid) / (1.0 + e));
    }
    REQUIRE(worst < 1e-6);
  }
}

TEST_CASE("eigenfunction jets carry the derivative", "[pt_model]") {
  const PTParams p(2.5, 3.7);
  // Pointwise eigenfunction noise (~1e-12 at n = 8) is amplified by 1/h,
  // so the step stays coarse and the gate budgets ~2e-8 of stencil error.
  for (int n : {0, 2, 8}) {
    auto psi = [&](double x) { return eigenfunction(p, n, x); };
    for (double x : {0.3, 0.8, 1.2}) {
      const EigenJet j = eigenfunction_jet(p, n, x);
      REQUIRE(std::abs(j.psi - psi(x)) < 1e-13 * std::max(1.0, std::abs(j.psi)));
      const double fd = fd_first(psi, x, 5e-4);
      REQUIRE(std::abs(j.dpsi - fd) < 1e-7 * (1.0 + std::abs(j.dpsi)));
    }
  }
}

TEST_CASE("general solutions hold a constant wronskian across branches",
          "[pt_model]") {
  const PTParams p(1.8, 2.2);
  const double eps = 7.3;
  auto wronskian = [&](double x) {
    const SolutionJet u1 = general_solution(p, eps, 1.0, 0.0, x);
    const SolutionJet u2 = general_solution(p, eps, 0.0, 1.0, x);
    return u1.u * u2.du - u1.du * u2.u;
  };
  const double w0 = wronskian(0.3);
  REQUIRE(std::abs(w0) > 0.0);
  // z = sin^2 x crosses the series switch between x = 0.9 and x = 1.1.
  for (double x : {0.5, 0.9, 1.1, 1.35, 1.5}) {
    REQUIRE(std::abs(wronskian(x) - w0) < 1e-9 * std::abs(w0));
  }
}

TEST_CASE("general solutions satisfy the equation with consistent jets",
          "[pt_model]") {
  // alpha must keep 3/2 - alpha away from nonpositive integers for the
  // singular branch to exist.
  const PTParams p(2.2, 3.3);
  const double eps = 13.0;
  auto u = [&](double x) { return general_solution(p, eps, 0.7, -0.4, x).u; };
  for (double x : {0.35, 0.8, 1.25}) {
    const SolutionJet j = general_solution(p, eps, 0.7, -0.4, x);
    REQUIRE(std::abs(fd_second(u, x, 1e-3) - j.d2u) <
            1e-5 * (1.0 + std::abs(j.d2u)));
    REQUIRE(std::abs(fd_first(u, x, 1e-4) - j.du) <
            1e-7 * (1.0 + std::abs(j.du)));
    // d2u must equal 2 (V0 - eps) u identically.
    REQUIRE(std::abs(j.d2u - 2.0 * (potential_v0(p, x) - eps) * j.u) <
            1e-10 * (1.0 + std::abs(j.d2u)));
  }
}

TEST_CASE("the regular branch at an eigenvalue is the bound state",
          "[pt_model]") {
  const PTParams p(std::sqrt(2.0), 3.0);
  const int n = 2;
  const double e = eigenvalue(p, n);
  const double r1 =
      general_solution(p, e, 1.0, 0.0, 0.4).u / eigenfunction(p, n, 0.4);
  const double r2 =
      general_solution(p, e, 1.0, 0.0, 1.1).u / eigenfunction(p, n, 1.1);
  REQUIRE(std::abs(r1 - r2) < 1e-10 * std::abs(r1));
}

TEST_CASE("model guards", "[pt_model]") {
  REQUIRE_THROWS_AS(PTParams(1.0, 3.0), ParameterError);
  REQUIRE_THROWS_AS(PTParams(2.0, 0.9), ParameterError);
  const PTParams p(2.0, 3.0);
  REQUIRE_THROWS_AS(potential_v0(p, 0.0), DomainError);
  REQUIRE_THROWS_AS(eigenfunction(p, 0, kHalfPi), DomainError);
  REQUIRE_THROWS_AS(eigenfunction(p, 0, -0.1), DomainError);
  REQUIRE_THROWS_AS(eigenvalue(p, -1), ParameterError);
  REQUIRE_THROWS_AS(eigen_state(p, kEigenMaxIndex + 1), CapacityError);
  // 3/2 - alpha a nonpositive integer leaves the singular branch undefined.
  REQUIRE_THROWS_AS(general_solution(PTParams(1.5, 3.0), 5.0, 0.0, 1.0, 0.7),
                    ParameterError);
  REQUIRE_NOTHROW(general_solution(PTParams(1.5, 3.0), 5.0, 1.0, 0.0, 0.7));
  REQUIRE_THROWS_AS(general_solution(PTParams(2.5, 3.0), 5.0, 1.0, 1.0, 0.7),
                    ParameterError);
}
