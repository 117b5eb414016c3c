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

// Trigonometric well on (0, pi/2) with Hamiltonian -d^2/dx^2 / 2 + V0:
//
//   V0(x) = (alpha-1) alpha / (2 sin^2 x) + (beta-1) beta / (2 cos^2 x)
//
// for exponents alpha, beta > 1.  The spectrum is purely discrete,
//   E_n = (2n + gamma)^2 / 2,   gamma = alpha + beta,
// with orthonormal bound states
//   psi_n(x) = N_n sin^alpha(x) cos^beta(x) 2F1(-n, n+gamma; alpha+1/2; sin^2 x).
//
// general_solution produces the full two-parameter solution family at any
// real energy; its value/derivative jets are the raw material for the
// Darboux transforms in susy_partner.hpp.

#include <cmath>

#include "ptheta/errors.hpp"
#include "ptheta/special_functions.hpp"

namespace ptheta {

inline constexpr int kEigenMaxIndex = 4096;
inline constexpr double kHalfPi = 1.57079632679489661923;

struct PTParams {
  double alpha;
  double beta;
  double gamma;          // alpha + beta, stored
  bool first_order_ok;   // beta > 2
  bool second_order_ok;  // beta > 3

  PTParams(double alpha_, double beta_)
      : alpha(alpha_),
        beta(beta_),
        gamma(alpha_ + beta_),
        first_order_ok(beta_ > 2.0),
        second_order_ok(beta_ > 3.0) {
    if (!(alpha > 1.0) || !(beta > 1.0) || !std::isfinite(alpha) ||
        !std::isfinite(beta)) {
      throw ParameterError("PTParams: alpha and beta must exceed 1");
    }
  }
};

struct EigenState {
  int n;
  double energy;
  double norm_const;
};

// Solution value and first two derivatives at one x.
struct SolutionJet {
  double u;
  double du;
  double d2u;
};

namespace detail {

inline void check_interior(double x, const char* who) {
  if (!(x > 0.0 && x < kHalfPi)) {
    throw DomainError(std::string(who) + ": x must lie strictly inside (0, pi/2)");
  }
}

}  // namespace detail

inline double potential_v0(const PTParams& p, double x) {
  detail::check_interior(x, "potential_v0");
  const double s = std::sin(x), c = std::cos(x);
  return 0.5 * (p.alpha - 1.0) * p.alpha / (s * s) +
         0.5 * (p.beta - 1.0) * p.beta / (c * c);
}

inline double eigenvalue(const PTParams& p, int n) {
  if (n < 0) throw ParameterError("eigenvalue: negative index");
  const double k = 2.0 * n + p.gamma;
  return 0.5 * k * k;
}

namespace detail {

inline double log_norm_const(const PTParams& p, int n) {
  const double a2 = p.alpha + 0.5, b2 = p.beta + 0.5;
  return 0.5 * (std::log(2.0) + std::log(2.0 * n + p.gamma) +
                std::lgamma(n + p.gamma) + std::lgamma(a2 + n) -
                std::lgamma(a2) - std::lgamma(n + 1.0) - std::lgamma(a2) -
                std::lgamma(b2) - (std::lgamma(b2 + n) - std::lgamma(b2)));
}

inline void check_eigen_index(int n, const char* who) {
  if (n < 0) throw ParameterError(std::string(who) + ": negative index");
  if (n > kEigenMaxIndex) {
    throw CapacityError(std::string(who) + ": index exceeds maximum");
  }
}

}  // namespace detail

inline EigenState eigen_state(const PTParams& p, int n) {
  detail::check_eigen_index(n, "eigen_state");
  return {n, eigenvalue(p, n), std::exp(detail::log_norm_const(p, n))};
}

// Bound state value; vanishes like sin^alpha, cos^beta at the endpoints.
inline double eigenfunction(const PTParams& p, int n, double x) {
  detail::check_eigen_index(n, "eigenfunction");
  detail::check_interior(x, "eigenfunction");
  const double s = std::sin(x), c = std::cos(x);
  const double z = s * s;
  const double poly = gauss_2f1({-static_cast<double>(n), n + p.gamma,
                                 p.alpha + 0.5, z});
  const double ln = detail::log_norm_const(p, n) + p.alpha * std::log(s) +
                    p.beta * std::log(c);
  return std::exp(ln) * poly;
}

// Value and x-derivative of psi_n in one evaluation.
struct EigenJet {
  double psi;
  double dpsi;
};

inline EigenJet eigenfunction_jet(const PTParams& p, int n, double x) {
  detail::check_eigen_index(n, "eigenfunction_jet");
  detail::check_interior(x, "eigenfunction_jet");
  const double s = std::sin(x), c = std::cos(x);
  const double z = s * s;
  const double nn = static_cast<double>(n);
  const double poly = gauss_2f1({-nn, n + p.gamma, p.alpha + 0.5, z});
  double dpoly = 0.0;
  if (n > 0) {
    dpoly = (-nn) * (n + p.gamma) / (p.alpha + 0.5) *
            gauss_2f1({-nn + 1.0, n + p.gamma + 1.0, p.alpha + 1.5, z});
  }
  const double amp = std::exp(detail::log_norm_const(p, n));
  const double sa = std::pow(s, p.alpha), cb = std::pow(c, p.beta);
  const double psi = amp * sa * cb * poly;
  // d/dx [s^a c^b P(sin^2 x)] =
  //   s^(a-1) c^(b-1) (a c^2 - b s^2) P + 2 s^(a+1) c^(b+1) P'.
  const double dpsi =
      amp * (sa / s) * (cb / c) *
      ((p.alpha * c * c - p.beta * s * s) * poly + 2.0 * s * s * c * c * dpoly);
  return {psi, dpsi};
}

namespace detail {

// One fundamental branch s^ps c^qs Phi(sin^2 x) of the energy-eps
// equation, with Phi a conjugate-pair 2F1.  Returns value and x-derivative.
struct BranchJet {
  double v;
  double dv;
};

inline BranchJet power_branch_jet(double ps, double qs, double p_pair,
                                  double q2, double c_pair, double s, double c) {
  const double z = s * s;
  const double phi = gauss_2f1_pair(p_pair, q2, c_pair, z);
  const double dphi = gauss_2f1_pair_deriv(p_pair, q2, c_pair, z);
  const double sp = std::pow(s, ps), cq = std::pow(c, qs);
  double v = sp * cq * phi;
  double dv = std::pow(s, ps - 1.0) * std::pow(c, qs - 1.0) *
                  (ps * c * c - qs * s * s) * phi +
              2.0 * std::pow(s, ps + 1.0) * std::pow(c, qs + 1.0) * dphi;
  return {v, dv};
}

}  // namespace detail

// General solution u = A u1 + B u2 of -u''/2 + V0 u = eps u at arbitrary
// real energy eps.  u1 is the branch regular at x = 0; u2 is the singular
// companion, defined only when 3/2 - alpha is not a nonpositive integer.
// The second derivative comes from the differential equation itself.
inline SolutionJet general_solution(const PTParams& p, double eps, double A,
                                    double B, double x) {
  detail::check_interior(x, "general_solution");
  if (!std::isfinite(eps)) throw ParameterError("general_solution: bad energy");
  const double c2 = 1.5 - p.alpha;
  if (B != 0.0 && is_nonpositive_integer(c2)) {
    throw ParameterError(
        "general_solution: singular-branch parameter 3/2 - alpha is a "
        "nonpositive integer; the second branch is undefined");
  }
  const double s = std::sin(x), c = std::cos(x);
  const double z = s * s;
  const double q2 = 0.5 * eps;
  const double c1 = p.alpha + 0.5;
  double u = 0.0, du = 0.0;
  const bool far = z > 0.75;
  if (A != 0.0) {
    detail::BranchJet j =
        far ? detail::power_branch_jet(p.alpha, 1.0 - p.beta,
                                       0.5 * (1.0 + p.alpha - p.beta), q2, c1,
                                       s, c)
            : detail::power_branch_jet(p.alpha, p.beta, 0.5 * p.gamma, q2, c1,
                                       s, c);
    u += A * j.v;
    du += A * j.dv;
  }
  if (B != 0.0) {
    detail::BranchJet j =
        far ? detail::power_branch_jet(1.0 - p.alpha, 1.0 - p.beta,
                                       1.0 - 0.5 * p.gamma, q2, c2, s, c)
            : detail::power_branch_jet(1.0 - p.alpha, p.beta,
                                       0.5 * (1.0 + p.beta - p.alpha), q2, c2,
                                       s, c);
    u += B * j.v;
    du += B * j.dv;
  }
  const double v0 = 0.5 * (p.alpha - 1.0) * p.alpha / (s * s) +
                    0.5 * (p.beta - 1.0) * p.beta / (c * c);
  return {u, du, 2.0 * (v0 - eps) * u};
}

}  // namespace ptheta
