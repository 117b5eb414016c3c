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

// Darboux partners of the trigonometric well.
//
// First order: a nodeless factorization solution u_eps (energy eps below
// the ground state) defines kappa = (log u_eps)' and the intertwiner
// A+ = (-d/dx + kappa)/sqrt(2); the partner potential is
//   V1 = alpha(alpha+1)/(2 sin^2) + (beta-2)(beta-1)/(2 cos^2) - (log v_eps)''
// with u_eps = sin^alpha cos^(1-beta) v_eps.  Partner states
// A+ psi_n / sqrt(E_n - eps) are orthonormal with unchanged energies.
//
// Second order: two seeds with energies eps2 < eps1 inside a spectral gap
// (E_l, E_{l+1}) are combined through their Wronskian W.  With
// eta = (log W)' and theta = eta'/2 + eta^2/2 - 2 V0 + eps1 + eps2, the
// intertwiner is B+ = (d^2/dx^2 - eta d/dx + theta)/2 and the partner
// states are B+ psi_n / sqrt((E_n-eps1)(E_n-eps2)).
//
// All Wronskian algebra is carried on the reduced functions v = u / S,
// S = sin^alpha cos^(1-beta): W(u1,u2) = S^2 W(v1,v2), which removes the
// endpoint degeneration of the raw Wronskian.  Derivatives of W come from
// W(u1,u2)' = 2(eps1-eps2) u1 u2; no third derivatives are ever formed.

#include <cmath>
#include <string>

#include "ptheta/errors.hpp"
#include "ptheta/poschl_teller.hpp"
#include "ptheta/special_functions.hpp"

namespace ptheta {

enum class PartnerKind { FirstOrder, SecondOrder };

struct PartnerSpec {
  PartnerKind kind;
  double eps1;
  double eps2;   // second order only; must satisfy eps2 < eps1
  int level_l;   // second order: both eps inside (E_l, E_{l+1})
};

namespace detail {

// Reduced seed v_eps and its x-derivative.  Near branch:
//   v = cos^(2 beta - 1) 2F1(gamma/2 + q, gamma/2 - q; alpha + 1/2; sin^2 x),
// q = sqrt(eps/2); past z = 3/4 the Euler-transformed series makes the
// cos^(2 beta - 1) prefactor cancel exactly and v = G(sin^2 x) directly.
struct VJet {
  double v;
  double dv;
};

inline VJet seed_vjet(const PTParams& p, double eps, double x) {
  const double s = std::sin(x), c = std::cos(x);
  const double z = s * s;
  const double q2 = 0.5 * eps;
  const double cc = p.alpha + 0.5;
  if (z > 0.75) {
    const double pg = 0.5 * (1.0 + p.alpha - p.beta);  // cc - gamma/2
    const double g = gauss_2f1_pair(pg, q2, cc, z);
    const double dg = gauss_2f1_pair_deriv(pg, q2, cc, z);
    return {g, 2.0 * s * c * dg};
  }
  const double f = gauss_2f1_pair(0.5 * p.gamma, q2, cc, z);
  const double df = gauss_2f1_pair_deriv(0.5 * p.gamma, q2, cc, z);
  const double cb = std::pow(c, 2.0 * p.beta - 1.0);
  double v = cb * f;
  double dv = -(2.0 * p.beta - 1.0) * s * (cb / c) * f +
              2.0 * s * c * cb * df;
  return {v, dv};
}

// v'' from the reduced equation
//   v'' = [(alpha-beta+1)^2 - 2 eps] v - 2 (alpha cot x + (beta-1) tan x) v'.
inline double seed_v2(const PTParams& p, double eps, double x, const VJet& j) {
  const double k = p.alpha - p.beta + 1.0;
  const double l = p.alpha / std::tan(x) + (p.beta - 1.0) * std::tan(x);
  return (k * k - 2.0 * eps) * j.v - 2.0 * l * j.dv;
}

}  // namespace detail

class PartnerModel {
 public:
  PartnerModel(const PTParams& params, const PartnerSpec& spec)
      : p_(params), spec_(spec) {
    if (spec.kind == PartnerKind::FirstOrder) {
      if (!p_.first_order_ok) {
        throw ParameterError("PartnerModel: first order requires beta > 2");
      }
      const double e0 = 0.5 * p_.gamma * p_.gamma;
      if (!(spec.eps1 < e0)) {
        throw ParameterError(
            "PartnerModel: factorization energy must lie below the ground "
            "state");
      }
    } else {
      if (!p_.second_order_ok) {
        throw ParameterError("PartnerModel: second order requires beta > 3");
      }
      if (spec.level_l < 0) {
        throw ParameterError("PartnerModel: negative gap index");
      }
      if (spec.eps1 == spec.eps2) {
        throw ParameterError(
            "PartnerModel: degenerate seed energies are not supported");
      }
      const double lo = eigenvalue(p_, spec.level_l);
      const double hi = eigenvalue(p_, spec.level_l + 1);
      if (!(lo < spec.eps2 && spec.eps2 < spec.eps1 && spec.eps1 < hi)) {
        throw ParameterError(
            "PartnerModel: seed energies must satisfy E_l < eps2 < eps1 < "
            "E_{l+1}");
      }
    }
    scan_seed_sign();
  }

  const PTParams& params() const { return p_; }
  const PartnerSpec& spec() const { return spec_; }

  // First order: the reduced factorization seed v_eps1(x).
  // Second order: the reduced Wronskian W(v1,v2)(x).
  // Either must keep one sign on (0, pi/2) for the partner to exist.
  double seed_value(double x) const {
    detail::check_interior(x, "seed_value");
    if (spec_.kind == PartnerKind::FirstOrder) {
      return detail::seed_vjet(p_, spec_.eps1, x).v;
    }
    return reduced_wronskian(x);
  }

  // kappa = (log u_eps)' = alpha cot x + (beta-1) tan x + v'/v.
  double kappa(double x) const {
    require_kind(PartnerKind::FirstOrder, "kappa");
    detail::check_interior(x, "kappa");
    auto j = detail::seed_vjet(p_, spec_.eps1, x);
    return p_.alpha / std::tan(x) + (p_.beta - 1.0) * std::tan(x) + j.dv / j.v;
  }

  // eta = (log W(u1,u2))' = 2 (eps1 - eps2) v1 v2 / W(v1,v2).
  double eta(double x) const {
    require_kind(PartnerKind::SecondOrder, "eta");
    detail::check_interior(x, "eta");
    auto j1 = detail::seed_vjet(p_, spec_.eps1, x);
    auto j2 = detail::seed_vjet(p_, spec_.eps2, x);
    const double wv = j1.v * j2.dv - j1.dv * j2.v;
    return 2.0 * (spec_.eps1 - spec_.eps2) * j1.v * j2.v / wv;
  }

  // theta = eta'/2 + eta^2/2 - 2 V0 + eps1 + eps2.
  double theta_coef(double x) const {
    require_kind(PartnerKind::SecondOrder, "theta_coef");
    detail::check_interior(x, "theta_coef");
    double eta_v = 0.0, deta = 0.0;
    eta_jet(x, eta_v, deta);
    return 0.5 * deta + 0.5 * eta_v * eta_v - 2.0 * potential_v0(p_, x) +
           spec_.eps1 + spec_.eps2;
  }

  double potential_v1(double x) const {
    detail::check_interior(x, "potential_v1");
    const double s = std::sin(x), c = std::cos(x);
    if (spec_.kind == PartnerKind::FirstOrder) {
      auto j = detail::seed_vjet(p_, spec_.eps1, x);
      const double d2 = detail::seed_v2(p_, spec_.eps1, x, j);
      const double logv2 = d2 / j.v - (j.dv / j.v) * (j.dv / j.v);
      return 0.5 * p_.alpha * (p_.alpha + 1.0) / (s * s) +
             0.5 * (p_.beta - 2.0) * (p_.beta - 1.0) / (c * c) - logv2;
    }
    double eta_v = 0.0, deta = 0.0;
    eta_jet(x, eta_v, deta);
    // (log W_red)'' = eta' + (2 alpha + 1)/sin^2 + (3 - 2 beta)/cos^2.
    const double logw2 = deta + (2.0 * p_.alpha + 1.0) / (s * s) +
                         (3.0 - 2.0 * p_.beta) / (c * c);
    return 0.5 * (p_.alpha + 1.0) * (p_.alpha + 2.0) / (s * s) +
           0.5 * (p_.beta - 3.0) * (p_.beta - 2.0) / (c * c) - logw2;
  }

  // Unnormalized image of psi_n under the intertwiner.
  double apply_intertwiner(int n, double x) const {
    detail::check_interior(x, "apply_intertwiner");
    EigenJet ej = eigenfunction_jet(p_, n, x);
    if (spec_.kind == PartnerKind::FirstOrder) {
      return (-ej.dpsi + kappa(x) * ej.psi) / std::sqrt(2.0);
    }
    double eta_v = 0.0, deta = 0.0;
    eta_jet(x, eta_v, deta);
    const double th = 0.5 * deta + 0.5 * eta_v * eta_v -
                      2.0 * potential_v0(p_, x) + spec_.eps1 + spec_.eps2;
    const double d2psi = 2.0 * (potential_v0(p_, x) - eigenvalue(p_, n)) * ej.psi;
    return 0.5 * (d2psi - eta_v * ej.dpsi + th * ej.psi);
  }

  // Normalized partner state of energy E_n.
  double partner_eigenfunction(int n, double x) const {
    const double en = eigenvalue(p_, n);
    double norm2;
    if (spec_.kind == PartnerKind::FirstOrder) {
      norm2 = en - spec_.eps1;
    } else {
      norm2 = (en - spec_.eps1) * (en - spec_.eps2);
    }
    return apply_intertwiner(n, x) / std::sqrt(norm2);
  }

 private:
  void require_kind(PartnerKind k, const char* who) const {
    if (spec_.kind != k) {
      throw ParameterError(std::string(who) +
                           ": not defined for this transform order");
    }
  }

  double reduced_wronskian(double x) const {
    auto j1 = detail::seed_vjet(p_, spec_.eps1, x);
    auto j2 = detail::seed_vjet(p_, spec_.eps2, x);
    return j1.v * j2.dv - j1.dv * j2.v;
  }

  // eta and eta' together.  eta' = (log W_u)'' - eta^2 with
  // (log W_u)'' = W_u''/W_u = 2(eps1-eps2)[2 L v1 v2 + v1' v2 + v1 v2']/W_v,
  // L = alpha cot x + (beta-1) tan x.
  void eta_jet(double x, double& eta_v, double& deta) const {
    auto j1 = detail::seed_vjet(p_, spec_.eps1, x);
    auto j2 = detail::seed_vjet(p_, spec_.eps2, x);
    const double wv = j1.v * j2.dv - j1.dv * j2.v;
    const double de = spec_.eps1 - spec_.eps2;
    eta_v = 2.0 * de * j1.v * j2.v / wv;
    const double l = p_.alpha / std::tan(x) + (p_.beta - 1.0) * std::tan(x);
    const double wupp_over_wu =
        2.0 * de * (2.0 * l * j1.v * j2.v + j1.dv * j2.v + j1.v * j2.dv) / wv;
    deta = wupp_over_wu - eta_v * eta_v;
  }

  // The partner potential must stay regular: the seed may not vanish
  // inside the interval.  Scanned once on a fixed interior grid.
  void scan_seed_sign() const {
    constexpr int kGrid = 100000;
    double first = 0.0;
    for (int i = 1; i <= kGrid; ++i) {
      const double x = kHalfPi * static_cast<double>(i) / (kGrid + 1);
      const double v = seed_value(x);
      if (v == 0.0) {
        throw SingularPartnerError("PartnerModel: seed vanishes", x);
      }
      if (i == 1) {
        first = v;
      } else if ((v > 0.0) != (first > 0.0)) {
        throw SingularPartnerError("PartnerModel: seed changes sign", x);
      }
    }
  }

  PTParams p_;
  PartnerSpec spec_;
};

}  // namespace ptheta
