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

// Points of the universal Jacobi group in coordinates
//   (x + i y, phi; xi1, xi2, zeta),
// y > 0, phi the rotation coordinate on the universal cover, (xi1, xi2)
// the Heisenberg translations and zeta the central coordinate.  Haar
// measure is dx dy dphi dxi1 dxi2 dzeta / y^2.
//
// The discrete subgroup used throughout is generated by five elements
// gamma_1 .. gamma_5 whose left actions are implemented exactly in
// coordinates below.  A fundamental domain is
//   x in [-1/2, 1/2), x^2 + y^2 >= 1, phi in [0, pi),
//   xi1, xi2, zeta in [-1/2, 1/2),
// with covolume pi^2/3; reduce_to_fundamental carries an arbitrary point
// into it by an explicit word in the generators.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include "ptheta/errors.hpp"
#include "ptheta/rng.hpp"
#include "ptheta/special_functions.hpp"

namespace ptheta {

struct GroupPoint {
  double x;
  double y;     // > 0
  double phi;
  double xi1;
  double xi2;
  double zeta;
};

inline constexpr double kFundamentalVolume = kPi * kPi / 3.0;

namespace detail {

inline void check_point(const GroupPoint& g, const char* who) {
  if (!(g.y > 0.0) || !std::isfinite(g.x) || !std::isfinite(g.y) ||
      !std::isfinite(g.phi) || !std::isfinite(g.xi1) ||
      !std::isfinite(g.xi2) || !std::isfinite(g.zeta)) {
    throw DomainError(std::string(who) + ": point must have finite coordinates, y > 0");
  }
}

}  // namespace detail

// Left action of the i-th generator, i = 1..5:
//   gamma_1: z -> -1/z, phi += arg z, (xi1, xi2) -> (-xi2, xi1), zeta += 1/8
//   gamma_2: z -> z+1, xi1 += xi2 + 1/2, zeta += xi2/4
//   gamma_3: xi1 += 1, zeta += xi2/2
//   gamma_4: xi2 += 1, zeta -= xi1/2
//   gamma_5: zeta += 1
inline GroupPoint apply_generator(int i, const GroupPoint& g) {
  detail::check_point(g, "apply_generator");
  GroupPoint r = g;
  switch (i) {
    case 1: {
      const double d = g.x * g.x + g.y * g.y;
      r.x = -g.x / d;
      r.y = g.y / d;
      r.phi = g.phi + std::atan2(g.y, g.x);
      r.xi1 = -g.xi2;
      r.xi2 = g.xi1;
      r.zeta = g.zeta + 0.125;
      return r;
    }
    case 2:
      r.x = g.x + 1.0;
      r.xi1 = g.xi1 + g.xi2 + 0.5;
      r.zeta = g.zeta + 0.25 * g.xi2;
      return r;
    case 3:
      r.xi1 = g.xi1 + 1.0;
      r.zeta = g.zeta + 0.5 * g.xi2;
      return r;
    case 4:
      r.xi2 = g.xi2 + 1.0;
      r.zeta = g.zeta - 0.5 * g.xi1;
      return r;
    case 5:
      r.zeta = g.zeta + 1.0;
      return r;
    default:
      throw ParameterError("apply_generator: index must be 1..5");
  }
}

namespace detail {

// Integer powers of the box generators; each is an exact closed form of
// m successive applications (the moved coordinate stays fixed under its
// own generator, so the zeta increments just accumulate).
inline void translate_pow(GroupPoint& g, double m) {  // gamma_2^m
  g.x += m;
  g.xi1 += m * g.xi2 + 0.5 * m;
  g.zeta += 0.25 * m * g.xi2;
}
inline void xi1_pow(GroupPoint& g, double m) {  // gamma_3^m
  g.xi1 += m;
  g.zeta += 0.5 * m * g.xi2;
}
inline void xi2_pow(GroupPoint& g, double m) {  // gamma_4^m
  g.xi2 += m;
  g.zeta -= 0.5 * m * g.xi1;
}
// (gamma_1^2)^m: phi += m pi, xi -> (-1)^m xi, zeta += m/4.
inline void half_turn_pow(GroupPoint& g, double m) {
  g.phi += m * kPi;
  if (std::fmod(m, 2.0) != 0.0) {
    g.xi1 = -g.xi1;
    g.xi2 = -g.xi2;
  }
  g.zeta += 0.25 * m;
}

}  // namespace detail

inline bool in_fundamental_domain(const GroupPoint& g) {
  return g.x >= -0.5 && g.x < 0.5 && g.x * g.x + g.y * g.y >= 1.0 &&
         g.phi >= 0.0 && g.phi < kPi && g.xi1 >= -0.5 && g.xi1 < 0.5 &&
         g.xi2 >= -0.5 && g.xi2 < 0.5 && g.zeta >= -0.5 && g.zeta < 0.5;
}

// Translate / invert until the base point is modular-reduced, then fold
// phi by half turns and box the Heisenberg coordinates.  Idempotent: a
// point already inside comes back bit-identical (no arithmetic applied).
inline GroupPoint reduce_to_fundamental(const GroupPoint& g0) {
  detail::check_point(g0, "reduce_to_fundamental");
  GroupPoint g = g0;
  bool settled = false;
  for (int iter = 0; iter < 1000; ++iter) {
    const double m = std::floor(g.x + 0.5);
    if (m != 0.0) detail::translate_pow(g, -m);
    if (g.x * g.x + g.y * g.y < 1.0) {
      g = apply_generator(1, g);
    } else {
      settled = true;
      break;
    }
  }
  if (!settled) {
    throw ReductionError("reduce_to_fundamental: base point did not settle");
  }
  const double k = std::floor(g.phi / kPi);
  if (k != 0.0) detail::half_turn_pow(g, -k);
  if (g.phi >= kPi) detail::half_turn_pow(g, -1.0);  // rounding guards
  if (g.phi < 0.0) detail::half_turn_pow(g, 1.0);
  const double m1 = std::floor(g.xi1 + 0.5);
  if (m1 != 0.0) detail::xi1_pow(g, -m1);
  const double m2 = std::floor(g.xi2 + 0.5);
  if (m2 != 0.0) detail::xi2_pow(g, -m2);
  const double m5 = std::floor(g.zeta + 0.5);
  if (m5 != 0.0) g.zeta -= m5;
  return g;
}

// One Haar-distributed point of the fundamental domain.  The base point
// uses inverse-CDF sampling of y restricted to y >= sqrt(3)/2 with
// rejection against x^2 + y^2 >= 1 (acceptance pi sqrt(3)/6); the
// remaining coordinates are uniform in their boxes.
inline GroupPoint sample_haar(Rng& rng) {
  double x = 0.0, y = 0.0;
  const double y_floor = 0.5 * std::sqrt(3.0);
  for (;;) {
    x = rng.uniform() - 0.5;
    y = y_floor / (1.0 - rng.uniform());
    if (x * x + y * y >= 1.0) break;
  }
  GroupPoint g;
  g.x = x;
  g.y = y;
  g.phi = kPi * rng.uniform();
  g.xi1 = rng.uniform() - 0.5;
  g.xi2 = rng.uniform() - 0.5;
  g.zeta = rng.uniform() - 0.5;
  return g;
}

// Horocycle lift of a time value: with u = 2t/pi,
//   (x, y, phi; xi1, xi2, zeta) = (u, N^-2, 0; c u / 2, 0, c^2 u / 8),
// where c is the spectral offset.  Along this section the rescaled
// autocorrelation of the well equals the theta value exactly.
inline GroupPoint lift_time(double t, long n_scale, double c) {
  if (n_scale < 1) throw ParameterError("lift_time: scale must be >= 1");
  if (!std::isfinite(t) || !std::isfinite(c)) {
    throw ParameterError("lift_time: bad arguments");
  }
  const double u = 2.0 * t / kPi;
  const double inv = 1.0 / static_cast<double>(n_scale);
  GroupPoint g;
  g.x = u;
  g.y = inv * inv;
  g.phi = 0.0;
  g.xi1 = 0.5 * c * u;
  g.xi2 = 0.0;
  g.zeta = 0.125 * c * c * u;
  return g;
}

// Best rational approximation p/q with q <= max_den, if it matches gamma
// to within tol.  Used to warn when a spectral offset is (numerically)
// rational and the equidistribution argument degenerates.
inline std::optional<std::pair<long, long>> rational_approximation(
    double gamma, long max_den = 100, double tol = 1e-12) {
  if (!std::isfinite(gamma)) return std::nullopt;
  double a = gamma;
  long h0 = 1, h1 = static_cast<long>(std::floor(a));
  long k0 = 0, k1 = 1;
  a -= std::floor(a);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(gamma - static_cast<double>(h1) / static_cast<double>(k1)) <
        tol) {
      return std::make_pair(h1, k1);
    }
    if (a == 0.0) break;
    a = 1.0 / a;
    const double fl = std::floor(a);
    if (fl > 1e15) break;
    const long ai = static_cast<long>(fl);
    const long h2 = ai * h1 + h0;
    const long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    a -= fl;
  }
  return std::nullopt;
}

}  // namespace ptheta
