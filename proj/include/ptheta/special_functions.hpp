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

// Real special functions used throughout the library:
//
//   * Gauss hypergeometric 2F1(a,b;c;z) on z in [0,1), including the
//     conjugate-pair parameterization a,b = p +- sqrt(q2) evaluated in
//     real arithmetic for q2 of either sign,
//   * L2-normalized Hermite functions psi_k,
//   * Fresnel integrals C(x), S(x).
//
// Everything is plain double precision.  Each evaluator states the bound
// it certifies; when a bound cannot be met an AccuracyError carrying the
// achieved bound is thrown instead of returning a silently degraded value.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "ptheta/errors.hpp"

namespace ptheta {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

struct SignedLog {
  double log_abs;
  int sign;  // -1, 0, +1
};

// log |Gamma(x)| with the sign of Gamma(x).  Poles (x a nonpositive
// integer) are reported with sign 0 and +inf magnitude.
inline SignedLog log_gamma_signed(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  double fl = std::floor(x);
  if (x == fl) return {std::numeric_limits<double>::infinity(), 0};
  // Gamma alternates sign between consecutive poles on the negative axis.
  int sign = (static_cast<long long>(fl) % 2 == 0) ? 1 : -1;
  return {std::lgamma(x), sign};
}

// Rising factorial (a)_n.  Small n walks the product directly (this is
// exact for the sign pattern); larger n with a > 0 goes through lgamma.
inline double pochhammer(double a, int n) {
  if (n < 0) throw ParameterError("pochhammer: negative order");
  if (n == 0) return 1.0;
  if (a > 0.0 && n > 16) {
    return std::exp(std::lgamma(a + n) - std::lgamma(a));
  }
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= a + k;
  return r;
}

inline SignedLog log_pochhammer_signed(double a, int n) {
  if (n == 0) return {0.0, 1};
  if (a > 0.0) return {std::lgamma(a + n) - std::lgamma(a), 1};
  double log_abs = 0.0;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    double f = a + k;
    if (f == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    if (f < 0.0) sign = -sign;
    log_abs += std::log(std::abs(f));
  }
  return {log_abs, sign};
}

// True if x equals a nonpositive integer; m receives the magnitude.
inline bool is_nonpositive_integer(double x, int* m = nullptr) {
  if (x > 0.0) return false;
  double r = std::round(x);
  if (x != r) return false;
  if (r < -2147000000.0) return false;
  if (m) *m = static_cast<int>(-r);
  return true;
}

struct HypergeometricArgs {
  double a;
  double b;
  double c;
  double z;  // must lie in [0, 1)
};

namespace detail {

// Wide enough for the Euler-transformed series at z = sin^2(pi/2 - 0.01),
// where convergence needs a few hundred thousand terms.
inline constexpr long kHypMaxTerms = 2000000;

struct SeriesResult {
  double value;
  double tail_bound;
  long terms;
  bool converged;
};

// Plain power series sum_{n} (a)_n (b)_n / ((c)_n n!) z^n with term
// recurrence.  Termination when a factor hits zero is exact; otherwise
// the loop stops once the geometric tail bound drops under eps*|sum|.
inline SeriesResult hyp_series(double a, double b, double c, double z,
                               double eps) {
  double term = 1.0;
  double sum = 1.0;
  const double safety = std::max({std::abs(a), std::abs(b), std::abs(c), 4.0});
  for (long n = 0; n < kHypMaxTerms; ++n) {
    double num = (a + n) * (b + n);
    if (num == 0.0) return {sum, 0.0, n + 1, true};
    term *= num / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (n > safety) {
      double tail = std::abs(term) * z / (1.0 - z);
      if (tail <= eps * std::abs(sum)) return {sum, tail, n + 2, true};
    }
  }
  double tail = std::abs(term) * z / (1.0 - z);
  return {sum, tail, kHypMaxTerms, false};
}

// Same series with (a+n)(b+n) replaced by (p+n)^2 - q2, which is the
// real form of conjugate parameters a,b = p +- sqrt(q2) when q2 < 0.
inline SeriesResult hyp_series_pair(double p, double q2, double c, double z,
                                    double eps) {
  double term = 1.0;
  double sum = 1.0;
  const double safety =
      std::max({std::abs(p) + std::sqrt(std::abs(q2)), std::abs(c), 4.0});
  for (long n = 0; n < kHypMaxTerms; ++n) {
    double num = (p + n) * (p + n) - q2;
    if (num == 0.0) return {sum, 0.0, n + 1, true};
    term *= num / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (n > safety) {
      double tail = std::abs(term) * z / (1.0 - z);
      if (tail <= eps * std::abs(sum)) return {sum, tail, n + 2, true};
    }
  }
  double tail = std::abs(term) * z / (1.0 - z);
  return {sum, tail, kHypMaxTerms, false};
}

// log |Gamma(x + i y)| by the Lanczos approximation (g = 7, nine terms);
// the reflection formula covers x < 1/2.  Conjugate parameters only ever
// enter through |Gamma|^2, so the imaginary part is never needed.
inline double log_abs_gamma(double x, double y) {
  if (y == 0.0) return log_gamma_signed(x).log_abs;
  if (x < 0.5) {
    // |sin(pi(x+iy))|^2 = sin^2(pi x) + sinh^2(pi y).
    const double sp = std::sin(kPi * x);
    const double sh = std::sinh(kPi * y);
    return std::log(kPi) - 0.5 * std::log(sp * sp + sh * sh) -
           log_abs_gamma(1.0 - x, y);
  }
  static constexpr double kC[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const std::complex<double> zm1(x - 1.0, y);
  std::complex<double> acc(kC[0], 0.0);
  for (int k = 1; k < 9; ++k) acc += kC[k] / (zm1 + static_cast<double>(k));
  const std::complex<double> t = zm1 + 7.5;
  return 0.91893853320467274178 +
         ((zm1 + 0.5) * std::log(t)).real() - t.real() + std::log(std::abs(acc));
}

// Assemble A*F1 + B*w^s*F2 for the z -> 1-z connection of 2F1 with the
// coefficients in signed-log form.  Near a zero of the function the two
// terms cancel and the error is 1e-13 of the dominant term -- absolute
// scale, the same behaviour the defining series has at its zeros.
inline double connection_combine(const SignedLog& la, double f1,
                                 const SignedLog& lb, double f2, double s,
                                 double w) {
  const double t1 = la.sign == 0 ? 0.0 : la.sign * std::exp(la.log_abs) * f1;
  const double t2 =
      lb.sign == 0 ? 0.0
                   : lb.sign * std::exp(lb.log_abs + s * std::log(w)) * f2;
  return t1 + t2;
}

// Terminating 2F1(-m, B; c; z) through the three-term recurrence of the
// underlying orthogonal-polynomial family.  The direct alternating sum
// loses roughly one digit per few degrees; the recurrence is uniformly
// stable on z in (0,1).  Writing al = c-1, be = B-m-c, s = 1-2z:
//   F_k = k! / (c)_k * P_k^{(al,be)}(s).
inline double hyp_terminating_recurrence(int m, double B, double c, double z) {
  const double al = c - 1.0;
  const double be = B - m - c;
  const double s = 1.0 - 2.0 * z;
  double p0 = 1.0;  // P_0
  if (m == 0) return 1.0;
  double p1 = 0.5 * (al + be + 2.0) * s + 0.5 * (al - be);  // P_1
  for (int k = 2; k <= m; ++k) {
    double k2ab = 2.0 * k + al + be;
    double a1 = 2.0 * k * (k + al + be) * (k2ab - 2.0);
    double a2 = (k2ab - 1.0) * (al * al - be * be);
    double a3 = (k2ab - 2.0) * (k2ab - 1.0) * k2ab;
    double a4 = 2.0 * (k + al - 1.0) * (k + be - 1.0) * k2ab;
    double p2 = ((a2 + a3 * s) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  // m! / (c)_m, all factors positive for the families this path accepts.
  double scale = 0.0;
  for (int k = 1; k <= m; ++k) {
    scale += std::log(static_cast<double>(k)) - std::log(std::abs(c + k - 1.0));
  }
  return p1 * std::exp(scale);
}

// The recurrence divides by 2k(k+al+be)(2k+al+be-2); reject families that
// bring any of those factors near zero and fall back to the direct sum.
inline bool recurrence_applicable(int m, double B, double c) {
  if (c <= 0.0) return false;
  const double al = c - 1.0;
  const double be = B - m - c;
  for (int k = 1; k <= m; ++k) {
    if (std::abs(k + al + be) < 1e-6) return false;
    if (std::abs(2.0 * k + al + be - 2.0) < 1e-6) return false;
  }
  return true;
}

}  // namespace detail

// Gauss hypergeometric function on z in [0, 1).
//
// Terminating cases (a or b a nonpositive integer) are evaluated exactly:
// small degrees by the finite sum, larger degrees by a stable polynomial
// recurrence; relative accuracy 1e-12.  Nonterminating cases use the
// defining series up to z = 0.75; beyond that the z -> 1-z connection
//   2F1(a,b;c;z) = A 2F1(a,b;1-s;w) + B w^s 2F1(c-a,c-b;1+s;w),
//   w = 1-z, s = c-a-b, A = G(c)G(s)/(G(c-a)G(c-b)),
//   B = G(c)G(-s)/(G(a)G(b)),
// whose series converge geometrically uniformly in z, reaches the right
// endpoint at full accuracy.  When s sits within 0.05 of an integer the
// connection coefficients degenerate and the Euler transformation
//   2F1(a,b;c;z) = (1-z)^s 2F1(c-a, c-b; c; z)
// takes over; its reach ends about 4e-3 short of z = 1.  Relative
// accuracy 1e-10 away from zeros of the function.
inline double gauss_2f1(const HypergeometricArgs& args) {
  const double a = args.a, b = args.b, c = args.c, z = args.z;
  if (!(z >= 0.0 && z < 1.0) || !std::isfinite(z)) {
    throw DomainError("gauss_2f1: z must lie in [0, 1)");
  }
  if (is_nonpositive_integer(c)) {
    throw ParameterError("gauss_2f1: c is zero or a negative integer");
  }
  if (z == 0.0) return 1.0;

  int ma = 0, mb = 0;
  bool ta = is_nonpositive_integer(a, &ma);
  bool tb = is_nonpositive_integer(b, &mb);
  if (ta || tb) {
    int m = ta && tb ? std::min(ma, mb) : (ta ? ma : mb);
    double other = (ta && (!tb || ma <= mb)) ? b : a;
    if (m <= 12 || !detail::recurrence_applicable(m, other, c)) {
      auto r = detail::hyp_series(a, b, c, z, 1e-15);
      return r.value;
    }
    return detail::hyp_terminating_recurrence(m, other, c, z);
  }

  if (z > 0.75) {
    const double s = c - a - b;
    if (std::abs(s - std::round(s)) > 0.05) {
      const double w = 1.0 - z;
      auto f1 = detail::hyp_series(a, b, 1.0 - s, w, 1e-13);
      auto f2 = detail::hyp_series(c - a, c - b, 1.0 + s, w, 1e-13);
      if (!f1.converged || !f2.converged) {
        throw AccuracyError("gauss_2f1: connection series did not converge",
                            std::max(f1.tail_bound, f2.tail_bound),
                            f1.terms + f2.terms);
      }
      const SignedLog gc = log_gamma_signed(c);
      const SignedLog gs = log_gamma_signed(s);
      const SignedLog gns = log_gamma_signed(-s);
      const SignedLog gca = log_gamma_signed(c - a);
      const SignedLog gcb = log_gamma_signed(c - b);
      const SignedLog ga = log_gamma_signed(a);
      const SignedLog gb = log_gamma_signed(b);
      const SignedLog la{gc.log_abs + gs.log_abs - gca.log_abs - gcb.log_abs,
                         gca.sign * gcb.sign == 0
                             ? 0
                             : gc.sign * gs.sign * gca.sign * gcb.sign};
      const SignedLog lb{gc.log_abs + gns.log_abs - ga.log_abs - gb.log_abs,
                         ga.sign * gb.sign == 0
                             ? 0
                             : gc.sign * gns.sign * ga.sign * gb.sign};
      return detail::connection_combine(la, f1.value, lb, f2.value, s, w);
    }
    auto r = detail::hyp_series(c - a, c - b, c, z, 1e-13);
    if (!r.converged) {
      throw AccuracyError("gauss_2f1: transformed series did not converge",
                          r.tail_bound / std::abs(r.value), r.terms);
    }
    return std::exp(s * std::log1p(-z)) * r.value;
  }
  auto r = detail::hyp_series(a, b, c, z, 1e-13);
  if (!r.converged) {
    throw AccuracyError("gauss_2f1: series did not converge",
                        r.tail_bound / std::abs(r.value), r.terms);
  }
  return r.value;
}

// d/dz 2F1 via the parameter-shift identity
//   d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1, b+1; c+1; z),
// applied once or twice.
inline double gauss_2f1_deriv(const HypergeometricArgs& args, int order) {
  if (order != 1 && order != 2) {
    throw ParameterError("gauss_2f1_deriv: order must be 1 or 2");
  }
  const double a = args.a, b = args.b, c = args.c, z = args.z;
  double f1 = a * b / c;
  if (order == 1) {
    return f1 * gauss_2f1({a + 1.0, b + 1.0, c + 1.0, z});
  }
  double f2 = (a + 1.0) * (b + 1.0) / (c + 1.0);
  return f1 * f2 * gauss_2f1({a + 2.0, b + 2.0, c + 2.0, z});
}

// Conjugate-pair 2F1: parameters a,b = p +- sqrt(q2) with q2 of either
// sign.  For q2 < 0 the pair is complex conjugate and the function value
// is still real; the series runs entirely in real arithmetic, and the
// connection coefficients past z = 0.75 need only |Gamma|^2 of the pair.
inline double gauss_2f1_pair(double p, double q2, double c, double z) {
  if (!(z >= 0.0 && z < 1.0) || !std::isfinite(z)) {
    throw DomainError("gauss_2f1_pair: z must lie in [0, 1)");
  }
  if (is_nonpositive_integer(c)) {
    throw ParameterError("gauss_2f1_pair: c is zero or a negative integer");
  }
  if (z == 0.0) return 1.0;
  // Natural termination: q2 >= 0 and p - sqrt(q2) a nonpositive integer.
  bool terminating =
      q2 >= 0.0 && is_nonpositive_integer(p - std::sqrt(q2));
  if (!terminating && z > 0.75) {
    const double s = c - 2.0 * p;
    if (std::abs(s - std::round(s)) > 0.05) {
      const double w = 1.0 - z;
      auto f1 = detail::hyp_series_pair(p, q2, 1.0 - s, w, 1e-13);
      auto f2 = detail::hyp_series_pair(c - p, q2, 1.0 + s, w, 1e-13);
      if (!f1.converged || !f2.converged) {
        throw AccuracyError(
            "gauss_2f1_pair: connection series did not converge",
            std::max(f1.tail_bound, f2.tail_bound), f1.terms + f2.terms);
      }
      const SignedLog gc = log_gamma_signed(c);
      const SignedLog gs = log_gamma_signed(s);
      const SignedLog gns = log_gamma_signed(-s);
      SignedLog den_a, den_b;  // G(c-a)G(c-b) and G(a)G(b)
      if (q2 < 0.0) {
        const double mu = std::sqrt(-q2);
        den_a = {2.0 * detail::log_abs_gamma(c - p, mu), 1};
        den_b = {2.0 * detail::log_abs_gamma(p, mu), 1};
      } else {
        const double q = std::sqrt(q2);
        const SignedLog g1 = log_gamma_signed(c - p - q);
        const SignedLog g2 = log_gamma_signed(c - p + q);
        const SignedLog g3 = log_gamma_signed(p + q);
        const SignedLog g4 = log_gamma_signed(p - q);
        den_a = {g1.log_abs + g2.log_abs, g1.sign * g2.sign};
        den_b = {g3.log_abs + g4.log_abs, g3.sign * g4.sign};
      }
      const SignedLog la{gc.log_abs + gs.log_abs - den_a.log_abs,
                         den_a.sign == 0 ? 0 : gc.sign * gs.sign * den_a.sign};
      const SignedLog lb{
          gc.log_abs + gns.log_abs - den_b.log_abs,
          den_b.sign == 0 ? 0 : gc.sign * gns.sign * den_b.sign};
      return detail::connection_combine(la, f1.value, lb, f2.value, s, w);
    }
    auto r = detail::hyp_series_pair(c - p, q2, c, z, 1e-13);
    if (!r.converged) {
      throw AccuracyError("gauss_2f1_pair: transformed series did not converge",
                          r.tail_bound / std::abs(r.value), r.terms);
    }
    return std::exp(s * std::log1p(-z)) * r.value;
  }
  auto r = detail::hyp_series_pair(p, q2, c, z, 1e-13);
  if (!r.converged) {
    throw AccuracyError("gauss_2f1_pair: series did not converge",
                        r.tail_bound / std::abs(r.value), r.terms);
  }
  return r.value;
}

// z-derivative of the conjugate-pair form; the shifted pair keeps the
// same q2 because (a+1)(b+1) = (p+1)^2 - q2.
inline double gauss_2f1_pair_deriv(double p, double q2, double c, double z) {
  return (p * p - q2) / c * gauss_2f1_pair(p + 1.0, q2, c + 1.0, z);
}

inline constexpr int kHermiteMaxIndex = 512;

namespace detail {

// One step of the normalized recurrence
//   psi_{k+1}(t) = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1},
// with x = sqrt(2 pi) t.
inline void hermite_recurrence(int k, double x, double& pm1, double& p) {
  double next = std::sqrt(2.0 / (k + 1.0)) * x * p -
                std::sqrt(static_cast<double>(k) / (k + 1.0)) * pm1;
  pm1 = p;
  p = next;
}

}  // namespace detail

// L2-normalized Hermite function
//   psi_k(t) = (2^(k-1/2) k!)^(-1/2) H_k(sqrt(2 pi) t) exp(-pi t^2).
// psi_0(0) = 2^(1/4); the family is orthonormal on the real line.
inline double hermite_fn(int k, double t, int k_max = kHermiteMaxIndex) {
  if (k < 0) throw ParameterError("hermite_fn: negative index");
  if (k > k_max) throw CapacityError("hermite_fn: index exceeds maximum");
  const double x = std::sqrt(kTwoPi) * t;
  double p = std::pow(2.0, 0.25) * std::exp(-kPi * t * t);
  if (k == 0) return p;
  double pm1 = 0.0;
  for (int j = 0; j < k; ++j) detail::hermite_recurrence(j, x, pm1, p);
  return p;
}

// Fill out[0..count) with psi_0(t) .. psi_{count-1}(t) in one sweep.
inline void hermite_fn_fill(int count, double t, double* out,
                            int k_max = kHermiteMaxIndex) {
  if (count <= 0) return;
  if (count - 1 > k_max) throw CapacityError("hermite_fn_fill: index exceeds maximum");
  const double x = std::sqrt(kTwoPi) * t;
  double p = std::pow(2.0, 0.25) * std::exp(-kPi * t * t);
  double pm1 = 0.0;
  out[0] = p;
  for (int j = 0; j + 1 < count; ++j) {
    detail::hermite_recurrence(j, x, pm1, p);
    out[j + 1] = p;
  }
}

// Fresnel integrals C(x) = int_0^x cos(pi t^2/2) dt and the matching S(x).
// c_osc and s_osc hold C(x) - sgn(x)/2 and S(x) - sgn(x)/2; differencing
// those avoids the cancellation of the +-1/2 plateaus when both endpoints
// of an interval are far out on the same side.
struct FresnelValue {
  double c;
  double s;
  double c_osc;
  double s_osc;
};

inline FresnelValue fresnel(double x) {
  const double ax = std::abs(x);
  FresnelValue r{};
  if (ax <= 3.5) {
    // Taylor series about 0; worst-case cancellation near the switch
    // point costs ~7 digits.  The asymptotic branch reaches ~4e-10 at
    // the seam, so the crossover balances the two error curves.
    const double u = 0.5 * kPi * x * x;
    const double u2 = u * u;
    double gc = 1.0;  // (-1)^m u^(2m) / (2m)!
    double gs = 1.0;  // (-1)^m u^(2m) / (2m+1)!
    double sc = 1.0;  // sum gc/(4m+1)
    double ss = 1.0 / 3.0;  // sum gs/(4m+3)
    for (int m = 0; m < 60; ++m) {
      gc *= -u2 / ((2.0 * m + 1.0) * (2.0 * m + 2.0));
      gs *= -u2 / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
      double tc = gc / (4.0 * m + 5.0);
      double ts = gs / (4.0 * m + 7.0);
      sc += tc;
      ss += ts;
      if (std::abs(gc) < 1e-18 && std::abs(gs) < 1e-18) break;
    }
    r.c = x * sc;
    r.s = x * u * ss;
    double half = x >= 0.0 ? 0.5 : -0.5;
    if (x == 0.0) half = 0.0;
    r.c_osc = r.c - half;
    r.s_osc = r.s - half;
    return r;
  }
  // Auxiliary asymptotic expansion, truncated at its smallest term.
  //   C = 1/2 + f sin(u) - g cos(u),  S = 1/2 - f cos(u) - g sin(u)
  // with u = pi x^2 / 2, both series in powers of (pi x^2)^-2.
  const double t = kPi * ax * ax;
  const double t2 = t * t;
  double term = 1.0, f = 1.0;
  for (int m = 0; m < 40; ++m) {
    double mag = std::abs(term) * (4.0 * m + 1.0) * (4.0 * m + 3.0) / t2;
    if (mag >= std::abs(term)) break;
    term = (m % 2 == 0) ? -mag : mag;
    f += term;
    if (mag < 1e-18) break;
  }
  term = 1.0;
  double g = 1.0;
  for (int m = 0; m < 40; ++m) {
    double mag = std::abs(term) * (4.0 * m + 3.0) * (4.0 * m + 5.0) / t2;
    if (mag >= std::abs(term)) break;
    term = (m % 2 == 0) ? -mag : mag;
    g += term;
    if (mag < 1e-18) break;
  }
  f /= kPi * ax;
  g /= kPi * ax * t;
  const double u = 0.5 * kPi * ax * ax;
  const double su = std::sin(u), cu = std::cos(u);
  double c_osc = f * su - g * cu;
  double s_osc = -f * cu - g * su;
  if (x < 0.0) {  // both integrals are odd
    r.c = -0.5 - c_osc;
    r.s = -0.5 - s_osc;
    r.c_osc = -c_osc;
    r.s_osc = -s_osc;
  } else {
    r.c = 0.5 + c_osc;
    r.s = 0.5 + s_osc;
    r.c_osc = c_osc;
    r.s_osc = s_osc;
  }
  return r;
}

}  // namespace ptheta
