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

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace ptheta {

struct QuadratureRule {
  std::vector<double> nodes;    // on (-1, 1), ascending
  std::vector<double> weights;  // matching weights, sum = 2
};

namespace detail {

// Gauss-Legendre nodes by Newton iteration on P_n, seeded with the
// Tricomi estimate.  Nodes are roots of P_n; weights 2/((1-x^2) P_n'(x)^2).
inline QuadratureRule build_gauss_legendre(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Root estimate, counting from the largest root down.
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Recurrence (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 1; k < n; ++k) {
        double p2 = ((2.0 * static_cast<double>(k) + 1.0) * x * p1 -
                     static_cast<double>(k) * p0) /
                    (static_cast<double>(k) + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // exact midpoint
  return rule;
}

}  // namespace detail

// Shared cache; rules are immutable once built.
inline const QuadratureRule& gauss_legendre(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, detail::build_gauss_legendre(n)).first;
  }
  return it->second;
}

// Integrate fn over [a, b] with an n-point Gauss-Legendre rule.
template <typename Fn>
double integrate_gl(Fn&& fn, double a, double b, std::size_t n) {
  const QuadratureRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

}  // namespace ptheta
