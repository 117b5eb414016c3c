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

#include <stdexcept>
#include <string>

namespace ptheta {

// Base type for every failure thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of the operation
// (evaluation at a potential singularity, nonpositive y, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A structural parameter is invalid: exponents out of range, a lower
// hypergeometric parameter at a nonpositive integer, misordered
// factorization energies, malformed window descriptions.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// The requested accuracy could not be certified.  Carries the bound the
// computation did achieve and how much work was spent, so callers can
// decide whether the partial result is still useful.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved, long terms_used)
      : Error(what + " (achieved bound " + std::to_string(achieved) +
              " after " + std::to_string(terms_used) + " terms)"),
        achieved_bound(achieved),
        terms(terms_used) {}

  double achieved_bound;
  long terms;
};

// A hard size limit (maximum index, maximum order) was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// The requested Darboux seed vanishes inside the interval, so the partner
// potential would be singular.  Carries a point where the seed changes sign.
class SingularPartnerError : public Error {
 public:
  SingularPartnerError(const std::string& what, double x)
      : Error(what + " (sign change near x = " + std::to_string(x) + ")"),
        where(x) {}

  double where;
};

// Reduction to the fundamental domain failed to settle.
class ReductionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptheta
