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

// Reproducible random streams.
//
// All randomness in the library flows through Rng, a thin wrapper over
// std::mt19937_64 whose output sequence is pinned by the C++ standard.
// Doubles are extracted manually ((x >> 11) * 2^-53) instead of through
// std::uniform_real_distribution, whose algorithm is implementation
// defined.  Derived stream seeds come from SplitMix64 so that independent
// batches can be replayed regardless of scheduling.

#include <cstdint>
#include <random>

namespace ptheta {

// SplitMix64 mixing step.  Used both as a stand-alone mixer and to derive
// per-stream seeds from (master seed, stream index).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream * 0x9e3779b97f4a7c15ull + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ptheta
