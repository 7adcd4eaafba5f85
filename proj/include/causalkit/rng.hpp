// Copyright 2026 The causalkit Authors
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

#include <array>
#include <cmath>
#include <cstdint>

#include "causalkit/errors.hpp"

namespace causalkit {

/// SplitMix64 (Steele, Lea & Flood; Vigna's reference constants).
/// Used to expand seeds and to derive independent child seeds.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256++ (Blackman & Vigna), seeded through SplitMix64.
///
/// Both algorithms are fixed by their published reference implementations,
/// so a given seed produces the same stream on every platform and in
/// reimplementations in other languages. All randomness in the library
/// flows through this generator; the C++ standard distributions are never
/// used because their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double strictly inside (0, 1); safe as a log/quantile argument.
  double next_open_double() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Uniform integer in [0, bound); rejection sampling avoids modulo bias.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw ValidationError("next_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Laplace(mu, lambda) draw via the inverse CDF:
  ///   x = mu - lambda * sign(u - 1/2) * ln(1 - 2|u - 1/2|),  u ~ U(0, 1).
  double next_laplace(double mu, double lambda) {
    const double centered = next_open_double() - 0.5;
    const double sign = centered > 0.0 ? 1.0 : (centered < 0.0 ? -1.0 : 0.0);
    return mu - lambda * sign * std::log(1.0 - 2.0 * std::abs(centered));
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

/// Derives a child seed from a master seed and two stream identifiers.
///
/// Every shot-sampled kernel entry (i, j) gets its own stream derived this
/// way, so Gram matrices come out identical whether entries are evaluated
/// serially or in parallel, in any order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  SplitMix64 first(master);
  SplitMix64 second(first.next() ^ a);
  SplitMix64 third(second.next() ^ b);
  return third.next();
}

}  // namespace causalkit
