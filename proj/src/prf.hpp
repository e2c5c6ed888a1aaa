/* Copyright 2026 The treeaut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Counter-based deterministic random function. Every consumer keys a stream
// by (seed, message) and reads 64-bit blocks by counter, so values never
// depend on evaluation order and parallel samplers need no coordination.

#ifndef TREEAUT_PRF_HPP
#define TREEAUT_PRF_HPP

#include <cstdint>

#include "tree.hpp"

namespace treeaut {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

// Stable fingerprint of a vertex address under a seed.
inline std::uint64_t addr_fingerprint(std::uint64_t seed,
                                      const VertexAddr& v) {
  std::uint64_t h = mix64(seed ^ kGolden);
  for (Color c : v.digits()) h = mix64(h ^ (static_cast<std::uint64_t>(c) + 1));
  return h;
}

// Deterministic per-sample seed derivation used by all experiment loops.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(mix64(base ^ 0xa076bc9f7cull) + (index + 1) * kGolden);
}

// Counter-mode stream over a fixed base value.
class PrfStream {
 public:
  explicit PrfStream(std::uint64_t base) : base_(base) {}

  std::uint64_t next() { return mix64(base_ + (++counter_) * kGolden); }

  // Unbiased draw in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t remainder = UINT64_MAX % n;
    std::uint64_t bits;
    do {
      bits = next();
    } while (bits >= UINT64_MAX - remainder);
    return bits % n;
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace treeaut

#endif  // TREEAUT_PRF_HPP
