/*
 * Copyright 2026 the cross-kernels Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CROSS_PRNG_H_
#define CROSS_PRNG_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace cross {

// splitmix64: the standard 64-bit counter/splittable generator. Chosen for
// cross-language data reproducibility; the identifier below is embedded in
// reports so other implementations can regenerate identical inputs.
inline constexpr std::string_view kPrngId = "splitmix64";

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased-enough uniform draw for testing ranges (bound < 2^32 here).
  uint32_t below(uint32_t bound) { return static_cast<uint32_t>(next() % bound); }

  // Derives an independent stream (splitting).
  SplitMix64 split(uint64_t tag) { return SplitMix64(next() ^ (tag * 0x9e3779b97f4a7c15ull)); }

 private:
  uint64_t state_;
};

inline std::vector<uint32_t> random_residues(SplitMix64& rng, size_t count, uint32_t q) {
  std::vector<uint32_t> v(count);
  for (auto& x : v) x = rng.below(q);
  return v;
}

}  // namespace cross

#endif  // CROSS_PRNG_H_
