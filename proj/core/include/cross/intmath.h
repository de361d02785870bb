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

#ifndef CROSS_INTMATH_H_
#define CROSS_INTMATH_H_

#include <cstdint>

namespace cross {

using uint128_t = unsigned __int128;

constexpr bool is_power_of_two(uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

// floor(log2(x)) for x > 0.
constexpr uint32_t floor_log2(uint64_t x) {
  uint32_t r = 0;
  while (x >>= 1) ++r;
  return r;
}

// Number of bits needed to represent x (0 -> 0).
constexpr uint32_t bit_width_u64(uint64_t x) { return x == 0 ? 0 : floor_log2(x) + 1; }

// ceil(log2(x)) for x > 0.
constexpr uint32_t ceil_log2(uint64_t x) {
  return is_power_of_two(x) ? floor_log2(x) : floor_log2(x) + 1;
}

// Reverses the low `bits` bits of x.
constexpr uint64_t reverse_bits(uint64_t x, uint32_t bits) {
  uint64_t r = 0;
  for (uint32_t i = 0; i < bits; ++i) {
    r = (r << 1) | ((x >> i) & 1);
  }
  return r;
}

inline uint64_t mul_hi64(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>((static_cast<uint128_t>(a) * b) >> 64);
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<uint128_t>(a) * b % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

// 2^e mod m, valid for any e (not just e < 64).
inline uint64_t pow2_mod(uint64_t e, uint64_t m) { return powmod_u64(2, e, m); }

// Deterministic Miller-Rabin, exact for all inputs below 2^64.
bool is_prime_u64(uint64_t n);

// Modular inverse of a mod m for gcd(a, m) = 1 (extended Euclid); throws if not invertible.
uint64_t inverse_mod_u64(uint64_t a, uint64_t m);

}  // namespace cross

#endif  // CROSS_INTMATH_H_
