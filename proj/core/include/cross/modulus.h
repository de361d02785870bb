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

#ifndef CROSS_MODULUS_H_
#define CROSS_MODULUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cross/intmath.h"

namespace cross {

// Word-level modular reduction strategies. `shoup` applies only where one
// operand is a fixed parameter with a precomputed quotient; plan-driven
// kernels that hit a raw 64-bit partial sum fall back to `barrett` for it.
enum class Reduction : uint8_t {
  native = 0,
  barrett = 1,
  montgomery = 2,
  shoup = 3,
};

const char* to_string(Reduction r);
Reduction reduction_from_string(const std::string& name);

// Whether compiled parameters for this strategy live in the Montgomery
// domain (pre-multiplied by 2^32 mod q so the 2^{-32} of the reduction
// cancels at runtime).
enum class Domain : uint8_t { plain = 0, montgomery = 1 };

/**
 * A word-sized prime modulus q < 2^31 with every reduction constant
 * precomputed at construction:
 *
 *   barrett_s/barrett_m   s = 2*ceil(log2 q), m = floor(2^s / q)
 *   barrett_m64           floor(2^64 / q), for reducing arbitrary 64-bit values
 *   mont_qinv             q^{-1} mod 2^32
 *   mont_r2               2^64 mod q, for entering the Montgomery domain
 *   q_lo/q_hi             16-bit split of q used by the Montgomery reducer
 *
 * q < 2^31 keeps the Montgomery output range [0, 2q) inside 32 bits.
 */
struct Modulus {
  uint32_t q = 0;
  uint32_t log2q = 0;  // bit width of q
  uint32_t barrett_s = 0;
  uint64_t barrett_m = 0;
  uint64_t barrett_m64 = 0;
  uint32_t mont_qinv = 0;
  uint32_t mont_r2 = 0;
  uint32_t q_lo = 0;
  uint32_t q_hi = 0;

  bool operator==(const Modulus& other) const { return q == other.q; }
};

// Builds a Modulus for a prime 2 < q < 2^31. Throws std::invalid_argument
// with a primality diagnostic for composite q, std::out_of_range otherwise.
Modulus make_modulus(uint32_t q);

// Smallest-effort deterministic search for a prime with exactly `bits` bits
// and q = 1 (mod 2N). Scans downward from the top of the range; throws
// std::runtime_error when the range holds no such prime.
uint32_t gen_ntt_prime(uint32_t bits, uint64_t n);

// As above but returns `count` distinct primes (descending).
std::vector<uint32_t> gen_ntt_primes(uint32_t bits, uint64_t n, size_t count);

// A root w with w^order = 1 and w^(order/p) != 1 for every prime p | order.
// Requires order | q-1 (std::domain_error otherwise).
uint32_t find_primitive_root(const Modulus& m, uint64_t order);

// --- Word-level reductions -------------------------------------------------

// Modular multiplication via Barrett reduction: z = a*b, t = (z*m) >> s,
// z -= t*q, then at most one conditional subtraction. Requires a, b < q.
inline uint32_t barrett_reduce_product(uint64_t z, const Modulus& m) {
  uint64_t t = static_cast<uint64_t>((static_cast<uint128_t>(z) * m.barrett_m) >> m.barrett_s);
  uint64_t r = z - t * m.q;
  if (r >= m.q) r -= m.q;
  return static_cast<uint32_t>(r);
}

inline uint32_t barrett_mulmod(uint32_t a, uint32_t b, const Modulus& m) {
  return barrett_reduce_product(static_cast<uint64_t>(a) * b, m);
}

// Barrett reduction of an arbitrary 64-bit value using floor(2^64/q):
// one high-half multiply and one conditional subtraction, exact on [0, 2^64).
inline uint32_t barrett_reduce64(uint64_t z, const Modulus& m) {
  uint64_t t = mul_hi64(z, m.barrett_m64);
  uint64_t r = z - t * m.q;
  if (r >= m.q) r -= m.q;
  return static_cast<uint32_t>(r);
}

// Montgomery reduction 64 -> 32 bits: returns B = z * 2^{-32} (mod q),
// B in [0, 2q). The upper half of t*q comes from four 16-bit products.
inline uint32_t montgomery_reduce64(uint64_t z, const Modulus& m) {
  uint32_t z_lo = static_cast<uint32_t>(z);
  uint64_t z_hi = z >> 32;
  uint32_t t = z_lo * m.mont_qinv;  // mod 2^32
  uint32_t t_lo = t & 0xffffu;
  uint32_t t_hi = t >> 16;
  uint32_t p_hi = t_hi * m.q_hi;
  uint32_t p_lo = t_lo * m.q_lo;
  uint32_t p_mid_a = t_hi * m.q_lo;
  uint32_t p_mid_b = t_lo * m.q_hi;
  uint32_t mid_lo = (p_mid_a & 0xffffu) + (p_mid_b & 0xffffu) + (p_lo >> 16);
  uint32_t t_final = p_hi + (p_mid_a >> 16) + (p_mid_b >> 16) + (mid_lo >> 16);
  // t_final = floor(t*q / 2^32) < q. For z >= q*2^32 (never produced by a
  // product of residues) z_hi must be canonicalized to keep B < 2q.
  if (z_hi >= m.q) z_hi %= m.q;
  return static_cast<uint32_t>(z_hi) + m.q - t_final;
}

// Enter/leave the Montgomery domain. Both return canonical residues.
inline uint32_t to_montgomery(uint32_t a, const Modulus& m) {
  uint32_t r = montgomery_reduce64(static_cast<uint64_t>(a) * m.mont_r2, m);
  if (r >= m.q) r -= m.q;
  return r;
}

inline uint32_t from_montgomery(uint32_t a, const Modulus& m) {
  uint32_t r = montgomery_reduce64(a, m);
  if (r >= m.q) r -= m.q;
  return r;
}

// Precomputed quotient floor(b * 2^32 / q) for Shoup multiplication by a
// fixed b < q.
inline uint64_t shoup_precompute(uint32_t b, const Modulus& m) {
  return (static_cast<uint64_t>(b) << 32) / m.q;
}

// (a*b) mod q with b fixed and b_shoup = floor(b*2^32/q): one high-half
// multiply, one low multiply, one conditional subtraction.
inline uint32_t shoup_mulmod(uint32_t a, uint32_t b, uint64_t b_shoup, const Modulus& m) {
  uint32_t t = static_cast<uint32_t>((static_cast<uint64_t>(a) * b_shoup) >> 32);
  uint32_t r = static_cast<uint32_t>(static_cast<uint64_t>(a) * b - static_cast<uint64_t>(t) * m.q);
  if (r >= m.q) r -= m.q;
  return r;
}

// Reduces an arbitrary 64-bit value to [0, q). The montgomery strategy
// returns the canonicalized z * 2^{-32} mod q; callers track the domain
// factor through plan metadata.
inline uint32_t reduce64(uint64_t z, const Modulus& m, Reduction strategy) {
  switch (strategy) {
    case Reduction::native:
      return static_cast<uint32_t>(z % m.q);
    case Reduction::montgomery: {
      uint32_t r = montgomery_reduce64(z, m);
      if (r >= m.q) r -= m.q;
      return r;
    }
    case Reduction::barrett:
    case Reduction::shoup:
    default:
      return barrett_reduce64(z, m);
  }
}

// (a*b) mod q under the chosen strategy, residues in/out. Montgomery
// bookkeeping (entering and leaving the domain) is handled internally;
// shoup computes its quotient on the fly.
inline uint32_t mulmod(uint32_t a, uint32_t b, const Modulus& m, Reduction strategy) {
  switch (strategy) {
    case Reduction::native:
      return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % m.q);
    case Reduction::montgomery: {
      // a*b*2^{-32}, then re-multiplied by 2^64 mod q: the domain factors cancel.
      uint32_t lowered = montgomery_reduce64(static_cast<uint64_t>(a) * b, m);
      uint32_t r = montgomery_reduce64(static_cast<uint64_t>(lowered) * m.mont_r2, m);
      if (r >= m.q) r -= m.q;
      return r;
    }
    case Reduction::shoup:
      return shoup_mulmod(a, b, shoup_precompute(b, m), m);
    case Reduction::barrett:
    default:
      return barrett_mulmod(a, b, m);
  }
}

inline uint32_t addmod(uint32_t a, uint32_t b, const Modulus& m) {
  uint32_t r = a + b;
  if (r >= m.q) r -= m.q;
  return r;
}

inline uint32_t submod(uint32_t a, uint32_t b, const Modulus& m) {
  uint32_t r = a + m.q - b;
  if (r >= m.q) r -= m.q;
  return r;
}

inline uint32_t negmod(uint32_t a, const Modulus& m) { return a == 0 ? 0 : m.q - a; }

inline uint32_t powmod(uint32_t base, uint64_t exp, const Modulus& m) {
  return static_cast<uint32_t>(powmod_u64(base, exp, m.q));
}

inline uint32_t invmod(uint32_t a, const Modulus& m) {
  return powmod(a, m.q - 2, m);  // q prime
}

}  // namespace cross

#endif  // CROSS_MODULUS_H_
