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

#include "cross/modulus.h"

#include <stdexcept>

namespace cross {

namespace {

uint64_t mr_witness_pow(uint64_t a, uint64_t d, uint64_t n) { return powmod_u64(a, d, n); }

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  uint64_t d = n - 1;
  uint32_t s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven deterministic witness set for all n < 2^64.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = mr_witness_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (uint32_t i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t inverse_mod_u64(uint64_t a, uint64_t m) {
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a % m);
  while (new_r != 0) {
    int64_t quot = r / new_r;
    int64_t tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("inverse_mod_u64: operand not invertible");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

const char* to_string(Reduction r) {
  switch (r) {
    case Reduction::native:
      return "native";
    case Reduction::barrett:
      return "barrett";
    case Reduction::montgomery:
      return "montgomery";
    case Reduction::shoup:
      return "shoup";
  }
  return "unknown";
}

Reduction reduction_from_string(const std::string& name) {
  if (name == "native") return Reduction::native;
  if (name == "barrett") return Reduction::barrett;
  if (name == "montgomery") return Reduction::montgomery;
  if (name == "shoup") return Reduction::shoup;
  throw std::invalid_argument("unknown reduction strategy: " + name);
}

Modulus make_modulus(uint32_t q) {
  if (q >= (1u << 31)) {
    throw std::out_of_range("make_modulus: q must be below 2^31, got " + std::to_string(q));
  }
  if (q <= 2) {
    throw std::out_of_range("make_modulus: q must exceed 2, got " + std::to_string(q));
  }
  if (!is_prime_u64(q)) {
    throw std::invalid_argument("make_modulus: q=" + std::to_string(q) +
                                " failed the Miller-Rabin primality check (composite)");
  }
  Modulus m;
  m.q = q;
  m.log2q = bit_width_u64(q);
  m.barrett_s = 2 * ceil_log2(q);
  m.barrett_m = static_cast<uint64_t>((static_cast<uint128_t>(1) << m.barrett_s) / q);
  m.barrett_m64 = static_cast<uint64_t>((static_cast<uint128_t>(1) << 64) / q);
  // Inverse of odd q mod 2^32 by Newton iteration: each step doubles the
  // number of correct low bits.
  uint32_t inv = q;  // correct to 3 bits for odd q
  for (int i = 0; i < 5; ++i) inv *= 2u - q * inv;
  m.mont_qinv = inv;
  m.mont_r2 = static_cast<uint32_t>((static_cast<uint128_t>(1) << 64) % q);
  m.q_lo = q & 0xffffu;
  m.q_hi = q >> 16;
  return m;
}

uint32_t gen_ntt_prime(uint32_t bits, uint64_t n) {
  if (bits < 2 || bits > 31) {
    throw std::out_of_range("gen_ntt_prime: bits must lie in [2, 31]");
  }
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("gen_ntt_prime: N must be a power of two");
  }
  const uint64_t step = 2 * n;
  const uint64_t hi = (1ull << bits) - 1;
  const uint64_t lo = 1ull << (bits - 1);
  if (step >= hi) {
    throw std::runtime_error("gen_ntt_prime: no " + std::to_string(bits) +
                             "-bit prime = 1 (mod " + std::to_string(step) + ") exists");
  }
  uint64_t q = (hi - 1) / step * step + 1;
  for (; q >= lo && q > 1; q -= step) {
    if (is_prime_u64(q)) return static_cast<uint32_t>(q);
  }
  throw std::runtime_error("gen_ntt_prime: range [2^" + std::to_string(bits - 1) + ", 2^" +
                           std::to_string(bits) + ") holds no prime = 1 (mod " +
                           std::to_string(step) + ")");
}

std::vector<uint32_t> gen_ntt_primes(uint32_t bits, uint64_t n, size_t count) {
  if (bits < 2 || bits > 31) {
    throw std::out_of_range("gen_ntt_primes: bits must lie in [2, 31]");
  }
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("gen_ntt_primes: N must be a power of two");
  }
  std::vector<uint32_t> primes;
  const uint64_t step = 2 * n;
  const uint64_t hi = (1ull << bits) - 1;
  const uint64_t lo = 1ull << (bits - 1);
  if (step < hi) {
    uint64_t q = (hi - 1) / step * step + 1;
    for (; q >= lo && q > 1 && primes.size() < count; q -= step) {
      if (is_prime_u64(q)) primes.push_back(static_cast<uint32_t>(q));
    }
  }
  if (primes.size() < count) {
    throw std::runtime_error("gen_ntt_primes: only " + std::to_string(primes.size()) + " of " +
                             std::to_string(count) + " requested " + std::to_string(bits) +
                             "-bit primes = 1 (mod 2N) exist");
  }
  return primes;
}

uint32_t find_primitive_root(const Modulus& m, uint64_t order) {
  if (order == 0 || (m.q - 1) % order != 0) {
    throw std::domain_error("find_primitive_root: order " + std::to_string(order) +
                            " does not divide q-1 = " + std::to_string(m.q - 1));
  }
  if (order == 1) return 1;
  // Prime factors of the order, for the maximality check.
  std::vector<uint64_t> factors;
  uint64_t rem = order;
  for (uint64_t p = 2; p * p <= rem; ++p) {
    if (rem % p == 0) {
      factors.push_back(p);
      while (rem % p == 0) rem /= p;
    }
  }
  if (rem > 1) factors.push_back(rem);

  const uint64_t exp = (m.q - 1) / order;
  for (uint32_t g = 2; g < m.q; ++g) {
    uint32_t cand = powmod(g, exp, m);
    if (cand == 0 || cand == 1) continue;
    bool primitive = true;
    for (uint64_t p : factors) {
      if (powmod(cand, order / p, m) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return cand;
  }
  throw std::runtime_error("find_primitive_root: exhausted candidates (q=" + std::to_string(m.q) +
                           ", order=" + std::to_string(order) + ")");
}

}  // namespace cross
