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

// Independent reference implementations the production paths are tested
// against. Everything here favors obviousness over speed and stays clear of
// the code under test (wide-integer arithmetic only, no precomputed
// constants, no shared helpers).

#ifndef CROSS_TESTS_ORACLES_H_
#define CROSS_TESTS_ORACLES_H_

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cross::testing {

using BigOracle = boost::multiprecision::cpp_int;

inline uint64_t mulmod_oracle(uint64_t a, uint64_t b, uint64_t q) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

inline uint64_t powmod_oracle(uint64_t base, uint64_t exp, uint64_t q) {
  uint64_t r = 1 % q;
  base %= q;
  while (exp) {
    if (exp & 1) r = mulmod_oracle(r, base, q);
    base = mulmod_oracle(base, base, q);
    exp >>= 1;
  }
  return r;
}

// Extended Euclid on big integers; returns x with a*x = 1 (mod m).
inline BigOracle inverse_oracle(BigOracle a, BigOracle m) {
  BigOracle old_r = a % m, r = m;
  BigOracle old_s = 1, s = 0;
  while (r != 0) {
    BigOracle quot = old_r / r;
    BigOracle tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  BigOracle inv = old_s % m;
  if (inv < 0) inv += m;
  return inv;
}

// (z * 2^-32) mod q recovered by multiplying with the big-integer inverse.
inline uint64_t montgomery_oracle(uint64_t z, uint64_t q) {
  BigOracle inv32 = inverse_oracle(BigOracle(1) << 32, BigOracle(q));
  return static_cast<uint64_t>((BigOracle(z) * inv32) % q);
}

// Schoolbook product in Z_q[X]/(X^N + 1).
inline std::vector<uint32_t> schoolbook_polymul_oracle(std::span<const uint32_t> a,
                                                       std::span<const uint32_t> b, uint32_t q) {
  const size_t n = a.size();
  std::vector<uint32_t> out(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      uint64_t prod = mulmod_oracle(a[i], b[j], q);
      size_t idx = i + j;
      if (idx < n) {
        out[idx] = static_cast<uint32_t>((out[idx] + prod) % q);
      } else {
        out[idx - n] = static_cast<uint32_t>((out[idx - n] + q - prod % q) % q);
      }
    }
  }
  return out;
}

// Direct evaluation of the transform at odd powers of psi (no tables).
inline std::vector<uint32_t> negacyclic_dft_oracle(std::span<const uint32_t> a, uint32_t q,
                                                   uint32_t psi) {
  const size_t n = a.size();
  std::vector<uint32_t> out(n);
  for (size_t k = 0; k < n; ++k) {
    uint64_t acc = 0;
    for (size_t j = 0; j < n; ++j) {
      uint64_t w = powmod_oracle(psi, (2 * k + 1) * j, q);
      acc = (acc + mulmod_oracle(a[j], w, q)) % q;
    }
    out[k] = static_cast<uint32_t>(acc);
  }
  return out;
}

// CRT recomposition by brute search-free construction: sum of residues
// weighted with big-integer inverses.
inline BigOracle crt_oracle(std::span<const uint32_t> residues, std::span<const uint32_t> moduli) {
  BigOracle q = 1;
  for (uint32_t m : moduli) q *= m;
  BigOracle acc = 0;
  for (size_t i = 0; i < moduli.size(); ++i) {
    BigOracle qi = moduli[i];
    BigOracle star = q / qi;
    BigOracle inv = inverse_oracle(star % qi, qi);
    acc += star * ((residues[i] * inv) % qi);
  }
  return acc % q;
}

}  // namespace cross::testing

#endif  // CROSS_TESTS_ORACLES_H_
