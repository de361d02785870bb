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

#ifndef CROSS_RNS_H_
#define CROSS_RNS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cross/bat.h"
#include "cross/matrix.h"
#include "cross/modulus.h"
#include "cross/opcount.h"

namespace cross {

using BigInt = boost::multiprecision::cpp_int;

/**
 * A basis of pairwise-coprime word primes q_0..q_{L-1} with the CRT
 * constants: Q = prod q_i (big-integer, oracle side), q_star[i] = Q/q_i,
 * and qhat_inv[i] = (Q/q_i)^{-1} mod q_i.
 */
struct RnsBasis {
  std::vector<Modulus> moduli;
  BigInt big_q;
  std::vector<BigInt> q_star;      // Q / q_i
  std::vector<uint32_t> qhat_inv;  // (Q/q_i)^{-1} mod q_i

  size_t limb_count() const { return moduli.size(); }
};

std::shared_ptr<const RnsBasis> make_rns_basis(const std::vector<uint32_t>& primes);

// L x N residue polynomial, limb-major: limb i occupies row i.
struct RnsPoly {
  std::shared_ptr<const RnsBasis> basis;
  size_t n = 0;
  std::vector<uint32_t> limbs;  // limb_count() * n

  uint32_t& at(size_t limb, size_t idx) { return limbs[limb * n + idx]; }
  uint32_t at(size_t limb, size_t idx) const { return limbs[limb * n + idx]; }
  size_t limb_count() const { return basis ? basis->limb_count() : 0; }
};

RnsPoly make_zero_poly(std::shared_ptr<const RnsBasis> basis, size_t n);

// Residues of big coefficients in [0, Q); throws std::out_of_range beyond Q.
RnsPoly crt_decompose(std::span<const BigInt> coeffs, std::shared_ptr<const RnsBasis> basis);

// Unique representative in [0, Q) matching every limb (big-integer path,
// used by tests and oracles).
std::vector<BigInt> crt_recompose(const RnsPoly& p);

/**
 * Precompiled source -> target conversion: cross_table[i][j] = (Q/q_i) mod
 * p_j, plus one BAT plan per target limb (the offline left operand of the
 * per-modulus multiply).
 */
struct BconvTable {
  std::shared_ptr<const RnsBasis> src;
  std::shared_ptr<const RnsBasis> dst;
  ResidueMatrix cross_table;            // L x L'
  uint32_t bp = 8;
  Reduction strategy = Reduction::barrett;
  std::vector<BatMatPlan> column_plan;  // per target limb j: 1 x L compiled
};

BconvTable make_bconv_table(std::shared_ptr<const RnsBasis> src,
                            std::shared_ptr<const RnsBasis> dst, uint32_t bp = 8,
                            Reduction strategy = Reduction::barrett);

// Step 1: b[i][n] = a[i][n] * qhat_inv[i] mod q_i (L independent N-length
// vector multiplies).
ResidueMatrix bconv_step1(const RnsPoly& p, Reduction strategy = Reduction::barrett,
                          OpMeter* meter = nullptr);

// Step 2: c[j][n] = sum_i b[i][n] * cross_table[i][j] mod p_j. With use_bat
// the known table column runs through the low-precision engine; otherwise a
// 64-bit accumulation path is used. Bit-identical either way.
ResidueMatrix bconv_step2(const ResidueMatrix& b, const BconvTable& table, bool use_bat,
                          OpMeter* meter = nullptr);

// Fast basis conversion (both steps). The result matches the conversion
// formula exactly, which may exceed true CRT conversion by e*Q with
// 0 <= e < L.
RnsPoly bconv(const RnsPoly& p, const BconvTable& table, bool use_bat = true,
              OpMeter* meter = nullptr);

// Drops the last limb: c'_i = (c_i - c_l) * q_l^{-1} mod q_i. times = 2
// gives the double-rescale variant (two limbs dropped).
RnsPoly rescale(const RnsPoly& p, Reduction strategy = Reduction::barrett, size_t times = 1,
                OpMeter* meter = nullptr);

// Limb-wise modular addition; bases must match.
RnsPoly he_add(const RnsPoly& a, const RnsPoly& b, OpMeter* meter = nullptr);

}  // namespace cross

#endif  // CROSS_RNS_H_
