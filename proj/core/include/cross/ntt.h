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

#ifndef CROSS_NTT_H_
#define CROSS_NTT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cross/bat.h"
#include "cross/lpmm.h"
#include "cross/matrix.h"
#include "cross/modulus.h"
#include "cross/opcount.h"

namespace cross {

// Negacyclic transforms over Z_q[X]/(X^N + 1). The forward transform
// evaluates at the odd powers of a primitive 2N-th root psi:
//
//   ahat[k] = sum_j a_j * psi^((2k+1) j)  (mod q)
//
// Fast paths emit ahat in bit-reversed index order; the inverse consumes
// that order, so round trips perform no reordering at all.

using PermIndex = std::vector<uint32_t>;

// Bit-reversal permutation on [0, n); an involution. n must be a power of two.
PermIndex bit_reverse_perm(size_t n);

// Swaps element i with (i XOR group/2) inside every aligned group.
std::vector<uint32_t> bit_complement_shuffle(std::span<const uint32_t> v, size_t group);

// O(N^2) evaluation at psi^(2k+1), natural output order. The oracle every
// fast path is tested against.
std::vector<uint32_t> naive_negacyclic_ntt(std::span<const uint32_t> a, const Modulus& m,
                                           uint32_t psi);

// Radix-2 Cooley-Tukey with the negacyclic twist folded into the twiddles:
// log2(N) stages of N/2 butterflies b[i] +- w * b[i + t]. Natural input,
// bit-reversed output: ct_ntt(a)[i] = naive(a)[bitrev(i)].
std::vector<uint32_t> ct_ntt(std::span<const uint32_t> a, const Modulus& m, uint32_t psi,
                             OpMeter* meter = nullptr);

// Reference 4-step path with the explicit runtime transpose and final
// reorder (both hit the permutation counter). Natural output order.
std::vector<uint32_t> four_step_ntt(std::span<const uint32_t> a, size_t r, size_t c,
                                    const Modulus& m, uint32_t psi, OpMeter* meter = nullptr);

/**
 * Offline-compiled layout-invariant 3-step plan. All permutations
 * (bit-reversal rows/columns) and the negacyclic pre/post twists are baked
 * into the parameter matrices, so execution is two dense low-precision
 * matrix multiplications around one elementwise multiply on a row-major
 * R x C buffer -- no runtime transpose or shuffle on either direction.
 *
 * The defining invariant is ntt3_layout_invariant(a, plan) == ct_ntt(a);
 * matrix contents are derived from it.
 */
struct NttPlan {
  size_t n = 0, r = 0, c = 0;
  Modulus mod;
  uint32_t psi = 0;
  uint32_t bp = 8;
  uint32_t k = 0;
  Reduction strategy = Reduction::barrett;
  Domain domain = Domain::plain;

  BatMatPlan left;        // R x R, applied from the left in step 1
  ResidueMatrix mid;      // R x C elementwise twiddles (domain-adjusted)
  std::vector<uint64_t> mid_shoup;
  BatMatPlan right;       // C x C, applied from the right in step 3

  BatMatPlan inv_right;   // C x C, applied first on the inverse
  ResidueMatrix inv_mid;  // R x C
  std::vector<uint64_t> inv_mid_shoup;
  BatMatPlan inv_left;    // R x R, carries the N^{-1} scaling
};

// Builds the plan for N = R*C (all powers of two) and q = 1 (mod 2N).
// psi defaults to the smallest primitive 2N-th root found.
NttPlan compile_ntt_plan(size_t n, size_t r, size_t c, const Modulus& m, uint32_t bp = 8,
                         Reduction strategy = Reduction::barrett);

// Picks R = min(128, power-of-two near sqrt(N)) and C = N/R.
void default_ntt_split(size_t n, size_t& r, size_t& c);

// Forward/backward execution. Output (input) of the forward (inverse) path
// is in bit-reversed order; intt3(ntt3(a)) == a exactly.
std::vector<uint32_t> ntt3_layout_invariant(std::span<const uint32_t> a, const NttPlan& plan,
                                            OpMeter* meter = nullptr);
std::vector<uint32_t> intt3(std::span<const uint32_t> ahat, const NttPlan& plan,
                            OpMeter* meter = nullptr);

// Negacyclic polynomial product via forward transforms, pointwise multiply
// (consistent bit-reversed order on both operands) and the inverse.
std::vector<uint32_t> negacyclic_polymul(std::span<const uint32_t> a, std::span<const uint32_t> b,
                                         const Modulus& m, const NttPlan& plan,
                                         OpMeter* meter = nullptr);

// Coefficients of a(X^k) mod (X^N + 1) for odd k: index j lands at j*k mod N
// with a sign flip when j*k mod 2N >= N.
std::vector<uint32_t> automorphism(std::span<const uint32_t> a, uint64_t k, const Modulus& m,
                                   OpMeter* meter = nullptr);

}  // namespace cross

#endif  // CROSS_NTT_H_
