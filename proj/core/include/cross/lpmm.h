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

#ifndef CROSS_LPMM_H_
#define CROSS_LPMM_H_

#include <cstdint>
#include <vector>

#include "cross/bat.h"
#include "cross/matrix.h"
#include "cross/modulus.h"
#include "cross/opcount.h"

namespace cross {

// Emulates the matrix-unit contract: bp-bit operands, 32-bit accumulators.
// The precondition 2bp + ceil(log2(inner)) <= 32 guarantees no accumulator
// wraps; the engine additionally tracks the observed maximum entry.

struct AccMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<uint32_t> data;
  // provenance of the producing multiply
  uint32_t k = 0;
  size_t inner = 0;  // reduction dimension (KV)
  uint32_t bp = 8;
  uint32_t max_entry = 0;
  OpCount ops;

  uint32_t at(size_t r, size_t c) const { return data[r * cols + c]; }
};

// Dense integer product of two chunk matrices with 32-bit accumulation.
// Throws std::invalid_argument on shape mismatch and std::overflow_error if
// the accumulator precondition fails (checked before execution).
AccMatrix matmul_lp(const ChunkMatrix& a, const ChunkMatrix& b);

// Merges each K-row group of the accumulator with shifts and reduces to
// [0, q): Z[h, w] = reduce64(sum_k Zc[h*K + k, w] * 2^(k*bp)). The domain
// flag says whether the producing plan was in Montgomery form.
ResidueMatrix merge_reduce(const AccMatrix& z_chunk, uint32_t k, const Modulus& m,
                           Reduction strategy, Domain domain = Domain::plain);

// Column-group variant for right-side plans:
// Z[h, w] = reduce64(sum_j Zc[h, w*K + j] * 2^(j*bp)).
ResidueMatrix merge_reduce_cols(const AccMatrix& z_chunk, uint32_t k, const Modulus& m,
                                Reduction strategy, Domain domain = Domain::plain);

// (A @ B) mod q with A known offline: compiles A once, chunks B, multiplies
// on the low-precision engine, merges and reduces. Exact.
ResidueMatrix mat_mod_mul(const ResidueMatrix& a, const ResidueMatrix& b, const Modulus& m,
                          uint32_t bp = 8, Reduction strategy = Reduction::barrett,
                          OpMeter* meter = nullptr);

// Reuses an already-compiled left operand. merge_strategy picks the word
// reduction applied after the shift-merge when the plan is in the plain
// domain (a Montgomery-domain plan always uses its own reducer).
ResidueMatrix mat_mod_mul(const BatMatPlan& plan, const ResidueMatrix& b, OpMeter* meter = nullptr,
                          Reduction merge_strategy = Reduction::barrett);

// (B @ A) mod q with the known operand A on the right (right-side plan).
ResidueMatrix mat_mod_mul_right(const ResidueMatrix& b, const BatMatPlan& plan,
                                OpMeter* meter = nullptr,
                                Reduction merge_strategy = Reduction::barrett);

// Reference baseline that keeps the (2K-1)-row Toeplitz block per element
// (the sparse left matrix); numerically identical to mat_mod_mul, with
// OpCount reflecting the sparse shape.
ResidueMatrix sparse_baseline_matmul(const ResidueMatrix& a, const ResidueMatrix& b,
                                     const Modulus& m, uint32_t bp, OpCount* count,
                                     Reduction strategy = Reduction::barrett,
                                     OpMeter* meter = nullptr);

// Plain word-level modular matmul (the 32-bit vector-unit route); used as
// the in-library non-BAT path. Tests carry their own independent oracle.
ResidueMatrix ref_mod_matmul(const ResidueMatrix& a, const ResidueMatrix& b, const Modulus& m,
                             OpMeter* meter = nullptr);

}  // namespace cross

#endif  // CROSS_LPMM_H_
