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

#ifndef CROSS_BAT_H_
#define CROSS_BAT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cross/chunk.h"
#include "cross/matrix.h"
#include "cross/modulus.h"
#include "cross/opcount.h"

namespace cross {

// Offline compiler that rewrites modular multiplication by a known operand
// as a dense low-precision matrix acting on the chunk decomposition of the
// unknown operand. Column j of a compiled K x K matrix merges to
// a * 2^(j*bp) (mod q), so M @ chunks(b) followed by a shift-merge and one
// word reduction equals (a*b) mod q.

/**
 * The (2K-1) x K chunk-convolution operand: column j holds the chunks of the
 * known scalar shifted down by j rows, X[i+j, j] = a_i. Entries are 64-bit
 * because folding temporarily accumulates values past 2^bp.
 */
struct ToeplitzMatrix {
  size_t rows = 0;  // 2K-1
  size_t cols = 0;  // K
  uint32_t k = 0;
  uint32_t bp = 8;
  std::vector<uint64_t> data;

  uint64_t& at(size_t r, size_t c) { return data[r * cols + c]; }
  uint64_t at(size_t r, size_t c) const { return data[r * cols + c]; }
};

// Dense K x K compiled form of one known scalar.
struct BatScalarMatrix {
  uint32_t k = 0;
  uint32_t bp = 8;
  uint32_t source = 0;  // the plain residue the matrix was compiled from
  Modulus mod;
  Domain domain = Domain::plain;
  ChunkMatrix m;  // K x K, entries < 2^bp
};

// Which side of the low-precision product the compiled operand feeds.
// A right-side plan carries the output-basis chunks along its columns so the
// runtime left operand needs no transpose.
enum class OperandSide : uint8_t { left = 0, right = 1 };

// Dense KH x KV (left) or KV x KW (right) compiled form of a known matrix.
struct BatMatPlan {
  size_t h = 0;  // logical rows of the source matrix
  size_t v = 0;  // logical cols of the source matrix
  uint32_t k = 0;
  uint32_t bp = 8;
  Modulus mod;
  Domain domain = Domain::plain;
  OperandSide side = OperandSide::left;
  ChunkMatrix dense;
};

// K x K matrix R with R[k][l] = l-th chunk of (2^(bp*(K+k)) mod q); row k
// merges back to 2^(bp*(K+k)) mod q exactly.
struct LazyReductionMatrix {
  uint32_t k = 0;
  uint32_t bp = 8;
  Modulus mod;
  ChunkMatrix r;
};

// --- Offline compilation ----------------------------------------------------

// Lays out K chunks as the (2K-1) x K shifted-column matrix.
ToeplitzMatrix construct_toeplitz(std::span<const uint32_t> chunks, uint32_t bp);

// Folds every nonzero bottom-block entry (rows K..2K-2) into the top block of
// its own column: entry e at row K+i becomes chunks of (e * 2^((K+i)*bp) mod q)
// added to rows 0..K-1. Column-merge congruence mod q is preserved.
void bat_fold(ToeplitzMatrix& x, const Modulus& m);

// Base-2^bp carry propagation down each column; per-column merged value is
// unchanged. Every entry except possibly the last row ends below 2^bp.
void carry_propagate(ToeplitzMatrix& x);

// Iterates carry_propagate / bat_fold until the bottom block is zero and all
// entries fit bp bits (at most 4K rounds), then returns the top K x K block.
BatScalarMatrix offline_compile_scalar(uint32_t a, const Modulus& m, uint32_t bp = 8,
                                       Reduction strategy = Reduction::barrett);

// Single-pass compiler: column j = chunks of (a * 2^(j*bp) mod q).
BatScalarMatrix direct_scalar_bat(uint32_t a, const Modulus& m, uint32_t bp = 8,
                                  Reduction strategy = Reduction::barrett);

// Blockwise compilation of a known H x V matrix into the dense KH x KV
// left operand (block (h,v) = direct_scalar_bat(A[h,v])).
BatMatPlan offline_compile_left(const ResidueMatrix& a, const Modulus& m, uint32_t bp = 8,
                                Reduction strategy = Reduction::barrett);

// Mirrored compilation for a known matrix multiplying from the right:
// block (v,w) entry [k][j] = chunk_j(A[v,w] * 2^(k*bp) mod q), giving a
// KV x KW dense operand whose output chunks land along columns.
BatMatPlan offline_compile_right(const ResidueMatrix& a, const Modulus& m, uint32_t bp = 8,
                                 Reduction strategy = Reduction::barrett);

// Stacks the chunk decompositions of a runtime V x W matrix vertically into
// the KV x W right operand: B_dense[v*K + k, w] = chunk_k(B[v, w]).
ChunkMatrix runtime_compile_right(const ResidueMatrix& b, uint32_t k, uint32_t bp = 8);

// Row-wise analogue feeding a right-side plan: B_dense[h, v*K + k] =
// chunk_k(B[h, v]).
ChunkMatrix runtime_compile_left(const ResidueMatrix& b, uint32_t k, uint32_t bp = 8);

LazyReductionMatrix make_lazy_reduction_matrix(const Modulus& m, uint32_t bp = 8);

// --- Runtime ----------------------------------------------------------------

// (a*b) mod q through the compiled matrix: decompose b, take K partial sums,
// merge with shifts, reduce.
uint32_t bat_scalar_mulmod(const BatScalarMatrix& mat, uint32_t b, const Modulus& m,
                           OpMeter* meter = nullptr);

// Lazily reduces a 64-bit partial sum to ~K*bp+log2(K)+1 bits that are
// congruent mod q: low chunks pass through, high chunks go through R.
uint64_t lazy_reduce64_partial(uint64_t psum, const LazyReductionMatrix& r);

// Full lazy reduction: partial pass then a canonical word reduction.
uint32_t lazy_reduce64(uint64_t psum, const LazyReductionMatrix& r, const Modulus& m);

// Fallback for two unknown operands: chunk both, 1D-convolve into 2K-1
// partial sums, shift-accumulate, Barrett-reduce.
uint32_t hpsm_conv(uint32_t a, uint32_t b, const Modulus& m, uint32_t bp = 8,
                   OpMeter* meter = nullptr);

}  // namespace cross

#endif  // CROSS_BAT_H_
