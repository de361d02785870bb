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

#include "cross/lpmm.h"

#include <algorithm>
#include <stdexcept>

#include "cross/intmath.h"

namespace cross {

namespace {

// Reduces a 128-bit-safe merged value; the merge itself must fit 64 bits.
uint32_t reduce_merged(uint128_t acc, const Modulus& m, Reduction strategy, Domain domain) {
  if ((acc >> 64) != 0) {
    throw std::overflow_error("merge_reduce: merged value exceeds 64 bits");
  }
  uint64_t z = static_cast<uint64_t>(acc);
  if (domain == Domain::montgomery) {
    uint32_t r = montgomery_reduce64(z, m);
    if (r >= m.q) r -= m.q;
    return r;
  }
  return reduce64(z, m, strategy == Reduction::montgomery ? Reduction::barrett : strategy);
}

}  // namespace

AccMatrix matmul_lp(const ChunkMatrix& a, const ChunkMatrix& b) {
  if (a.cols != b.rows) {
    throw std::invalid_argument("matmul_lp: inner dimensions disagree (" + std::to_string(a.cols) +
                                " vs " + std::to_string(b.rows) + ")");
  }
  if (a.bp != b.bp) throw std::invalid_argument("matmul_lp: operand bit precisions disagree");
  if (2 * a.bp + ceil_log2(std::max<size_t>(a.cols, 1)) > 32) {
    throw std::overflow_error("matmul_lp: 2bp + ceil(log2(inner)) exceeds the 32-bit accumulator");
  }
  AccMatrix z;
  z.rows = a.rows;
  z.cols = b.cols;
  z.inner = a.cols;
  z.bp = a.bp;
  z.data.assign(z.rows * z.cols, 0);
  // i-k-j order keeps both operands streaming row-major.
  for (size_t i = 0; i < a.rows; ++i) {
    uint32_t* zrow = z.data.data() + i * z.cols;
    const uint16_t* arow = a.data.data() + i * a.cols;
    for (size_t kk = 0; kk < a.cols; ++kk) {
      const uint32_t av = arow[kk];
      if (av == 0) continue;
      const uint16_t* brow = b.data.data() + kk * b.cols;
      for (size_t j = 0; j < b.cols; ++j) {
        zrow[j] += av * brow[j];
      }
    }
  }
  z.max_entry = z.data.empty() ? 0 : *std::max_element(z.data.begin(), z.data.end());
  z.ops.multiplies = static_cast<uint64_t>(a.rows) * a.cols * b.cols;
  z.ops.bytes_lhs = static_cast<uint64_t>(a.rows) * a.cols * ((a.bp + 7) / 8);
  return z;
}

ResidueMatrix merge_reduce(const AccMatrix& z_chunk, uint32_t k, const Modulus& m,
                           Reduction strategy, Domain domain) {
  if (k == 0 || z_chunk.rows % k != 0) {
    throw std::invalid_argument("merge_reduce: accumulator rows not a multiple of K");
  }
  ResidueMatrix out(z_chunk.rows / k, z_chunk.cols);
  for (size_t h = 0; h < out.rows; ++h) {
    for (size_t w = 0; w < out.cols; ++w) {
      uint128_t acc = 0;
      for (uint32_t c = 0; c < k; ++c) {
        acc += static_cast<uint128_t>(z_chunk.at(h * k + c, w)) << (c * z_chunk.bp);
      }
      out.at(h, w) = reduce_merged(acc, m, strategy, domain);
    }
  }
  return out;
}

ResidueMatrix merge_reduce_cols(const AccMatrix& z_chunk, uint32_t k, const Modulus& m,
                                Reduction strategy, Domain domain) {
  if (k == 0 || z_chunk.cols % k != 0) {
    throw std::invalid_argument("merge_reduce_cols: accumulator cols not a multiple of K");
  }
  ResidueMatrix out(z_chunk.rows, z_chunk.cols / k);
  for (size_t h = 0; h < out.rows; ++h) {
    for (size_t w = 0; w < out.cols; ++w) {
      uint128_t acc = 0;
      for (uint32_t c = 0; c < k; ++c) {
        acc += static_cast<uint128_t>(z_chunk.at(h, w * k + c)) << (c * z_chunk.bp);
      }
      out.at(h, w) = reduce_merged(acc, m, strategy, domain);
    }
  }
  return out;
}

ResidueMatrix mat_mod_mul(const BatMatPlan& plan, const ResidueMatrix& b, OpMeter* meter,
                          Reduction merge_strategy) {
  if (plan.side != OperandSide::left) {
    throw std::invalid_argument("mat_mod_mul: plan was compiled for the right side");
  }
  if (plan.v != b.rows) {
    throw std::invalid_argument("mat_mod_mul: plan inner dimension does not match operand");
  }
  ChunkMatrix bd = runtime_compile_right(b, plan.k, plan.bp);
  AccMatrix z = matmul_lp(plan.dense, bd);
  if (meter != nullptr) {
    meter->add(z.ops);
    meter->mod_mults += static_cast<uint64_t>(plan.h) * plan.v * b.cols;
  }
  return merge_reduce(z, plan.k, plan.mod, merge_strategy, plan.domain);
}

ResidueMatrix mat_mod_mul(const ResidueMatrix& a, const ResidueMatrix& b, const Modulus& m,
                          uint32_t bp, Reduction strategy, OpMeter* meter) {
  BatMatPlan plan = offline_compile_left(a, m, bp, strategy);
  return mat_mod_mul(plan, b, meter, strategy);
}

ResidueMatrix mat_mod_mul_right(const ResidueMatrix& b, const BatMatPlan& plan, OpMeter* meter,
                                Reduction merge_strategy) {
  if (plan.side != OperandSide::right) {
    throw std::invalid_argument("mat_mod_mul_right: plan was compiled for the left side");
  }
  if (plan.h != b.cols) {
    throw std::invalid_argument("mat_mod_mul_right: plan inner dimension does not match operand");
  }
  ChunkMatrix bd = runtime_compile_left(b, plan.k, plan.bp);
  AccMatrix z = matmul_lp(bd, plan.dense);
  if (meter != nullptr) {
    meter->add(z.ops);
    meter->mod_mults += static_cast<uint64_t>(b.rows) * plan.h * plan.v;
  }
  return merge_reduce_cols(z, plan.k, plan.mod, merge_strategy, plan.domain);
}

ResidueMatrix sparse_baseline_matmul(const ResidueMatrix& a, const ResidueMatrix& b,
                                     const Modulus& m, uint32_t bp, OpCount* count,
                                     Reduction strategy, OpMeter* meter) {
  const uint32_t k = chunks_per_value(m.log2q, bp);
  const size_t trows = 2 * static_cast<size_t>(k) - 1;
  ChunkMatrix sparse(trows * a.rows, k * a.cols, bp);
  for (size_t h = 0; h < a.rows; ++h) {
    for (size_t v = 0; v < a.cols; ++v) {
      uint32_t val = a.at(h, v);
      if (val >= m.q) throw std::out_of_range("sparse_baseline_matmul: entry not in [0, q)");
      if (strategy == Reduction::montgomery) val = to_montgomery(val, m);
      for (uint32_t j = 0; j < k; ++j) {
        for (uint32_t i = 0; i < k; ++i) {
          sparse.at(h * trows + i + j, v * k + j) =
              static_cast<uint16_t>((val >> (i * bp)) & ((1u << bp) - 1));
        }
      }
    }
  }
  ChunkMatrix bd = runtime_compile_right(b, k, bp);
  AccMatrix z = matmul_lp(sparse, bd);
  if (count != nullptr) *count = z.ops;
  if (meter != nullptr) {
    meter->add(z.ops);
    meter->mod_mults += static_cast<uint64_t>(a.rows) * a.cols * b.cols;
  }
  Domain domain = strategy == Reduction::montgomery ? Domain::montgomery : Domain::plain;
  // (2K-1)-row groups merge with the same shift rule.
  ResidueMatrix out(a.rows, b.cols);
  for (size_t h = 0; h < out.rows; ++h) {
    for (size_t w = 0; w < out.cols; ++w) {
      uint128_t acc = 0;
      for (size_t c = 0; c < trows; ++c) {
        acc += static_cast<uint128_t>(z.at(h * trows + c, w)) << (c * bp);
      }
      if ((acc >> 64) != 0) {
        throw std::overflow_error("sparse_baseline_matmul: merged value exceeds 64 bits");
      }
      uint64_t zz = static_cast<uint64_t>(acc);
      if (domain == Domain::montgomery) {
        uint32_t r = montgomery_reduce64(zz, m);
        if (r >= m.q) r -= m.q;
        out.at(h, w) = r;
      } else {
        out.at(h, w) = reduce64(zz, m, strategy);
      }
    }
  }
  return out;
}

ResidueMatrix ref_mod_matmul(const ResidueMatrix& a, const ResidueMatrix& b, const Modulus& m,
                             OpMeter* meter) {
  if (a.cols != b.rows) throw std::invalid_argument("ref_mod_matmul: shape mismatch");
  ResidueMatrix out(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i) {
    for (size_t j = 0; j < b.cols; ++j) {
      uint128_t acc = 0;
      for (size_t v = 0; v < a.cols; ++v) {
        acc += static_cast<uint64_t>(a.at(i, v)) * b.at(v, j);
      }
      out.at(i, j) = static_cast<uint32_t>(acc % m.q);
    }
  }
  if (meter != nullptr) meter->mod_mults += static_cast<uint64_t>(a.rows) * a.cols * b.cols;
  return out;
}

}  // namespace cross
