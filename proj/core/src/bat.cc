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

#include "cross/bat.h"

#include <stdexcept>

namespace cross {

namespace {

void check_bp(uint32_t bp) {
  if (bp == 0 || bp > 16) throw std::invalid_argument("bat: bp must lie in [1, 16]");
}

// Residue the compiled matrix represents: a itself, or a * 2^32 mod q when
// the plan is executed under Montgomery reduction.
uint32_t domain_adjust(uint32_t a, const Modulus& m, Reduction strategy) {
  return strategy == Reduction::montgomery ? to_montgomery(a, m) : a;
}

Domain domain_of(Reduction strategy) {
  return strategy == Reduction::montgomery ? Domain::montgomery : Domain::plain;
}

}  // namespace

ToeplitzMatrix construct_toeplitz(std::span<const uint32_t> chunks, uint32_t bp) {
  check_bp(bp);
  if (chunks.empty()) throw std::invalid_argument("construct_toeplitz: need at least one chunk");
  const uint32_t k = static_cast<uint32_t>(chunks.size());
  ToeplitzMatrix x;
  x.k = k;
  x.bp = bp;
  x.rows = 2 * static_cast<size_t>(k) - 1;
  x.cols = k;
  x.data.assign(x.rows * x.cols, 0);
  for (uint32_t j = 0; j < k; ++j) {
    for (uint32_t i = 0; i < k; ++i) {
      x.at(i + j, j) = chunks[i];
    }
  }
  return x;
}

void bat_fold(ToeplitzMatrix& x, const Modulus& m) {
  const uint32_t k = x.k;
  if (k <= 1) return;  // no bottom block
  for (size_t r = k; r < x.rows; ++r) {
    for (size_t c = 0; c < x.cols; ++c) {
      uint64_t e = x.at(r, c);
      if (e == 0) continue;
      x.at(r, c) = 0;
      // e * 2^(r*bp) mod q, exact via a 2^(r*bp) mod q power.
      uint64_t proj = mulmod_u64(e % m.q, pow2_mod(static_cast<uint64_t>(r) * x.bp, m.q), m.q);
      for (uint32_t i = 0; i < k; ++i) {
        x.at(i, c) += (proj >> (i * x.bp)) & ((1u << x.bp) - 1);
      }
    }
  }
}

void carry_propagate(ToeplitzMatrix& x) {
  const uint64_t mask = (1ull << x.bp) - 1;
  for (size_t c = 0; c < x.cols; ++c) {
    for (size_t r = 0; r + 1 < x.rows; ++r) {
      uint64_t v = x.at(r, c);
      if (v > mask) {
        x.at(r + 1, c) += v >> x.bp;
        x.at(r, c) = v & mask;
      }
    }
  }
}

BatScalarMatrix offline_compile_scalar(uint32_t a, const Modulus& m, uint32_t bp,
                                       Reduction strategy) {
  check_bp(bp);
  if (a >= m.q) throw std::out_of_range("offline_compile_scalar: a must lie in [0, q)");
  const uint32_t a_eff = domain_adjust(a, m, strategy);
  const uint32_t k = chunks_per_value(m.log2q, bp);
  auto chunks = chunk_decompose(a_eff, k, bp);
  ToeplitzMatrix x = construct_toeplitz(chunks, bp);

  const uint64_t mask = (1ull << bp) - 1;
  auto settled = [&]() {
    for (uint64_t v : x.data) {
      if (v > mask) return false;
    }
    for (size_t r = k; r < x.rows; ++r) {
      for (size_t c = 0; c < x.cols; ++c) {
        if (x.at(r, c) != 0) return false;
      }
    }
    return true;
  };

  uint32_t rounds = 0;
  while (!settled()) {
    if (++rounds > 4 * k) {
      throw std::runtime_error("offline_compile_scalar: fold/carry loop failed to settle");
    }
    carry_propagate(x);
    bool bottom_nonzero = false;
    for (size_t r = k; r < x.rows && !bottom_nonzero; ++r) {
      for (size_t c = 0; c < x.cols; ++c) {
        if (x.at(r, c) != 0) {
          bottom_nonzero = true;
          break;
        }
      }
    }
    if (bottom_nonzero) bat_fold(x, m);
  }

  BatScalarMatrix out;
  out.k = k;
  out.bp = bp;
  out.source = a;
  out.mod = m;
  out.domain = domain_of(strategy);
  out.m = ChunkMatrix(k, k, bp);
  for (uint32_t r = 0; r < k; ++r) {
    for (uint32_t c = 0; c < k; ++c) {
      out.m.at(r, c) = static_cast<uint16_t>(x.at(r, c));
    }
  }
  return out;
}

BatScalarMatrix direct_scalar_bat(uint32_t a, const Modulus& m, uint32_t bp, Reduction strategy) {
  check_bp(bp);
  if (a >= m.q) throw std::out_of_range("direct_scalar_bat: a must lie in [0, q)");
  const uint32_t a_eff = domain_adjust(a, m, strategy);
  const uint32_t k = chunks_per_value(m.log2q, bp);
  BatScalarMatrix out;
  out.k = k;
  out.bp = bp;
  out.source = a;
  out.mod = m;
  out.domain = domain_of(strategy);
  out.m = ChunkMatrix(k, k, bp);
  for (uint32_t j = 0; j < k; ++j) {
    uint32_t val =
        static_cast<uint32_t>(mulmod_u64(a_eff, pow2_mod(static_cast<uint64_t>(j) * bp, m.q), m.q));
    for (uint32_t i = 0; i < k; ++i) {
      out.m.at(i, j) = static_cast<uint16_t>((val >> (i * bp)) & ((1u << bp) - 1));
    }
  }
  return out;
}

BatMatPlan offline_compile_left(const ResidueMatrix& a, const Modulus& m, uint32_t bp,
                                Reduction strategy) {
  check_bp(bp);
  const uint32_t k = chunks_per_value(m.log2q, bp);
  BatMatPlan plan;
  plan.h = a.rows;
  plan.v = a.cols;
  plan.k = k;
  plan.bp = bp;
  plan.mod = m;
  plan.domain = domain_of(strategy);
  plan.side = OperandSide::left;
  plan.dense = ChunkMatrix(k * a.rows, k * a.cols, bp);
  for (size_t h = 0; h < a.rows; ++h) {
    for (size_t v = 0; v < a.cols; ++v) {
      BatScalarMatrix sub = direct_scalar_bat(a.at(h, v), m, bp, strategy);
      for (uint32_t i = 0; i < k; ++i) {
        for (uint32_t j = 0; j < k; ++j) {
          plan.dense.at(h * k + i, v * k + j) = sub.m.at(i, j);
        }
      }
    }
  }
  return plan;
}

BatMatPlan offline_compile_right(const ResidueMatrix& a, const Modulus& m, uint32_t bp,
                                 Reduction strategy) {
  check_bp(bp);
  const uint32_t k = chunks_per_value(m.log2q, bp);
  BatMatPlan plan;
  plan.h = a.rows;
  plan.v = a.cols;
  plan.k = k;
  plan.bp = bp;
  plan.mod = m;
  plan.domain = domain_of(strategy);
  plan.side = OperandSide::right;
  plan.dense = ChunkMatrix(k * a.rows, k * a.cols, bp);
  for (size_t v = 0; v < a.rows; ++v) {
    for (size_t w = 0; w < a.cols; ++w) {
      // Input-basis chunks along the block rows, output chunks along columns:
      // the blockwise transpose of the left-side form.
      BatScalarMatrix sub = direct_scalar_bat(a.at(v, w), m, bp, strategy);
      for (uint32_t i = 0; i < k; ++i) {
        for (uint32_t j = 0; j < k; ++j) {
          plan.dense.at(v * k + i, w * k + j) = sub.m.at(j, i);
        }
      }
    }
  }
  return plan;
}

ChunkMatrix runtime_compile_right(const ResidueMatrix& b, uint32_t k, uint32_t bp) {
  check_bp(bp);
  ChunkMatrix out(k * b.rows, b.cols, bp);
  const uint32_t mask = (1u << bp) - 1;
  for (size_t v = 0; v < b.rows; ++v) {
    for (size_t w = 0; w < b.cols; ++w) {
      uint32_t x = b.at(v, w);
      if (k * bp < 32 && (x >> (k * bp)) != 0) {
        throw std::out_of_range("runtime_compile_right: entry exceeds 2^(k*bp)");
      }
      for (uint32_t c = 0; c < k; ++c) {
        out.at(v * k + c, w) = static_cast<uint16_t>((x >> (c * bp)) & mask);
      }
    }
  }
  return out;
}

ChunkMatrix runtime_compile_left(const ResidueMatrix& b, uint32_t k, uint32_t bp) {
  check_bp(bp);
  ChunkMatrix out(b.rows, k * b.cols, bp);
  const uint32_t mask = (1u << bp) - 1;
  for (size_t h = 0; h < b.rows; ++h) {
    for (size_t v = 0; v < b.cols; ++v) {
      uint32_t x = b.at(h, v);
      if (k * bp < 32 && (x >> (k * bp)) != 0) {
        throw std::out_of_range("runtime_compile_left: entry exceeds 2^(k*bp)");
      }
      for (uint32_t c = 0; c < k; ++c) {
        out.at(h, v * k + c) = static_cast<uint16_t>((x >> (c * bp)) & mask);
      }
    }
  }
  return out;
}

LazyReductionMatrix make_lazy_reduction_matrix(const Modulus& m, uint32_t bp) {
  check_bp(bp);
  const uint32_t k = chunks_per_value(m.log2q, bp);
  LazyReductionMatrix lr;
  lr.k = k;
  lr.bp = bp;
  lr.mod = m;
  lr.r = ChunkMatrix(k, k, bp);
  for (uint32_t row = 0; row < k; ++row) {
    uint64_t val = pow2_mod(static_cast<uint64_t>(bp) * (k + row), m.q);
    for (uint32_t l = 0; l < k; ++l) {
      lr.r.at(row, l) = static_cast<uint16_t>((val >> (l * bp)) & ((1u << bp) - 1));
    }
  }
  return lr;
}

uint32_t bat_scalar_mulmod(const BatScalarMatrix& mat, uint32_t b, const Modulus& m,
                           OpMeter* meter) {
  const uint32_t k = mat.k;
  const uint32_t bp = mat.bp;
  const uint32_t mask = (1u << bp) - 1;
  // K partial sums of at most 2bp + log2(K) bits each.
  uint64_t z = 0;
  for (uint32_t i = 0; i < k; ++i) {
    uint64_t acc = 0;
    for (uint32_t j = 0; j < k; ++j) {
      acc += static_cast<uint64_t>(mat.m.at(i, j)) * ((b >> (j * bp)) & mask);
    }
    z += acc << (i * bp);
  }
  if (meter != nullptr) {
    meter->mac_mults += static_cast<uint64_t>(k) * k;
    meter->mod_mults += 1;
  }
  if (mat.domain == Domain::montgomery) {
    uint32_t r = montgomery_reduce64(z, m);
    if (r >= m.q) r -= m.q;
    return r;
  }
  return barrett_reduce64(z, m);
}

uint64_t lazy_reduce64_partial(uint64_t psum, const LazyReductionMatrix& r) {
  const uint32_t k = r.k;
  const uint32_t bp = r.bp;
  const uint64_t mask = (1ull << bp) - 1;
  const uint64_t low = psum & ((k * bp >= 64) ? ~0ull : ((1ull << (k * bp)) - 1));
  uint64_t acc = low;
  for (uint32_t l = 0; l < k; ++l) {
    uint64_t col = 0;
    for (uint32_t row = 0; row < k; ++row) {
      uint64_t high_chunk = (psum >> ((k + row) * bp)) & mask;
      col += high_chunk * r.r.at(row, l);
    }
    acc += col << (l * bp);
  }
  return acc;
}

uint32_t lazy_reduce64(uint64_t psum, const LazyReductionMatrix& r, const Modulus& m) {
  return barrett_reduce64(lazy_reduce64_partial(psum, r), m);
}

uint32_t hpsm_conv(uint32_t a, uint32_t b, const Modulus& m, uint32_t bp, OpMeter* meter) {
  check_bp(bp);
  if (a >= m.q || b >= m.q) throw std::out_of_range("hpsm_conv: operands must lie in [0, q)");
  const uint32_t k = chunks_per_value(m.log2q, bp);
  auto ac = chunk_decompose(a, k, bp);
  auto bc = chunk_decompose(b, k, bp);
  // a padded with k-1 zeros on both sides; one window position per output
  // basis produces the 2k-1 partial sums.
  std::vector<uint32_t> padded(3 * k - 2, 0);
  for (uint32_t i = 0; i < k; ++i) padded[k - 1 + i] = ac[i];
  uint64_t z = 0;
  for (uint32_t t = 0; t < 2 * k - 1; ++t) {
    uint64_t psum = 0;
    for (uint32_t j = 0; j < k; ++j) {
      psum += static_cast<uint64_t>(padded[t + k - 1 - j]) * bc[j];
    }
    z += psum << (t * bp);
  }
  if (meter != nullptr) {
    meter->mac_mults += static_cast<uint64_t>(2 * k - 1) * k;
    meter->mod_mults += 1;
  }
  return barrett_reduce_product(z, m);
}

}  // namespace cross
