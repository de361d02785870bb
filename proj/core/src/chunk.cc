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

#include "cross/chunk.h"

#include <stdexcept>

#include "cross/intmath.h"

namespace cross {

std::vector<uint32_t> chunk_decompose(uint64_t a, uint32_t k, uint32_t bp) {
  if (bp == 0 || bp > 16) throw std::invalid_argument("chunk_decompose: bp must lie in [1, 16]");
  if (k == 0) throw std::invalid_argument("chunk_decompose: k must be positive");
  if (static_cast<uint64_t>(k) * bp < 64 && (a >> (k * bp)) != 0) {
    throw std::out_of_range("chunk_decompose: value exceeds 2^(k*bp)");
  }
  const uint32_t mask = (1u << bp) - 1;
  std::vector<uint32_t> chunks(k);
  for (uint32_t i = 0; i < k; ++i) {
    chunks[i] = static_cast<uint32_t>(a >> (i * bp)) & mask;
  }
  return chunks;
}

ChunkTensor chunk_decompose(std::span<const uint32_t> values, std::vector<size_t> shape,
                            uint32_t k, uint32_t bp) {
  if (bp == 0 || bp > 16) throw std::invalid_argument("chunk_decompose: bp must lie in [1, 16]");
  size_t n = 1;
  for (size_t d : shape) n *= d;
  if (n != values.size()) throw std::invalid_argument("chunk_decompose: shape/value mismatch");
  ChunkTensor t;
  t.shape = std::move(shape);
  t.bp = bp;
  t.k = k;
  t.data.resize(values.size() * k);
  const uint32_t mask = (1u << bp) - 1;
  for (size_t v = 0; v < values.size(); ++v) {
    uint32_t x = values[v];
    if (k * bp < 32 && (x >> (k * bp)) != 0) {
      throw std::out_of_range("chunk_decompose: value exceeds 2^(k*bp)");
    }
    for (uint32_t i = 0; i < k; ++i) {
      t.data[v * k + i] = (x >> (i * bp)) & mask;
    }
  }
  return t;
}

uint64_t chunk_merge(std::span<const uint32_t> chunks, uint32_t bp) {
  uint64_t acc = 0;
  for (size_t i = 0; i < chunks.size(); ++i) {
    const uint64_t shift = static_cast<uint64_t>(i) * bp;
    if (chunks[i] == 0) continue;
    if (shift >= 64 || (shift > 0 && bit_width_u64(chunks[i]) + shift > 64)) {
      throw std::overflow_error("chunk_merge: merged value exceeds 64 bits");
    }
    uint64_t term = static_cast<uint64_t>(chunks[i]) << shift;
    if (__builtin_add_overflow(acc, term, &acc)) {
      throw std::overflow_error("chunk_merge: merged value exceeds 64 bits");
    }
  }
  return acc;
}

std::vector<uint64_t> chunk_merge(const ChunkTensor& t) {
  std::vector<uint64_t> out(t.value_count());
  for (size_t v = 0; v < out.size(); ++v) {
    out[v] = chunk_merge(std::span<const uint32_t>(t.data.data() + v * t.k, t.k), t.bp);
  }
  return out;
}

}  // namespace cross
