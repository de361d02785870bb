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

#ifndef CROSS_CHUNK_H_
#define CROSS_CHUNK_H_

#include <cstdint>
#include <span>
#include <vector>

namespace cross {

// Number of bp-bit chunks covering a log2q-bit value.
constexpr uint32_t chunks_per_value(uint32_t log2q, uint32_t bp) {
  return (log2q + bp - 1) / bp;
}

/**
 * A tensor of bp-bit chunks representing unsigned values in base 2^bp,
 * least-significant chunk first: value v has its chunks at
 * data[v*k .. v*k + k - 1]. Chunks are stored in 32-bit slots because
 * intermediate states (accumulator rows before carry propagation) may
 * exceed 2^bp; a freshly decomposed tensor always satisfies chunk < 2^bp.
 */
struct ChunkTensor {
  std::vector<size_t> shape;  // logical value shape (e.g. {V, W})
  uint32_t bp = 8;
  uint32_t k = 0;  // chunks per value
  std::vector<uint32_t> data;

  size_t value_count() const {
    size_t n = 1;
    for (size_t d : shape) n *= d;
    return n;
  }
};

// Splits a into k chunks of bp bits, least-significant first.
// Throws std::out_of_range if a >= 2^(k*bp).
std::vector<uint32_t> chunk_decompose(uint64_t a, uint32_t k, uint32_t bp);

// Tensor variant over a flat value array.
ChunkTensor chunk_decompose(std::span<const uint32_t> values, std::vector<size_t> shape,
                            uint32_t k, uint32_t bp);

// Sum of chunks[i] * 2^(i*bp) with 64-bit accumulation. Chunk values may
// exceed 2^bp (merge of accumulator rows); throws std::overflow_error if the
// merged value does not fit 64 bits.
uint64_t chunk_merge(std::span<const uint32_t> chunks, uint32_t bp);

// Merges each k-chunk group of the tensor back into a 64-bit value.
std::vector<uint64_t> chunk_merge(const ChunkTensor& t);

}  // namespace cross

#endif  // CROSS_CHUNK_H_
