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

#ifndef CROSS_MATRIX_H_
#define CROSS_MATRIX_H_

#include <cstdint>
#include <vector>

namespace cross {

// Row-major matrix of word-sized residues.
struct ResidueMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<uint32_t> data;

  ResidueMatrix() = default;
  ResidueMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0) {}
  ResidueMatrix(size_t r, size_t c, std::vector<uint32_t> d)
      : rows(r), cols(c), data(std::move(d)) {}

  uint32_t& at(size_t r, size_t c) { return data[r * cols + c]; }
  uint32_t at(size_t r, size_t c) const { return data[r * cols + c]; }

  bool operator==(const ResidueMatrix& o) const {
    return rows == o.rows && cols == o.cols && data == o.data;
  }
};

// Row-major matrix of bp-bit chunks (the matrix-engine operand format).
// 16-bit slots so bp up to 16 is representable; entries satisfy < 2^bp.
struct ChunkMatrix {
  size_t rows = 0;
  size_t cols = 0;
  uint32_t bp = 8;
  std::vector<uint16_t> data;

  ChunkMatrix() = default;
  ChunkMatrix(size_t r, size_t c, uint32_t bits) : rows(r), cols(c), bp(bits), data(r * c, 0) {}

  uint16_t& at(size_t r, size_t c) { return data[r * cols + c]; }
  uint16_t at(size_t r, size_t c) const { return data[r * cols + c]; }

  bool operator==(const ChunkMatrix& o) const {
    return rows == o.rows && cols == o.cols && bp == o.bp && data == o.data;
  }
};

}  // namespace cross

#endif  // CROSS_MATRIX_H_
