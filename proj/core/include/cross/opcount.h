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

#ifndef CROSS_OPCOUNT_H_
#define CROSS_OPCOUNT_H_

#include <cstdint>

namespace cross {

// Cost of one dense low-precision multiply: multiplies is the bp-bit
// multiply-accumulate count (rows_lhs * cols_lhs * cols_rhs for a dense
// product), bytes_lhs the left-operand storage in bytes.
struct OpCount {
  uint64_t multiplies = 0;
  uint64_t bytes_lhs = 0;

  OpCount& operator+=(const OpCount& o) {
    multiplies += o.multiplies;
    bytes_lhs += o.bytes_lhs;
    return *this;
  }
};

// Per-call operation meter threaded through kernels (never global state).
//
//   mac_mults   bp-bit multiply-accumulates on the matrix engine
//   mod_mults   word-level modular multiplies; a dense modular matmul
//               contributes H*V*W regardless of how it is executed
//   perm_ops    elements moved by runtime permutations/transposes
struct OpMeter {
  uint64_t mac_mults = 0;
  uint64_t mod_mults = 0;
  uint64_t perm_ops = 0;
  uint64_t bytes_lhs = 0;

  uint64_t total_mults() const { return mac_mults + mod_mults; }

  void add(const OpCount& c) {
    mac_mults += c.multiplies;
    bytes_lhs += c.bytes_lhs;
  }
};

}  // namespace cross

#endif  // CROSS_OPCOUNT_H_
