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

#ifndef CROSS_SERIALIZE_H_
#define CROSS_SERIALIZE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cross/bat.h"
#include "cross/ntt.h"
#include "cross/rns.h"

namespace cross {

// Versioned binary plan container, all integers little-endian.
//
//   "BATP" | version u16 | kind u8 (1 scalar, 2 matrix, 3 ntt) | payload
//
// Scalar payload: q u32, bp u8, domain u8, side u8, k u8, source u32,
//                 K*K chunks (u8 when bp <= 8, else u16 LE).
// Matrix payload: q u32, bp u8, domain u8, side u8, k u8, H u64, V u64,
//                 KH*KV chunks.
// NTT payload:    q u32, bp u8, strategy u8, domain u8, k u8, N/R/C u64,
//                 psi u32, four nested matrix records, two residue matrices
//                 (u32 LE), two shoup tables (u64 LE).
//
// Writing is deterministic: save(load(save(x))) is byte-identical.
inline constexpr uint16_t kPlanFormatVersion = 1;

std::vector<uint8_t> save_bat_scalar(const BatScalarMatrix& m);
BatScalarMatrix load_bat_scalar(const std::vector<uint8_t>& bytes);

std::vector<uint8_t> save_bat_plan(const BatMatPlan& plan);
BatMatPlan load_bat_plan(const std::vector<uint8_t>& bytes);

std::vector<uint8_t> save_ntt_plan(const NttPlan& plan);
NttPlan load_ntt_plan(const std::vector<uint8_t>& bytes);

// RNS polynomial container:
//
//   "RNSP" | version u16 | basis digest u64 | L u32 | N u64 |
//   limb-major u32 LE payload
//
// The digest is FNV-1a64 over (L, q_0..q_{L-1}); loading verifies it against
// the supplied basis.
uint64_t rns_basis_digest(const RnsBasis& basis);

std::vector<uint8_t> save_rns_poly(const RnsPoly& p);
RnsPoly load_rns_poly(const std::vector<uint8_t>& bytes, std::shared_ptr<const RnsBasis> basis);

// File helpers.
void write_file(const std::string& path, const std::vector<uint8_t>& bytes);
std::vector<uint8_t> read_file(const std::string& path);

}  // namespace cross

#endif  // CROSS_SERIALIZE_H_
