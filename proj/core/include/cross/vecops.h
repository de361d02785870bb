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

#ifndef CROSS_VECOPS_H_
#define CROSS_VECOPS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cross/modulus.h"
#include "cross/opcount.h"

namespace cross {

enum class ElementwiseOp : uint8_t { add, sub, mul };

// Elementwise (a op b) mod q. Vectors must have equal length; mul dispatches
// to the selected reduction strategy.
std::vector<uint32_t> vec_mod_elementwise(ElementwiseOp op, std::span<const uint32_t> a,
                                          std::span<const uint32_t> b, const Modulus& m,
                                          Reduction strategy = Reduction::barrett,
                                          OpMeter* meter = nullptr);

// Multiplication by a fixed parameter vector with precomputed Shoup
// quotients (see shoup_precompute).
std::vector<uint32_t> vec_mod_mul_shoup(std::span<const uint32_t> a, std::span<const uint32_t> b,
                                        std::span<const uint64_t> b_shoup, const Modulus& m,
                                        OpMeter* meter = nullptr);

// Multiplication by a parameter vector already in the Montgomery domain.
std::vector<uint32_t> vec_mod_mul_mont(std::span<const uint32_t> a,
                                       std::span<const uint32_t> b_mont, const Modulus& m,
                                       OpMeter* meter = nullptr);

}  // namespace cross

#endif  // CROSS_VECOPS_H_
