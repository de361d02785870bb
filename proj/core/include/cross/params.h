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

#ifndef CROSS_PARAMS_H_
#define CROSS_PARAMS_H_

#include <cstdint>
#include <memory>
#include <string>

#include "cross/rns.h"

namespace cross {

// Named evaluation parameter sets. Limb moduli are generated as distinct
// log2q-bit primes = 1 (mod 2N); the achieved total modulus width is
// reported next to the nominal one. dnum is carried as metadata only.
struct ParamSet {
  std::string name = "custom";
  size_t n = 0;        // polynomial degree, power of two
  uint32_t log2q = 0;  // per-limb bit width
  size_t l = 0;        // limb count
  size_t l_aux = 0;    // auxiliary-basis limb count L'
  size_t dnum = 0;     // digit count, metadata
  size_t batch = 1;    // default batch size
};

// A: (2^12, 28, 4)  B: (2^13, 28, 8)  C: (2^14, 28, 15)  D: (2^16, 28, 51).
// Throws std::invalid_argument for unknown names.
ParamSet load_param_set(const std::string& name);

// Validated custom set; N must be a power of two, log2q <= 31, L >= 1.
ParamSet make_custom_param_set(size_t n, uint32_t log2q, size_t l, size_t dnum = 3);

// Distinct NTT-friendly primes for the set's main basis (and optionally the
// auxiliary one, drawn from the same scan further down).
std::shared_ptr<const RnsBasis> make_main_basis(const ParamSet& ps);
std::shared_ptr<const RnsBasis> make_aux_basis(const ParamSet& ps, size_t count);

// Bits of the product of the basis moduli (the achieved log2 Q).
double achieved_log2q(const RnsBasis& basis);

}  // namespace cross

#endif  // CROSS_PARAMS_H_
