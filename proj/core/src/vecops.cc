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

#include "cross/vecops.h"

#include <stdexcept>

namespace cross {

std::vector<uint32_t> vec_mod_elementwise(ElementwiseOp op, std::span<const uint32_t> a,
                                          std::span<const uint32_t> b, const Modulus& m,
                                          Reduction strategy, OpMeter* meter) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vec_mod_elementwise: length mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  std::vector<uint32_t> out(a.size());
  switch (op) {
    case ElementwiseOp::add:
      for (size_t i = 0; i < a.size(); ++i) out[i] = addmod(a[i], b[i], m);
      break;
    case ElementwiseOp::sub:
      for (size_t i = 0; i < a.size(); ++i) out[i] = submod(a[i], b[i], m);
      break;
    case ElementwiseOp::mul:
      switch (strategy) {
        case Reduction::native:
          for (size_t i = 0; i < a.size(); ++i) {
            out[i] = static_cast<uint32_t>(static_cast<uint64_t>(a[i]) * b[i] % m.q);
          }
          break;
        case Reduction::montgomery:
          for (size_t i = 0; i < a.size(); ++i) out[i] = mulmod(a[i], b[i], m, strategy);
          break;
        case Reduction::shoup:
          for (size_t i = 0; i < a.size(); ++i) {
            out[i] = shoup_mulmod(a[i], b[i], shoup_precompute(b[i], m), m);
          }
          break;
        case Reduction::barrett:
        default:
          for (size_t i = 0; i < a.size(); ++i) out[i] = barrett_mulmod(a[i], b[i], m);
          break;
      }
      if (meter != nullptr) meter->mod_mults += a.size();
      break;
  }
  return out;
}

std::vector<uint32_t> vec_mod_mul_shoup(std::span<const uint32_t> a, std::span<const uint32_t> b,
                                        std::span<const uint64_t> b_shoup, const Modulus& m,
                                        OpMeter* meter) {
  if (a.size() != b.size() || a.size() != b_shoup.size()) {
    throw std::invalid_argument("vec_mod_mul_shoup: length mismatch");
  }
  std::vector<uint32_t> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = shoup_mulmod(a[i], b[i], b_shoup[i], m);
  if (meter != nullptr) meter->mod_mults += a.size();
  return out;
}

std::vector<uint32_t> vec_mod_mul_mont(std::span<const uint32_t> a,
                                       std::span<const uint32_t> b_mont, const Modulus& m,
                                       OpMeter* meter) {
  if (a.size() != b_mont.size()) {
    throw std::invalid_argument("vec_mod_mul_mont: length mismatch");
  }
  std::vector<uint32_t> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    uint32_t r = montgomery_reduce64(static_cast<uint64_t>(a[i]) * b_mont[i], m);
    if (r >= m.q) r -= m.q;
    out[i] = r;
  }
  if (meter != nullptr) meter->mod_mults += a.size();
  return out;
}

}  // namespace cross
