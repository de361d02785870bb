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

#include "cross/params.h"

#include <cmath>
#include <stdexcept>

#include "cross/intmath.h"

namespace cross {

ParamSet load_param_set(const std::string& name) {
  ParamSet ps;
  ps.name = name;
  ps.log2q = 28;
  ps.dnum = 3;
  ps.batch = 1;
  if (name == "A") {
    ps.n = size_t{1} << 12;
    ps.l = 4;
  } else if (name == "B") {
    ps.n = size_t{1} << 13;
    ps.l = 8;
  } else if (name == "C") {
    ps.n = size_t{1} << 14;
    ps.l = 15;
  } else if (name == "D") {
    ps.n = size_t{1} << 16;
    ps.l = 51;
  } else {
    throw std::invalid_argument("load_param_set: unknown set '" + name +
                                "' (expected A, B, C or D)");
  }
  ps.l_aux = (ps.l + 1 + ps.dnum - 1) / ps.dnum;
  return ps;
}

ParamSet make_custom_param_set(size_t n, uint32_t log2q, size_t l, size_t dnum) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("make_custom_param_set: N must be a power of two, got " +
                                std::to_string(n));
  }
  if (log2q < 2 || log2q > 31) {
    throw std::invalid_argument("make_custom_param_set: log2q must lie in [2, 31]");
  }
  if (l == 0) throw std::invalid_argument("make_custom_param_set: L must be positive");
  ParamSet ps;
  ps.name = "custom";
  ps.n = n;
  ps.log2q = log2q;
  ps.l = l;
  ps.dnum = dnum == 0 ? 1 : dnum;
  ps.l_aux = (ps.l + 1 + ps.dnum - 1) / ps.dnum;
  ps.batch = 1;
  return ps;
}

std::shared_ptr<const RnsBasis> make_main_basis(const ParamSet& ps) {
  return make_rns_basis(gen_ntt_primes(ps.log2q, ps.n, ps.l));
}

std::shared_ptr<const RnsBasis> make_aux_basis(const ParamSet& ps, size_t count) {
  auto primes = gen_ntt_primes(ps.log2q, ps.n, ps.l + count);
  primes.erase(primes.begin(), primes.begin() + static_cast<ptrdiff_t>(ps.l));
  return make_rns_basis(primes);
}

double achieved_log2q(const RnsBasis& basis) {
  double bits = 0;
  for (const Modulus& m : basis.moduli) {
    bits += std::log2(static_cast<double>(m.q));
  }
  return bits;
}

}  // namespace cross
