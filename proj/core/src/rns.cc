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

#include "cross/rns.h"

#include <stdexcept>

#include "cross/intmath.h"
#include "cross/lpmm.h"
#include "cross/vecops.h"

namespace cross {

namespace {

uint32_t big_mod_u32(const BigInt& x, uint32_t q) {
  return static_cast<uint32_t>(x % q);
}

}  // namespace

std::shared_ptr<const RnsBasis> make_rns_basis(const std::vector<uint32_t>& primes) {
  if (primes.empty()) throw std::invalid_argument("make_rns_basis: need at least one prime");
  auto basis = std::make_shared<RnsBasis>();
  basis->big_q = 1;
  for (uint32_t q : primes) {
    for (const Modulus& prev : basis->moduli) {
      if (prev.q == q) throw std::invalid_argument("make_rns_basis: duplicate modulus");
    }
    basis->moduli.push_back(make_modulus(q));
    basis->big_q *= q;
  }
  basis->q_star.resize(primes.size());
  basis->qhat_inv.resize(primes.size());
  for (size_t i = 0; i < primes.size(); ++i) {
    basis->q_star[i] = basis->big_q / primes[i];
    uint32_t qs_mod = big_mod_u32(basis->q_star[i], primes[i]);
    basis->qhat_inv[i] = static_cast<uint32_t>(inverse_mod_u64(qs_mod, primes[i]));
  }
  return basis;
}

RnsPoly make_zero_poly(std::shared_ptr<const RnsBasis> basis, size_t n) {
  RnsPoly p;
  p.basis = std::move(basis);
  p.n = n;
  p.limbs.assign(p.basis->limb_count() * n, 0);
  return p;
}

RnsPoly crt_decompose(std::span<const BigInt> coeffs, std::shared_ptr<const RnsBasis> basis) {
  RnsPoly p = make_zero_poly(std::move(basis), coeffs.size());
  for (const BigInt& c : coeffs) {
    if (c < 0 || c >= p.basis->big_q) {
      throw std::out_of_range("crt_decompose: coefficient outside [0, Q)");
    }
  }
  for (size_t i = 0; i < p.limb_count(); ++i) {
    const uint32_t q = p.basis->moduli[i].q;
    for (size_t j = 0; j < p.n; ++j) {
      p.at(i, j) = big_mod_u32(coeffs[j], q);
    }
  }
  return p;
}

std::vector<BigInt> crt_recompose(const RnsPoly& p) {
  const RnsBasis& b = *p.basis;
  std::vector<BigInt> out(p.n);
  for (size_t j = 0; j < p.n; ++j) {
    BigInt acc = 0;
    for (size_t i = 0; i < b.limb_count(); ++i) {
      uint64_t t = mulmod_u64(p.at(i, j), b.qhat_inv[i], b.moduli[i].q);
      acc += b.q_star[i] * t;
    }
    out[j] = acc % b.big_q;
  }
  return out;
}

BconvTable make_bconv_table(std::shared_ptr<const RnsBasis> src,
                            std::shared_ptr<const RnsBasis> dst, uint32_t bp,
                            Reduction strategy) {
  for (const Modulus& ms : src->moduli) {
    for (const Modulus& md : dst->moduli) {
      if (ms.q == md.q) {
        throw std::invalid_argument("make_bconv_table: source and target bases overlap");
      }
    }
  }
  BconvTable t;
  t.src = src;
  t.dst = dst;
  t.bp = bp;
  t.strategy = strategy;
  const size_t l = src->limb_count();
  const size_t lp = dst->limb_count();
  t.cross_table = ResidueMatrix(l, lp);
  for (size_t i = 0; i < l; ++i) {
    for (size_t j = 0; j < lp; ++j) {
      t.cross_table.at(i, j) = big_mod_u32(src->q_star[i], dst->moduli[j].q);
    }
  }
  t.column_plan.reserve(lp);
  for (size_t j = 0; j < lp; ++j) {
    ResidueMatrix row(1, l);
    for (size_t i = 0; i < l; ++i) row.at(0, i) = t.cross_table.at(i, j);
    t.column_plan.push_back(offline_compile_left(row, dst->moduli[j], bp, strategy));
  }
  return t;
}

ResidueMatrix bconv_step1(const RnsPoly& p, Reduction strategy, OpMeter* meter) {
  const RnsBasis& b = *p.basis;
  ResidueMatrix out(p.limb_count(), p.n);
  for (size_t i = 0; i < p.limb_count(); ++i) {
    const Modulus& m = b.moduli[i];
    std::span<const uint32_t> limb(p.limbs.data() + i * p.n, p.n);
    std::vector<uint32_t> scaled;
    if (strategy == Reduction::shoup) {
      // qhat_inv is a fixed parameter, the Shoup-friendly case.
      uint64_t pre = shoup_precompute(b.qhat_inv[i], m);
      scaled.resize(p.n);
      for (size_t j = 0; j < p.n; ++j) scaled[j] = shoup_mulmod(limb[j], b.qhat_inv[i], pre, m);
      if (meter != nullptr) meter->mod_mults += p.n;
    } else {
      std::vector<uint32_t> rep(p.n, b.qhat_inv[i]);
      scaled = vec_mod_elementwise(ElementwiseOp::mul, limb, rep, m, strategy, meter);
    }
    std::copy(scaled.begin(), scaled.end(), out.data.begin() + i * p.n);
  }
  return out;
}

ResidueMatrix bconv_step2(const ResidueMatrix& b, const BconvTable& table, bool use_bat,
                          OpMeter* meter) {
  const size_t l = table.src->limb_count();
  const size_t lp = table.dst->limb_count();
  if (b.rows != l) throw std::invalid_argument("bconv_step2: limb count mismatch with table");
  ResidueMatrix out(lp, b.cols);
  if (use_bat) {
    for (size_t j = 0; j < lp; ++j) {
      ResidueMatrix c = mat_mod_mul(table.column_plan[j], b, meter,
                                    table.strategy == Reduction::shoup ? Reduction::barrett
                                                                       : table.strategy);
      std::copy(c.data.begin(), c.data.end(), out.data.begin() + j * b.cols);
    }
  } else {
    // 64-bit vectorized path: L products of 28-bit residues stay below 2^62.
    for (size_t j = 0; j < lp; ++j) {
      const Modulus& pj = table.dst->moduli[j];
      for (size_t nidx = 0; nidx < b.cols; ++nidx) {
        uint64_t acc = 0;
        for (size_t i = 0; i < l; ++i) {
          acc += static_cast<uint64_t>(b.at(i, nidx)) * table.cross_table.at(i, j);
        }
        out.at(j, nidx) = reduce64(acc, pj,
                                   table.strategy == Reduction::montgomery ||
                                           table.strategy == Reduction::shoup
                                       ? Reduction::barrett
                                       : table.strategy);
      }
      if (meter != nullptr) meter->mod_mults += static_cast<uint64_t>(l) * b.cols;
    }
  }
  return out;
}

RnsPoly bconv(const RnsPoly& p, const BconvTable& table, bool use_bat, OpMeter* meter) {
  if (p.basis != table.src) {
    if (!p.basis || p.basis->moduli.size() != table.src->moduli.size()) {
      throw std::invalid_argument("bconv: polynomial basis does not match table source");
    }
    for (size_t i = 0; i < p.basis->moduli.size(); ++i) {
      if (p.basis->moduli[i].q != table.src->moduli[i].q) {
        throw std::invalid_argument("bconv: polynomial basis does not match table source");
      }
    }
  }
  ResidueMatrix b = bconv_step1(p, table.strategy, meter);
  ResidueMatrix c = bconv_step2(b, table, use_bat, meter);
  RnsPoly out = make_zero_poly(table.dst, p.n);
  out.limbs = std::move(c.data);
  return out;
}

RnsPoly rescale(const RnsPoly& p, Reduction strategy, size_t times, OpMeter* meter) {
  if (times == 0) return p;
  if (p.limb_count() <= times) {
    throw std::invalid_argument("rescale: not enough limbs to drop");
  }
  RnsPoly cur = p;
  for (size_t round = 0; round < times; ++round) {
    const RnsBasis& b = *cur.basis;
    const size_t l = cur.limb_count() - 1;
    const Modulus& ql = b.moduli[l];

    std::vector<uint32_t> next_primes;
    for (size_t i = 0; i < l; ++i) next_primes.push_back(b.moduli[i].q);
    auto next_basis = make_rns_basis(next_primes);

    RnsPoly out = make_zero_poly(next_basis, cur.n);
    for (size_t i = 0; i < l; ++i) {
      const Modulus& qi = b.moduli[i];
      const uint32_t ql_inv = static_cast<uint32_t>(inverse_mod_u64(ql.q % qi.q, qi.q));
      for (size_t j = 0; j < cur.n; ++j) {
        uint32_t last = cur.at(l, j) % qi.q;
        uint32_t diff = submod(cur.at(i, j), last, qi);
        out.at(i, j) = mulmod(diff, ql_inv, qi, strategy);
      }
      if (meter != nullptr) meter->mod_mults += cur.n;
    }
    cur = std::move(out);
  }
  return cur;
}

RnsPoly he_add(const RnsPoly& a, const RnsPoly& b, OpMeter* meter) {
  if (a.n != b.n || a.limb_count() != b.limb_count()) {
    throw std::invalid_argument("he_add: operand shapes disagree");
  }
  for (size_t i = 0; i < a.limb_count(); ++i) {
    if (a.basis->moduli[i].q != b.basis->moduli[i].q) {
      throw std::invalid_argument("he_add: operand bases disagree");
    }
  }
  RnsPoly out = make_zero_poly(a.basis, a.n);
  for (size_t i = 0; i < a.limb_count(); ++i) {
    const Modulus& m = a.basis->moduli[i];
    for (size_t j = 0; j < a.n; ++j) {
      out.at(i, j) = addmod(a.at(i, j), b.at(i, j), m);
    }
  }
  (void)meter;
  return out;
}

}  // namespace cross
