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

#include "cross/ntt.h"

#include <stdexcept>

#include "cross/intmath.h"
#include "cross/vecops.h"

namespace cross {

namespace {

void check_psi(const Modulus& m, size_t n, uint32_t psi) {
  if (powmod(psi, 2 * n, m) != 1 || (n > 1 && powmod(psi, n, m) != m.q - 1)) {
    throw std::domain_error("ntt: psi is not a primitive 2N-th root of unity");
  }
  if (n == 1 && psi != 1 && powmod(psi, 2, m) != 1) {
    throw std::domain_error("ntt: psi is not a primitive 2N-th root of unity");
  }
}

void check_ntt_shape(size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("ntt: N must be a power of two");
}

// psi^e with e taken mod 2N.
uint32_t psi_pow(uint32_t psi, uint64_t e, size_t n, const Modulus& m) {
  return powmod(psi, e % (2 * n), m);
}

// Elementwise multiply by a plan twiddle matrix under the plan's strategy.
void apply_mid(std::vector<uint32_t>& data, const ResidueMatrix& mid,
               const std::vector<uint64_t>& mid_shoup, const NttPlan& plan, OpMeter* meter) {
  const Modulus& m = plan.mod;
  switch (plan.strategy) {
    case Reduction::montgomery:
      for (size_t i = 0; i < data.size(); ++i) {
        uint32_t r = montgomery_reduce64(static_cast<uint64_t>(data[i]) * mid.data[i], m);
        if (r >= m.q) r -= m.q;
        data[i] = r;
      }
      break;
    case Reduction::shoup:
      for (size_t i = 0; i < data.size(); ++i) {
        data[i] = shoup_mulmod(data[i], mid.data[i], mid_shoup[i], m);
      }
      break;
    case Reduction::native:
      for (size_t i = 0; i < data.size(); ++i) {
        data[i] = static_cast<uint32_t>(static_cast<uint64_t>(data[i]) * mid.data[i] % m.q);
      }
      break;
    case Reduction::barrett:
    default:
      for (size_t i = 0; i < data.size(); ++i) {
        data[i] = barrett_mulmod(data[i], mid.data[i], m);
      }
      break;
  }
  if (meter != nullptr) meter->mod_mults += data.size();
}

}  // namespace

PermIndex bit_reverse_perm(size_t n) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("bit_reverse_perm: size must be a power of two");
  }
  const uint32_t bits = floor_log2(n);
  PermIndex p(n);
  for (size_t i = 0; i < n; ++i) {
    p[i] = static_cast<uint32_t>(reverse_bits(i, bits));
  }
  return p;
}

std::vector<uint32_t> bit_complement_shuffle(std::span<const uint32_t> v, size_t group) {
  if (!is_power_of_two(group) || group < 2 || v.size() % group != 0) {
    throw std::invalid_argument("bit_complement_shuffle: group must be a power of two dividing the length");
  }
  std::vector<uint32_t> out(v.size());
  const size_t half = group / 2;
  for (size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i ^ half];
  }
  return out;
}

std::vector<uint32_t> naive_negacyclic_ntt(std::span<const uint32_t> a, const Modulus& m,
                                           uint32_t psi) {
  const size_t n = a.size();
  check_ntt_shape(n);
  check_psi(m, n, psi);
  // Power table over exponents mod 2N.
  std::vector<uint32_t> pows(2 * n);
  pows[0] = 1;
  for (size_t i = 1; i < 2 * n; ++i) {
    pows[i] = static_cast<uint32_t>(mulmod_u64(pows[i - 1], psi, m.q));
  }
  std::vector<uint32_t> out(n);
  for (size_t k = 0; k < n; ++k) {
    uint64_t base = (2 * k + 1) % (2 * n);
    uint64_t acc = 0;
    size_t e = 0;
    for (size_t j = 0; j < n; ++j) {
      acc += mulmod_u64(a[j], pows[e], m.q);
      if (acc >= (1ull << 62)) acc %= m.q;
      e += base;
      if (e >= 2 * n) e -= 2 * n;
    }
    out[k] = static_cast<uint32_t>(acc % m.q);
  }
  return out;
}

std::vector<uint32_t> ct_ntt(std::span<const uint32_t> a, const Modulus& m, uint32_t psi,
                             OpMeter* meter) {
  const size_t n = a.size();
  check_ntt_shape(n);
  check_psi(m, n, psi);
  std::vector<uint32_t> b(a.begin(), a.end());
  if (n == 1) return b;
  const uint32_t bits = floor_log2(n);
  // Twiddles in bit-reversed index order so every stage reads consecutively.
  std::vector<uint32_t> w(n);
  for (size_t i = 0; i < n; ++i) {
    w[i] = psi_pow(psi, reverse_bits(i, bits), n, m);
  }
  size_t t = n;
  for (size_t stage = 1; stage < n; stage <<= 1) {
    t >>= 1;
    for (size_t blk = 0; blk < stage; ++blk) {
      const uint32_t tw = w[stage + blk];
      const size_t base = 2 * blk * t;
      for (size_t j = base; j < base + t; ++j) {
        uint32_t u = b[j];
        uint32_t v = barrett_mulmod(b[j + t], tw, m);
        b[j] = addmod(u, v, m);
        b[j + t] = submod(u, v, m);
      }
    }
  }
  if (meter != nullptr) meter->mod_mults += static_cast<uint64_t>(n / 2) * bits;
  return b;
}

std::vector<uint32_t> four_step_ntt(std::span<const uint32_t> a, size_t r, size_t c,
                                    const Modulus& m, uint32_t psi, OpMeter* meter) {
  const size_t n = a.size();
  check_ntt_shape(n);
  if (r * c != n || !is_power_of_two(r) || !is_power_of_two(c)) {
    throw std::invalid_argument("four_step_ntt: need N = R*C with power-of-two factors");
  }
  check_psi(m, n, psi);
  const uint32_t omega = powmod(psi, 2, m);
  const uint32_t w_r = powmod(omega, c, m);  // order R
  const uint32_t w_c = powmod(omega, r, m);  // order C

  // Pre-twist by psi^j, row-major R x C.
  ResidueMatrix g(r, c);
  for (size_t j = 0; j < n; ++j) {
    g.data[j] = static_cast<uint32_t>(mulmod_u64(a[j], psi_pow(psi, j, n, m), m.q));
  }
  if (meter != nullptr) meter->mod_mults += n;

  // Step 1: R-point transforms down the columns.
  ResidueMatrix tf_r(r, r);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < r; ++j) {
      tf_r.at(i, j) = powmod(w_r, static_cast<uint64_t>(i) * j % r, m);
    }
  }
  ResidueMatrix b = ref_mod_matmul(tf_r, g, m, meter);

  // Step 2: elementwise twiddle by omega^(kr*c).
  for (size_t kr = 0; kr < r; ++kr) {
    for (size_t cc = 0; cc < c; ++cc) {
      b.at(kr, cc) = static_cast<uint32_t>(
          mulmod_u64(b.at(kr, cc), powmod(omega, static_cast<uint64_t>(kr) * cc % n, m), m.q));
    }
  }
  if (meter != nullptr) meter->mod_mults += n;

  // Step 3: the explicit runtime transpose the layout-invariant path removes.
  ResidueMatrix bt(c, r);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < c; ++j) {
      bt.at(j, i) = b.at(i, j);
    }
  }
  if (meter != nullptr) meter->perm_ops += n;

  // Step 4: C-point transforms down the columns of the transposed matrix.
  ResidueMatrix tf_c(c, c);
  for (size_t i = 0; i < c; ++i) {
    for (size_t j = 0; j < c; ++j) {
      tf_c.at(i, j) = powmod(w_c, static_cast<uint64_t>(i) * j % c, m);
    }
  }
  ResidueMatrix d = ref_mod_matmul(tf_c, bt, m, meter);

  // Final reorder D[kc, kr] -> out[kr + R*kc] back to natural order.
  std::vector<uint32_t> out(n);
  for (size_t kc = 0; kc < c; ++kc) {
    for (size_t kr = 0; kr < r; ++kr) {
      out[kr + r * kc] = d.at(kc, kr);
    }
  }
  if (meter != nullptr) meter->perm_ops += n;
  return out;
}

void default_ntt_split(size_t n, size_t& r, size_t& c) {
  if (!is_power_of_two(n)) throw std::invalid_argument("default_ntt_split: N must be a power of two");
  uint32_t half = (floor_log2(n) + 1) / 2;
  r = std::min<size_t>(size_t{1} << half, 128);
  c = n / r;
}

NttPlan compile_ntt_plan(size_t n, size_t r, size_t c, const Modulus& m, uint32_t bp,
                         Reduction strategy) {
  check_ntt_shape(n);
  if (r * c != n || !is_power_of_two(r) || !is_power_of_two(c)) {
    throw std::invalid_argument("compile_ntt_plan: need N = R*C with power-of-two factors");
  }
  if ((m.q - 1) % (2 * n) != 0) {
    throw std::domain_error("compile_ntt_plan: q != 1 (mod 2N)");
  }
  NttPlan plan;
  plan.n = n;
  plan.r = r;
  plan.c = c;
  plan.mod = m;
  plan.bp = bp;
  plan.k = chunks_per_value(m.log2q, bp);
  plan.strategy = strategy;
  plan.domain = strategy == Reduction::montgomery ? Domain::montgomery : Domain::plain;
  plan.psi = n == 1 ? 1 : find_primitive_root(m, 2 * n);
  const uint32_t psi = plan.psi;
  const uint64_t two_n = 2 * n;
  const uint32_t psi_inv = powmod(psi, two_n - 1, m);
  const uint32_t n_inv = invmod(static_cast<uint32_t>(n % m.q), m);

  PermIndex rev_r = bit_reverse_perm(r);
  PermIndex rev_c = bit_reverse_perm(c);

  // Step-1 left matrix with the bit-reversal row permutation and the
  // negacyclic column twist psi^(C*r') folded in:
  //   left[kr, r'] = psi^(C * r' * (2*rev(kr) + 1))
  ResidueMatrix left(r, r);
  for (size_t kr = 0; kr < r; ++kr) {
    const uint64_t odd = 2 * static_cast<uint64_t>(rev_r[kr]) + 1;
    for (size_t rr = 0; rr < r; ++rr) {
      left.at(kr, rr) = psi_pow(psi, static_cast<uint64_t>(c) * rr % two_n * odd, n, m);
    }
  }

  // Step-2 twiddles, rows in the same permuted order:
  //   mid[kr, c'] = psi^(c' * (2*rev(kr) + 1))
  ResidueMatrix mid(r, c);
  for (size_t kr = 0; kr < r; ++kr) {
    const uint64_t odd = 2 * static_cast<uint64_t>(rev_r[kr]) + 1;
    for (size_t cc = 0; cc < c; ++cc) {
      mid.at(kr, cc) = psi_pow(psi, cc * odd, n, m);
    }
  }

  // Step-3 right matrix with the bit-reversal column permutation:
  //   right[c', kc] = psi^(2*R * c' * rev(kc)) = omega_C^(c' * rev(kc))
  ResidueMatrix right(c, c);
  for (size_t cc = 0; cc < c; ++cc) {
    for (size_t kc = 0; kc < c; ++kc) {
      right.at(cc, kc) =
          psi_pow(psi, 2 * static_cast<uint64_t>(r) * cc % two_n * rev_c[kc], n, m);
    }
  }

  // Inverse counterparts; the C x C matrix applies first so the
  // (kr, c)-coupled factor can still act elementwise, and N^{-1} rides on
  // the final R x R matrix.
  ResidueMatrix inv_right(c, c);
  for (size_t kc = 0; kc < c; ++kc) {
    for (size_t cc = 0; cc < c; ++cc) {
      inv_right.at(kc, cc) =
          psi_pow(psi_inv, 2 * static_cast<uint64_t>(r) * rev_c[kc] % two_n * cc, n, m);
    }
  }
  ResidueMatrix inv_mid(r, c);
  for (size_t kr = 0; kr < r; ++kr) {
    const uint64_t odd = 2 * static_cast<uint64_t>(rev_r[kr]) + 1;
    for (size_t cc = 0; cc < c; ++cc) {
      inv_mid.at(kr, cc) = psi_pow(psi_inv, cc * odd, n, m);
    }
  }
  ResidueMatrix inv_left(r, r);
  for (size_t rr = 0; rr < r; ++rr) {
    for (size_t kr = 0; kr < r; ++kr) {
      const uint64_t odd = 2 * static_cast<uint64_t>(rev_r[kr]) + 1;
      uint32_t e = psi_pow(psi_inv, static_cast<uint64_t>(c) * rr % two_n * odd, n, m);
      inv_left.at(rr, kr) = static_cast<uint32_t>(mulmod_u64(e, n_inv, m.q));
    }
  }

  // Domain adjustment for the elementwise stages; matrix operands are
  // adjusted inside the BAT compiler.
  plan.mid = mid;
  plan.inv_mid = inv_mid;
  if (strategy == Reduction::montgomery) {
    for (auto& x : plan.mid.data) x = to_montgomery(x, m);
    for (auto& x : plan.inv_mid.data) x = to_montgomery(x, m);
  }
  if (strategy == Reduction::shoup) {
    plan.mid_shoup.resize(plan.mid.data.size());
    plan.inv_mid_shoup.resize(plan.inv_mid.data.size());
    for (size_t i = 0; i < plan.mid.data.size(); ++i) {
      plan.mid_shoup[i] = shoup_precompute(plan.mid.data[i], m);
    }
    for (size_t i = 0; i < plan.inv_mid.data.size(); ++i) {
      plan.inv_mid_shoup[i] = shoup_precompute(plan.inv_mid.data[i], m);
    }
  }

  plan.left = offline_compile_left(left, m, bp, strategy);
  plan.right = offline_compile_right(right, m, bp, strategy);
  plan.inv_right = offline_compile_right(inv_right, m, bp, strategy);
  plan.inv_left = offline_compile_left(inv_left, m, bp, strategy);
  return plan;
}

std::vector<uint32_t> ntt3_layout_invariant(std::span<const uint32_t> a, const NttPlan& plan,
                                            OpMeter* meter) {
  if (a.size() != plan.n) throw std::invalid_argument("ntt3: input length does not match plan");
  if (plan.n == 1) return {a[0]};
  ResidueMatrix x(plan.r, plan.c, std::vector<uint32_t>(a.begin(), a.end()));
  ResidueMatrix t1 = mat_mod_mul(plan.left, x, meter,
                                 plan.strategy == Reduction::shoup ? Reduction::barrett
                                                                   : plan.strategy);
  apply_mid(t1.data, plan.mid, plan.mid_shoup, plan, meter);
  ResidueMatrix t2 = mat_mod_mul_right(t1, plan.right, meter,
                                       plan.strategy == Reduction::shoup ? Reduction::barrett
                                                                         : plan.strategy);
  return std::move(t2.data);
}

std::vector<uint32_t> intt3(std::span<const uint32_t> ahat, const NttPlan& plan, OpMeter* meter) {
  if (ahat.size() != plan.n) throw std::invalid_argument("intt3: input length does not match plan");
  if (plan.n == 1) return {ahat[0]};
  ResidueMatrix x(plan.r, plan.c, std::vector<uint32_t>(ahat.begin(), ahat.end()));
  ResidueMatrix t1 = mat_mod_mul_right(x, plan.inv_right, meter,
                                       plan.strategy == Reduction::shoup ? Reduction::barrett
                                                                         : plan.strategy);
  apply_mid(t1.data, plan.inv_mid, plan.inv_mid_shoup, plan, meter);
  ResidueMatrix t2 = mat_mod_mul(plan.inv_left, t1, meter,
                                 plan.strategy == Reduction::shoup ? Reduction::barrett
                                                                   : plan.strategy);
  return std::move(t2.data);
}

std::vector<uint32_t> negacyclic_polymul(std::span<const uint32_t> a, std::span<const uint32_t> b,
                                         const Modulus& m, const NttPlan& plan, OpMeter* meter) {
  if (a.size() != b.size() || a.size() != plan.n) {
    throw std::invalid_argument("negacyclic_polymul: operand lengths must equal the plan degree");
  }
  std::vector<uint32_t> fa = ntt3_layout_invariant(a, plan, meter);
  std::vector<uint32_t> fb = ntt3_layout_invariant(b, plan, meter);
  // Both spectra share the bit-reversed order, so the pointwise product is
  // order-consistent. Shoup needs a fixed operand, so it falls back here.
  Reduction pointwise =
      plan.strategy == Reduction::shoup ? Reduction::barrett : plan.strategy;
  std::vector<uint32_t> prod = vec_mod_elementwise(ElementwiseOp::mul, fa, fb, m, pointwise, meter);
  return intt3(prod, plan, meter);
}

std::vector<uint32_t> automorphism(std::span<const uint32_t> a, uint64_t k, const Modulus& m,
                                   OpMeter* meter) {
  const size_t n = a.size();
  check_ntt_shape(n);
  if (k % 2 == 0) {
    throw std::invalid_argument("automorphism: k must be odd (coprime with 2N)");
  }
  std::vector<uint32_t> out(n);
  const uint64_t two_n = 2 * n;
  for (size_t j = 0; j < n; ++j) {
    uint64_t e = static_cast<uint64_t>(j) * (k % two_n) % two_n;
    if (e < n) {
      out[e] = a[j];
    } else {
      out[e - n] = negmod(a[j], m);
    }
  }
  if (meter != nullptr) meter->perm_ops += n;
  return out;
}

}  // namespace cross
