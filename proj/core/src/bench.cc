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

#include "cross/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "cross/bat.h"
#include "cross/lpmm.h"
#include "cross/ntt.h"
#include "cross/prng.h"
#include "cross/rns.h"
#include "cross/serialize.h"
#include "cross/vecops.h"

namespace cross {

namespace {

constexpr size_t kOracleDegreeCap = 4096;  // big-integer oracles run at most here

struct Diff {
  bool ok = true;
  std::string detail;
};

Diff compare_vec(std::span<const uint32_t> got, std::span<const uint32_t> want,
                 const std::string& what) {
  if (got.size() != want.size()) {
    return {false, what + ": size mismatch"};
  }
  for (size_t i = 0; i < got.size(); ++i) {
    if (got[i] != want[i]) {
      return {false, what + ": first divergence at index " + std::to_string(i) + ", expected " +
                         std::to_string(want[i]) + ", actual " + std::to_string(got[i])};
    }
  }
  return {};
}

// Flips one seeded bit of the kernel output so the oracle comparison must
// report a localized diff.
void maybe_inject_fault(std::vector<uint32_t>& out, const BenchConfig& cfg, uint64_t tag) {
  if (!cfg.inject_fault || out.empty()) return;
  SplitMix64 rng(cfg.seed ^ 0xfa017ull ^ tag);
  size_t idx = rng.next() % out.size();
  out[idx] ^= 1u << (rng.next() % 31);
}

SplitMix64 rng_for(const BenchConfig& cfg, Kernel k, uint64_t stream) {
  SplitMix64 root(cfg.seed);
  return root.split((static_cast<uint64_t>(k) << 32) | stream);
}

uint32_t pick_word_prime(const ParamSet& ps) {
  return gen_ntt_primes(ps.log2q, ps.n, 1)[0];
}

void resolve_split(const BenchConfig& cfg, size_t n, size_t& r, size_t& c) {
  if (cfg.rc_r != 0 && cfg.rc_c != 0) {
    r = cfg.rc_r;
    c = cfg.rc_c;
    if (r * c != n) throw std::invalid_argument("--rc: R*C must equal the degree");
    return;
  }
  default_ntt_split(n, r, c);
}

std::vector<uint32_t> schoolbook_negacyclic(std::span<const uint32_t> a,
                                            std::span<const uint32_t> b, const Modulus& m) {
  const size_t n = a.size();
  std::vector<uint32_t> out(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      uint64_t prod = mulmod_u64(a[i], b[j], m.q);
      size_t idx = i + j;
      if (idx < n) {
        out[idx] = addmod(out[idx], static_cast<uint32_t>(prod), m);
      } else {
        out[idx - n] = submod(out[idx - n], static_cast<uint32_t>(prod), m);
      }
    }
  }
  return out;
}

std::vector<uint32_t> apply_perm(std::span<const uint32_t> v, const PermIndex& p) {
  std::vector<uint32_t> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[p[i]];
  return out;
}

// --- per-kernel verification -------------------------------------------------

VerifyOutcome verify_ntt_kernel(const BenchConfig& cfg, Kernel kernel) {
  VerifyOutcome res;
  res.kernel = kernel;
  const ParamSet& ps = cfg.param_set;
  Modulus m = make_modulus(pick_word_prime(ps));
  size_t r = 0, c = 0;
  resolve_split(cfg, ps.n, r, c);
  NttPlan plan = compile_ntt_plan(ps.n, r, c, m, 8, cfg.strategy);
  SplitMix64 rng = rng_for(cfg, kernel, 0);
  std::vector<uint32_t> a = random_residues(rng, ps.n, m.q);

  std::vector<uint32_t> got;
  std::vector<uint32_t> want;
  std::string what;
  switch (kernel) {
    case Kernel::ntt3: {
      got = ntt3_layout_invariant(a, plan, &res.meter);
      if (ps.n <= kOracleDegreeCap) {
        want = apply_perm(naive_negacyclic_ntt(a, m, plan.psi), bit_reverse_perm(ps.n));
        what = "ntt3 vs bit-reversed naive oracle";
      } else {
        want = ct_ntt(a, m, plan.psi);
        what = "ntt3 vs radix-2 referee";
      }
      break;
    }
    case Kernel::ct_ntt: {
      got = ct_ntt(a, m, plan.psi, &res.meter);
      if (ps.n <= kOracleDegreeCap) {
        want = apply_perm(naive_negacyclic_ntt(a, m, plan.psi), bit_reverse_perm(ps.n));
        what = "ct_ntt vs bit-reversed naive oracle";
      } else {
        want = ntt3_layout_invariant(a, plan);
        what = "ct_ntt vs layout-invariant referee";
      }
      break;
    }
    case Kernel::four_step: {
      got = four_step_ntt(a, r, c, m, plan.psi, &res.meter);
      if (ps.n <= kOracleDegreeCap) {
        want = naive_negacyclic_ntt(a, m, plan.psi);
        what = "four_step vs naive oracle";
      } else {
        want = apply_perm(ct_ntt(a, m, plan.psi), bit_reverse_perm(ps.n));
        what = "four_step vs un-reversed radix-2 referee";
      }
      break;
    }
    case Kernel::intt: {
      std::vector<uint32_t> ahat = ntt3_layout_invariant(a, plan);
      got = intt3(ahat, plan, &res.meter);
      want = a;
      what = "intt3(ntt3(a)) vs a";
      break;
    }
    case Kernel::polymul: {
      std::vector<uint32_t> b = random_residues(rng, ps.n, m.q);
      got = negacyclic_polymul(a, b, m, plan, &res.meter);
      if (ps.n <= kOracleDegreeCap) {
        want = schoolbook_negacyclic(a, b, m);
        what = "polymul vs schoolbook oracle";
      } else {
        NttPlan ref = compile_ntt_plan(ps.n, c, r, m, 8, Reduction::native);
        want = negacyclic_polymul(a, b, m, ref);
        what = "polymul vs native-strategy referee";
      }
      break;
    }
    default:
      throw std::logic_error("verify_ntt_kernel: unexpected kernel");
  }
  maybe_inject_fault(got, cfg, static_cast<uint64_t>(kernel));
  Diff d = compare_vec(got, want, what);
  res.ok = d.ok;
  res.detail = d.ok ? what + ": bit-exact" : d.detail;
  return res;
}

VerifyOutcome verify_word_kernel(const BenchConfig& cfg, Kernel kernel) {
  VerifyOutcome res;
  res.kernel = kernel;
  const ParamSet& ps = cfg.param_set;
  Modulus m = make_modulus(pick_word_prime(ps));
  SplitMix64 rng = rng_for(cfg, kernel, 0);
  std::vector<uint32_t> a = random_residues(rng, ps.n, m.q);
  std::vector<uint32_t> b = random_residues(rng, ps.n, m.q);

  std::vector<uint32_t> got;
  if (kernel == Kernel::vecmodmul) {
    got = vec_mod_elementwise(ElementwiseOp::mul, a, b, m, cfg.strategy, &res.meter);
  } else {  // hpsm: convolution fallback, elementwise over the vectors
    got.resize(ps.n);
    for (size_t i = 0; i < ps.n; ++i) got[i] = hpsm_conv(a[i], b[i], m, 8, &res.meter);
  }
  std::vector<uint32_t> want(ps.n);
  for (size_t i = 0; i < ps.n; ++i) {
    want[i] = static_cast<uint32_t>(mulmod_u64(a[i], b[i], m.q));
  }
  maybe_inject_fault(got, cfg, static_cast<uint64_t>(kernel));
  std::string what = std::string(to_string(kernel)) + " vs native oracle";
  Diff d = compare_vec(got, want, what);
  res.ok = d.ok;
  res.detail = d.ok ? what + ": bit-exact" : d.detail;
  return res;
}

VerifyOutcome verify_matmodmul(const BenchConfig& cfg) {
  VerifyOutcome res;
  res.kernel = Kernel::matmodmul;
  const ParamSet& ps = cfg.param_set;
  Modulus m = make_modulus(pick_word_prime(ps));
  SplitMix64 rng = rng_for(cfg, Kernel::matmodmul, 0);
  ResidueMatrix a(cfg.mm_h, cfg.mm_v, random_residues(rng, cfg.mm_h * cfg.mm_v, m.q));
  ResidueMatrix b(cfg.mm_v, cfg.mm_w, random_residues(rng, cfg.mm_v * cfg.mm_w, m.q));

  ResidueMatrix got;
  if (cfg.use_bat) {
    got = mat_mod_mul(a, b, m, 8, cfg.strategy, &res.meter);
  } else {
    OpCount count;
    got = sparse_baseline_matmul(a, b, m, 8, &count, cfg.strategy, &res.meter);
  }
  ResidueMatrix want = ref_mod_matmul(a, b, m);
  maybe_inject_fault(got.data, cfg, static_cast<uint64_t>(Kernel::matmodmul));
  std::string what = std::string("matmodmul(") + (cfg.use_bat ? "dense" : "sparse") +
                     ") vs 64-bit reference";
  Diff d = compare_vec(got.data, want.data, what);
  res.ok = d.ok;
  res.detail = d.ok ? what + ": bit-exact" : d.detail;
  return res;
}

VerifyOutcome verify_bconv(const BenchConfig& cfg) {
  VerifyOutcome res;
  res.kernel = Kernel::bconv;
  const ParamSet& ps = cfg.param_set;
  const size_t n = std::min(ps.n, kOracleDegreeCap);
  const size_t lp = cfg.limbs_out != 0 ? cfg.limbs_out : ps.l_aux;
  auto src = make_main_basis(ps);
  auto dst = make_aux_basis(ps, lp);
  BconvTable table = make_bconv_table(src, dst, 8, cfg.strategy);

  SplitMix64 rng = rng_for(cfg, Kernel::bconv, 0);
  RnsPoly p = make_zero_poly(src, n);
  for (auto& x : p.limbs) x = 0;
  for (size_t i = 0; i < src->limb_count(); ++i) {
    for (size_t j = 0; j < n; ++j) p.at(i, j) = rng.below(src->moduli[i].q);
  }

  RnsPoly with_bat = bconv(p, table, /*use_bat=*/true, &res.meter);
  RnsPoly without = bconv(p, table, /*use_bat=*/false);
  maybe_inject_fault(with_bat.limbs, cfg, static_cast<uint64_t>(Kernel::bconv));
  Diff d = compare_vec(with_bat.limbs, without.limbs, "bconv BAT path vs 64-bit path");
  if (!d.ok) {
    res.ok = false;
    res.detail = d.detail;
    return res;
  }

  // Big-integer formula oracle plus the e*Q slack bound e < L.
  const size_t l = src->limb_count();
  for (size_t j = 0; j < n; ++j) {
    BigInt v = 0;
    for (size_t i = 0; i < l; ++i) {
      uint64_t y = mulmod_u64(p.at(i, j), src->qhat_inv[i], src->moduli[i].q);
      v += src->q_star[i] * y;
    }
    BigInt e = v / src->big_q;
    if (e < 0 || e >= static_cast<int64_t>(l)) {
      res.ok = false;
      res.detail = "bconv slack e out of [0, L) at coefficient " + std::to_string(j);
      return res;
    }
    for (size_t t = 0; t < dst->limb_count(); ++t) {
      uint32_t expect = static_cast<uint32_t>(v % dst->moduli[t].q);
      if (with_bat.at(t, j) != expect) {
        res.ok = false;
        res.detail = "bconv vs formula oracle: first divergence at limb " + std::to_string(t) +
                     ", index " + std::to_string(j) + ", expected " + std::to_string(expect) +
                     ", actual " + std::to_string(with_bat.at(t, j));
        return res;
      }
    }
  }
  res.ok = true;
  res.detail = "bconv BAT = 64-bit = formula oracle, slack e < L: bit-exact";
  return res;
}

VerifyOutcome verify_rescale(const BenchConfig& cfg) {
  VerifyOutcome res;
  res.kernel = Kernel::rescale;
  const ParamSet& ps = cfg.param_set;
  const size_t n = std::min(ps.n, kOracleDegreeCap);
  auto basis = make_main_basis(ps);
  SplitMix64 rng = rng_for(cfg, Kernel::rescale, 0);
  RnsPoly p = make_zero_poly(basis, n);
  for (size_t i = 0; i < basis->limb_count(); ++i) {
    for (size_t j = 0; j < n; ++j) p.at(i, j) = rng.below(basis->moduli[i].q);
  }
  RnsPoly got = rescale(p, cfg.strategy, 1, &res.meter);
  maybe_inject_fault(got.limbs, cfg, static_cast<uint64_t>(Kernel::rescale));

  const size_t l = basis->limb_count() - 1;
  const uint32_t ql = basis->moduli[l].q;
  std::vector<BigInt> x = crt_recompose(p);
  for (size_t j = 0; j < n; ++j) {
    BigInt y = (x[j] - (x[j] % ql)) / ql;
    for (size_t i = 0; i < l; ++i) {
      uint32_t expect = static_cast<uint32_t>(y % basis->moduli[i].q);
      if (got.at(i, j) != expect) {
        res.ok = false;
        res.detail = "rescale vs exact-division oracle: first divergence at limb " +
                     std::to_string(i) + ", index " + std::to_string(j) + ", expected " +
                     std::to_string(expect) + ", actual " + std::to_string(got.at(i, j));
        return res;
      }
    }
  }
  res.ok = true;
  res.detail = "rescale vs exact-division oracle: bit-exact";
  return res;
}

VerifyOutcome verify_he_add(const BenchConfig& cfg) {
  VerifyOutcome res;
  res.kernel = Kernel::he_add;
  const ParamSet& ps = cfg.param_set;
  const size_t n = std::min(ps.n, kOracleDegreeCap);
  auto basis = make_main_basis(ps);
  SplitMix64 rng = rng_for(cfg, Kernel::he_add, 0);
  RnsPoly a = make_zero_poly(basis, n);
  RnsPoly b = make_zero_poly(basis, n);
  for (size_t i = 0; i < basis->limb_count(); ++i) {
    for (size_t j = 0; j < n; ++j) {
      a.at(i, j) = rng.below(basis->moduli[i].q);
      b.at(i, j) = rng.below(basis->moduli[i].q);
    }
  }
  RnsPoly got = he_add(a, b, &res.meter);
  maybe_inject_fault(got.limbs, cfg, static_cast<uint64_t>(Kernel::he_add));
  std::vector<BigInt> xa = crt_recompose(a);
  std::vector<BigInt> xb = crt_recompose(b);
  std::vector<BigInt> xg = crt_recompose(got);
  for (size_t j = 0; j < n; ++j) {
    BigInt expect = (xa[j] + xb[j]) % basis->big_q;
    if (xg[j] != expect) {
      res.ok = false;
      res.detail = "he_add vs big-integer oracle: first divergence at index " + std::to_string(j);
      return res;
    }
  }
  res.ok = true;
  res.detail = "he_add vs big-integer oracle: bit-exact";
  return res;
}

// --- benchmark cells ----------------------------------------------------------

struct CellResult {
  std::vector<double> run_us;
  OpMeter meter;
  bool verified = false;
  size_t n = 0, r = 0, c = 0, l = 0, lp = 0, h = 0, v = 0, w = 0;
};

double now_us() {
  return std::chrono::duration<double, std::micro>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename Fn>
std::vector<double> timed_runs(size_t warmup, size_t iters, Fn&& fn) {
  for (size_t i = 0; i < warmup; ++i) fn();
  std::vector<double> us(iters);
  for (size_t i = 0; i < iters; ++i) {
    double t0 = now_us();
    fn();
    us[i] = now_us() - t0;
  }
  return us;
}

CellResult bench_cell(const BenchConfig& cfg, size_t batch) {
  CellResult cell;
  const ParamSet& ps = cfg.param_set;
  VerifyOutcome vo = verify_kernel(cfg, cfg.kernel);
  cell.verified = vo.ok;
  cell.meter = vo.meter;

  Modulus m = make_modulus(pick_word_prime(ps));
  SplitMix64 rng = rng_for(cfg, cfg.kernel, 1000 + batch);

  switch (cfg.kernel) {
    case Kernel::ntt3:
    case Kernel::ct_ntt:
    case Kernel::four_step:
    case Kernel::intt:
    case Kernel::polymul: {
      size_t r = 0, c = 0;
      resolve_split(cfg, ps.n, r, c);
      cell.n = ps.n;
      cell.r = r;
      cell.c = c;
      NttPlan plan = compile_ntt_plan(ps.n, r, c, m, 8, cfg.strategy);
      std::vector<std::vector<uint32_t>> data(batch);
      for (auto& dv : data) dv = random_residues(rng, ps.n, m.q);
      std::vector<std::vector<uint32_t>> data2;
      if (cfg.kernel == Kernel::polymul) {
        data2.resize(batch);
        for (auto& dv : data2) dv = random_residues(rng, ps.n, m.q);
      }
      cell.run_us = timed_runs(cfg.warmup, cfg.iters, [&] {
        for (size_t bi = 0; bi < batch; ++bi) {
          switch (cfg.kernel) {
            case Kernel::ntt3:
              ntt3_layout_invariant(data[bi], plan);
              break;
            case Kernel::ct_ntt:
              ct_ntt(data[bi], m, plan.psi);
              break;
            case Kernel::four_step:
              four_step_ntt(data[bi], plan.r, plan.c, m, plan.psi);
              break;
            case Kernel::intt:
              intt3(data[bi], plan);
              break;
            case Kernel::polymul:
              negacyclic_polymul(data[bi], data2[bi], m, plan);
              break;
            default:
              break;
          }
        }
      });
      break;
    }
    case Kernel::vecmodmul:
    case Kernel::hpsm: {
      cell.n = ps.n;
      std::vector<std::vector<uint32_t>> data(batch);
      for (auto& dv : data) dv = random_residues(rng, ps.n, m.q);
      std::vector<uint32_t> param = random_residues(rng, ps.n, m.q);
      // Parameter-side precomputes stay outside the timed region.
      std::vector<uint64_t> param_shoup(ps.n);
      std::vector<uint32_t> param_mont(ps.n);
      for (size_t i = 0; i < ps.n; ++i) {
        param_shoup[i] = shoup_precompute(param[i], m);
        param_mont[i] = to_montgomery(param[i], m);
      }
      cell.run_us = timed_runs(cfg.warmup, cfg.iters, [&] {
        for (size_t bi = 0; bi < batch; ++bi) {
          if (cfg.kernel == Kernel::hpsm) {
            for (size_t i = 0; i < ps.n; ++i) hpsm_conv(data[bi][i], param[i], m);
          } else {
            switch (cfg.strategy) {
              case Reduction::shoup:
                vec_mod_mul_shoup(data[bi], param, param_shoup, m);
                break;
              case Reduction::montgomery:
                vec_mod_mul_mont(data[bi], param_mont, m);
                break;
              default:
                vec_mod_elementwise(ElementwiseOp::mul, data[bi], param, m, cfg.strategy);
                break;
            }
          }
        }
      });
      break;
    }
    case Kernel::matmodmul: {
      cell.h = cfg.mm_h;
      cell.v = cfg.mm_v;
      cell.w = cfg.mm_w;
      ResidueMatrix a(cfg.mm_h, cfg.mm_v, random_residues(rng, cfg.mm_h * cfg.mm_v, m.q));
      BatMatPlan plan = offline_compile_left(a, m, 8, cfg.strategy);
      std::vector<ResidueMatrix> rhs;
      rhs.reserve(batch);
      for (size_t bi = 0; bi < batch; ++bi) {
        rhs.emplace_back(cfg.mm_v, cfg.mm_w, random_residues(rng, cfg.mm_v * cfg.mm_w, m.q));
      }
      cell.run_us = timed_runs(cfg.warmup, cfg.iters, [&] {
        for (size_t bi = 0; bi < batch; ++bi) {
          if (cfg.use_bat) {
            mat_mod_mul(plan, rhs[bi], nullptr,
                        cfg.strategy == Reduction::shoup ? Reduction::barrett : cfg.strategy);
          } else {
            OpCount count;
            sparse_baseline_matmul(a, rhs[bi], m, 8, &count, cfg.strategy);
          }
        }
      });
      break;
    }
    case Kernel::bconv: {
      const size_t lp = cfg.limbs_out != 0 ? cfg.limbs_out : ps.l_aux;
      cell.n = ps.n;
      cell.l = ps.l;
      cell.lp = lp;
      auto src = make_main_basis(ps);
      auto dst = make_aux_basis(ps, lp);
      BconvTable table = make_bconv_table(src, dst, 8, cfg.strategy);
      std::vector<RnsPoly> data;
      data.reserve(batch);
      for (size_t bi = 0; bi < batch; ++bi) {
        RnsPoly p = make_zero_poly(src, ps.n);
        for (size_t i = 0; i < src->limb_count(); ++i) {
          for (size_t j = 0; j < ps.n; ++j) p.at(i, j) = rng.below(src->moduli[i].q);
        }
        data.push_back(std::move(p));
      }
      cell.run_us = timed_runs(cfg.warmup, cfg.iters, [&] {
        for (size_t bi = 0; bi < batch; ++bi) bconv(data[bi], table, cfg.use_bat);
      });
      break;
    }
    case Kernel::rescale:
    case Kernel::he_add: {
      cell.n = ps.n;
      cell.l = ps.l;
      auto basis = make_main_basis(ps);
      std::vector<RnsPoly> da, db;
      da.reserve(batch);
      db.reserve(batch);
      for (size_t bi = 0; bi < batch; ++bi) {
        RnsPoly pa = make_zero_poly(basis, ps.n);
        RnsPoly pb = make_zero_poly(basis, ps.n);
        for (size_t i = 0; i < basis->limb_count(); ++i) {
          for (size_t j = 0; j < ps.n; ++j) {
            pa.at(i, j) = rng.below(basis->moduli[i].q);
            pb.at(i, j) = rng.below(basis->moduli[i].q);
          }
        }
        da.push_back(std::move(pa));
        db.push_back(std::move(pb));
      }
      cell.run_us = timed_runs(cfg.warmup, cfg.iters, [&] {
        for (size_t bi = 0; bi < batch; ++bi) {
          if (cfg.kernel == Kernel::rescale) {
            rescale(da[bi], cfg.strategy);
          } else {
            he_add(da[bi], db[bi]);
          }
        }
      });
      break;
    }
  }
  return cell;
}

}  // namespace

const char* to_string(Kernel k) {
  switch (k) {
    case Kernel::ntt3:
      return "ntt3";
    case Kernel::ct_ntt:
      return "ct_ntt";
    case Kernel::four_step:
      return "four_step";
    case Kernel::intt:
      return "intt";
    case Kernel::vecmodmul:
      return "vecmodmul";
    case Kernel::matmodmul:
      return "matmodmul";
    case Kernel::bconv:
      return "bconv";
    case Kernel::polymul:
      return "polymul";
    case Kernel::rescale:
      return "rescale";
    case Kernel::he_add:
      return "he_add";
    case Kernel::hpsm:
      return "hpsm";
  }
  return "unknown";
}

Kernel kernel_from_string(const std::string& name) {
  for (Kernel k : all_kernels()) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown kernel: " + name);
}

std::vector<Kernel> all_kernels() {
  return {Kernel::ntt3,   Kernel::ct_ntt,  Kernel::four_step, Kernel::intt,
          Kernel::vecmodmul, Kernel::matmodmul, Kernel::bconv, Kernel::polymul,
          Kernel::rescale,   Kernel::he_add,    Kernel::hpsm};
}

VerifyOutcome verify_kernel(const BenchConfig& cfg, Kernel kernel) {
  switch (kernel) {
    case Kernel::ntt3:
    case Kernel::ct_ntt:
    case Kernel::four_step:
    case Kernel::intt:
    case Kernel::polymul:
      return verify_ntt_kernel(cfg, kernel);
    case Kernel::vecmodmul:
    case Kernel::hpsm:
      return verify_word_kernel(cfg, kernel);
    case Kernel::matmodmul:
      return verify_matmodmul(cfg);
    case Kernel::bconv:
      return verify_bconv(cfg);
    case Kernel::rescale:
      return verify_rescale(cfg);
    case Kernel::he_add:
      return verify_he_add(cfg);
  }
  throw std::logic_error("verify_kernel: unhandled kernel");
}

size_t worker_thread_cap() {
  if (const char* env = std::getenv("CROSS_KERNELS_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

int run_verify(const BenchConfig& cfg, std::ostream& log, bool all) {
  std::vector<Kernel> kernels = all ? all_kernels() : std::vector<Kernel>{cfg.kernel};
  std::vector<VerifyOutcome> outcomes(kernels.size());

  if (cfg.parallel_verify && kernels.size() > 1) {
    const size_t cap = std::max<size_t>(1, worker_thread_cap());
    size_t next = 0;
    while (next < kernels.size()) {
      size_t count = std::min(cap, kernels.size() - next);
      std::vector<std::thread> pool;
      pool.reserve(count);
      for (size_t t = 0; t < count; ++t) {
        size_t idx = next + t;
        pool.emplace_back([&, idx] { outcomes[idx] = verify_kernel(cfg, kernels[idx]); });
      }
      for (auto& th : pool) th.join();
      next += count;
    }
  } else {
    for (size_t i = 0; i < kernels.size(); ++i) outcomes[i] = verify_kernel(cfg, kernels[i]);
  }

  int status = 0;
  for (const VerifyOutcome& o : outcomes) {
    log << "verify " << to_string(o.kernel) << " [strategy=" << to_string(cfg.strategy)
        << ", set=" << cfg.param_set.name << ", prng=" << kPrngId << ", seed=" << cfg.seed
        << "]: " << (o.ok ? "OK" : "FAIL") << " - " << o.detail << "\n";
    if (!o.ok) status = 1;
  }
  return status;
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg, std::ostream& log) {
  std::vector<BenchRecord> records;
  for (size_t batch : cfg.batches) {
    if (batch == 0) throw std::invalid_argument("run_benchmark: batch sizes must be >= 1");
    CellResult cell = bench_cell(cfg, batch);
    std::vector<double> us = cell.run_us;
    std::sort(us.begin(), us.end());
    double total = std::accumulate(us.begin(), us.end(), 0.0);
    BenchRecord rec;
    rec.kernel = to_string(cfg.kernel);
    rec.n = cell.n;
    rec.r = cell.r;
    rec.c = cell.c;
    rec.l = cell.l;
    rec.lp = cell.lp;
    rec.h = cell.h;
    rec.v = cell.v;
    rec.w = cell.w;
    rec.batch = batch;
    rec.strategy = to_string(cfg.strategy);
    rec.use_bat = cfg.use_bat;
    rec.iters = cfg.iters;
    rec.min_us = us.empty() ? 0 : us.front();
    rec.median_us = us.empty() ? 0 : us[us.size() / 2];
    rec.mean_us = us.empty() ? 0 : total / static_cast<double>(us.size());
    rec.throughput_per_s =
        total > 0 ? static_cast<double>(batch * cfg.iters) / (total * 1e-6) : 0.0;
    rec.mults = cell.meter.total_mults();
    rec.perm_ops = cell.meter.perm_ops;
    rec.verified = cell.verified;
    records.push_back(rec);
    log << "bench " << rec.kernel << " batch=" << batch << " median_us=" << rec.median_us
        << " throughput=" << rec.throughput_per_s << "/s verified=" << (rec.verified ? 1 : 0)
        << "\n";
  }
  return records;
}

namespace {

constexpr const char* kCsvHeader =
    "kernel,N,R,C,L,Lp,H,V,W,batch,strategy,use_bat,iters,min_us,median_us,mean_us,"
    "throughput_per_s,mults,perm_ops,verified";

}  // namespace

std::string render_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const BenchRecord& r : records) {
    out << r.kernel << ',' << r.n << ',' << r.r << ',' << r.c << ',' << r.l << ',' << r.lp << ','
        << r.h << ',' << r.v << ',' << r.w << ',' << r.batch << ',' << r.strategy << ','
        << (r.use_bat ? 1 : 0) << ',' << r.iters << ',' << r.min_us << ',' << r.median_us << ','
        << r.mean_us << ',' << r.throughput_per_s << ',' << r.mults << ',' << r.perm_ops << ','
        << (r.verified ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string render_json(const std::vector<BenchRecord>& records, uint64_t seed) {
  nlohmann::json j;
  j["prng"] = std::string(kPrngId);
  j["seed"] = seed;
  j["records"] = nlohmann::json::array();
  for (const BenchRecord& r : records) {
    j["records"].push_back({{"kernel", r.kernel},
                            {"N", r.n},
                            {"R", r.r},
                            {"C", r.c},
                            {"L", r.l},
                            {"Lp", r.lp},
                            {"H", r.h},
                            {"V", r.v},
                            {"W", r.w},
                            {"batch", r.batch},
                            {"strategy", r.strategy},
                            {"use_bat", r.use_bat ? 1 : 0},
                            {"iters", r.iters},
                            {"min_us", r.min_us},
                            {"median_us", r.median_us},
                            {"mean_us", r.mean_us},
                            {"throughput_per_s", r.throughput_per_s},
                            {"mults", r.mults},
                            {"perm_ops", r.perm_ops},
                            {"verified", r.verified ? 1 : 0}});
  }
  return j.dump(2) + "\n";
}

void emit_report(const std::vector<BenchRecord>& records, const std::string& format,
                 const std::string& path, uint64_t seed) {
  if (records.empty()) throw std::invalid_argument("emit_report: no records");
  std::string body;
  if (format == "csv") {
    body = render_csv(records);
  } else if (format == "json") {
    body = render_json(records, seed);
  } else {
    throw std::invalid_argument("emit_report: unknown format '" + format + "'");
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("emit_report: cannot open " + path);
  f << body;
  if (!f) throw std::runtime_error("emit_report: short write to " + path);
}

}  // namespace cross
