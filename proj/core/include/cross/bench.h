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

#ifndef CROSS_BENCH_H_
#define CROSS_BENCH_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cross/modulus.h"
#include "cross/opcount.h"
#include "cross/params.h"

namespace cross {

enum class Kernel : uint8_t {
  ntt3,
  ct_ntt,
  four_step,
  intt,
  vecmodmul,
  matmodmul,
  bconv,
  polymul,
  rescale,
  he_add,
  hpsm,
};

const char* to_string(Kernel k);
Kernel kernel_from_string(const std::string& name);
std::vector<Kernel> all_kernels();

struct BenchConfig {
  Kernel kernel = Kernel::ntt3;
  ParamSet param_set;
  std::vector<size_t> batches{1};
  Reduction strategy = Reduction::barrett;
  bool use_bat = true;
  size_t iters = 10;
  size_t warmup = 2;
  uint64_t seed = 0x5eed;
  std::string output;         // empty: stdout only
  std::string format = "csv";
  bool inject_fault = false;  // flip one output bit so verification must fail
  bool parallel_verify = false;
  size_t rc_r = 0, rc_c = 0;  // 0: default split
  size_t limbs_out = 0;       // 0: param_set.l_aux
  size_t mm_h = 512, mm_v = 256, mm_w = 256;
};

// One (kernel, batch, strategy) cell. Data-dependent fields (shapes, counts,
// verified) are deterministic under a fixed seed; timing fields are not.
struct BenchRecord {
  std::string kernel;
  size_t n = 0, r = 0, c = 0, l = 0, lp = 0, h = 0, v = 0, w = 0;
  size_t batch = 1;
  std::string strategy;
  bool use_bat = true;
  size_t iters = 0;
  double min_us = 0, median_us = 0, mean_us = 0;
  double throughput_per_s = 0;
  uint64_t mults = 0;
  uint64_t perm_ops = 0;
  bool verified = false;
};

struct VerifyOutcome {
  Kernel kernel = Kernel::ntt3;
  bool ok = false;
  std::string detail;  // on mismatch: first divergent index, expected, actual
  OpMeter meter;
};

// Runs one kernel and its oracle on seeded inputs; bit-exact or a localized
// diff in `detail`.
VerifyOutcome verify_kernel(const BenchConfig& cfg, Kernel kernel);

// Verifies cfg.kernel (or every kernel with `all`). Returns the process
// exit status: 0 on bit-exact agreement, 1 on any mismatch. Honors
// cfg.parallel_verify and the CROSS_KERNELS_THREADS cap.
int run_verify(const BenchConfig& cfg, std::ostream& log, bool all = false);

// Warmup + timed iterations for every (kernel, batch) cell, verification
// outside the timed region. Sequential by design.
std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg, std::ostream& log);

std::string render_csv(const std::vector<BenchRecord>& records);
std::string render_json(const std::vector<BenchRecord>& records, uint64_t seed);

// Writes records in the chosen format; throws on empty records or an
// unwritable path.
void emit_report(const std::vector<BenchRecord>& records, const std::string& format,
                 const std::string& path, uint64_t seed);

// Worker-thread cap: CROSS_KERNELS_THREADS, else hardware concurrency.
size_t worker_thread_cap();

}  // namespace cross

#endif  // CROSS_BENCH_H_
