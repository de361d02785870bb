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

#include "cross/serialize.h"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cross {

namespace {

constexpr char kPlanMagic[4] = {'B', 'A', 'T', 'P'};
constexpr char kPolyMagic[4] = {'R', 'N', 'S', 'P'};

enum RecordKind : uint8_t { kScalarRecord = 1, kMatrixRecord = 2, kNttRecord = 3 };

class Writer {
 public:
  void raw(const void* p, size_t n) {
    const uint8_t* b = static_cast<const uint8_t*>(p);
    buf_.insert(buf_.end(), b, b + n);
  }
  void u8(uint8_t v) { buf_.push_back(v); }
  void u16(uint16_t v) {
    for (int i = 0; i < 2; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  std::vector<uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(const std::vector<uint8_t>& b) : buf_(b) {}
  void raw(void* p, size_t n) {
    need(n);
    std::memcpy(p, buf_.data() + pos_, n);
    pos_ += n;
  }
  uint8_t u8() {
    need(1);
    return buf_[pos_++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = 0;
    for (int i = 0; i < 2; ++i) v |= static_cast<uint16_t>(buf_[pos_++]) << (8 * i);
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf_[pos_++]) << (8 * i);
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf_[pos_++]) << (8 * i);
    return v;
  }
  bool done() const { return pos_ == buf_.size(); }

 private:
  void need(size_t n) const {
    if (pos_ + n > buf_.size()) throw std::runtime_error("plan container truncated");
  }
  const std::vector<uint8_t>& buf_;
  size_t pos_ = 0;
};

void write_header(Writer& w, uint8_t kind) {
  w.raw(kPlanMagic, 4);
  w.u16(kPlanFormatVersion);
  w.u8(kind);
}

uint8_t read_header(Reader& r, const char* magic) {
  char m[4];
  r.raw(m, 4);
  if (std::memcmp(m, magic, 4) != 0) throw std::runtime_error("bad container magic");
  uint16_t version = r.u16();
  if (version != kPlanFormatVersion) {
    throw std::runtime_error("unsupported container version " + std::to_string(version));
  }
  return r.u8();
}

void write_chunks(Writer& w, const ChunkMatrix& m) {
  if (m.bp <= 8) {
    for (uint16_t v : m.data) w.u8(static_cast<uint8_t>(v));
  } else {
    for (uint16_t v : m.data) w.u16(v);
  }
}

void read_chunks(Reader& r, ChunkMatrix& m) {
  if (m.bp <= 8) {
    for (auto& v : m.data) v = r.u8();
  } else {
    for (auto& v : m.data) v = r.u16();
  }
}

void write_matrix_body(Writer& w, const BatMatPlan& plan) {
  w.u32(plan.mod.q);
  w.u8(static_cast<uint8_t>(plan.bp));
  w.u8(static_cast<uint8_t>(plan.domain));
  w.u8(static_cast<uint8_t>(plan.side));
  w.u8(static_cast<uint8_t>(plan.k));
  w.u64(plan.h);
  w.u64(plan.v);
  write_chunks(w, plan.dense);
}

BatMatPlan read_matrix_body(Reader& r) {
  BatMatPlan plan;
  plan.mod = make_modulus(r.u32());
  plan.bp = r.u8();
  plan.domain = static_cast<Domain>(r.u8());
  plan.side = static_cast<OperandSide>(r.u8());
  plan.k = r.u8();
  plan.h = r.u64();
  plan.v = r.u64();
  plan.dense = ChunkMatrix(plan.k * plan.h, plan.k * plan.v, plan.bp);
  read_chunks(r, plan.dense);
  return plan;
}

void write_residue_matrix(Writer& w, const ResidueMatrix& m) {
  w.u64(m.rows);
  w.u64(m.cols);
  for (uint32_t v : m.data) w.u32(v);
}

ResidueMatrix read_residue_matrix(Reader& r) {
  size_t rows = r.u64();
  size_t cols = r.u64();
  ResidueMatrix m(rows, cols);
  for (auto& v : m.data) v = r.u32();
  return m;
}

}  // namespace

std::vector<uint8_t> save_bat_scalar(const BatScalarMatrix& m) {
  Writer w;
  write_header(w, kScalarRecord);
  w.u32(m.mod.q);
  w.u8(static_cast<uint8_t>(m.bp));
  w.u8(static_cast<uint8_t>(m.domain));
  w.u8(0);  // side: scalar matrices always act from the left
  w.u8(static_cast<uint8_t>(m.k));
  w.u32(m.source);
  write_chunks(w, m.m);
  return w.take();
}

BatScalarMatrix load_bat_scalar(const std::vector<uint8_t>& bytes) {
  Reader r(bytes);
  if (read_header(r, kPlanMagic) != kScalarRecord) {
    throw std::runtime_error("container does not hold a scalar record");
  }
  BatScalarMatrix m;
  m.mod = make_modulus(r.u32());
  m.bp = r.u8();
  m.domain = static_cast<Domain>(r.u8());
  r.u8();
  m.k = r.u8();
  m.source = r.u32();
  m.m = ChunkMatrix(m.k, m.k, m.bp);
  read_chunks(r, m.m);
  if (!r.done()) throw std::runtime_error("trailing bytes in scalar record");
  return m;
}

std::vector<uint8_t> save_bat_plan(const BatMatPlan& plan) {
  Writer w;
  write_header(w, kMatrixRecord);
  write_matrix_body(w, plan);
  return w.take();
}

BatMatPlan load_bat_plan(const std::vector<uint8_t>& bytes) {
  Reader r(bytes);
  if (read_header(r, kPlanMagic) != kMatrixRecord) {
    throw std::runtime_error("container does not hold a matrix record");
  }
  BatMatPlan plan = read_matrix_body(r);
  if (!r.done()) throw std::runtime_error("trailing bytes in matrix record");
  return plan;
}

std::vector<uint8_t> save_ntt_plan(const NttPlan& plan) {
  Writer w;
  write_header(w, kNttRecord);
  w.u32(plan.mod.q);
  w.u8(static_cast<uint8_t>(plan.bp));
  w.u8(static_cast<uint8_t>(plan.strategy));
  w.u8(static_cast<uint8_t>(plan.domain));
  w.u8(static_cast<uint8_t>(plan.k));
  w.u64(plan.n);
  w.u64(plan.r);
  w.u64(plan.c);
  w.u32(plan.psi);
  write_matrix_body(w, plan.left);
  write_matrix_body(w, plan.right);
  write_matrix_body(w, plan.inv_right);
  write_matrix_body(w, plan.inv_left);
  write_residue_matrix(w, plan.mid);
  write_residue_matrix(w, plan.inv_mid);
  w.u64(plan.mid_shoup.size());
  for (uint64_t v : plan.mid_shoup) w.u64(v);
  w.u64(plan.inv_mid_shoup.size());
  for (uint64_t v : plan.inv_mid_shoup) w.u64(v);
  return w.take();
}

NttPlan load_ntt_plan(const std::vector<uint8_t>& bytes) {
  Reader r(bytes);
  if (read_header(r, kPlanMagic) != kNttRecord) {
    throw std::runtime_error("container does not hold an NTT plan record");
  }
  NttPlan plan;
  plan.mod = make_modulus(r.u32());
  plan.bp = r.u8();
  plan.strategy = static_cast<Reduction>(r.u8());
  plan.domain = static_cast<Domain>(r.u8());
  plan.k = r.u8();
  plan.n = r.u64();
  plan.r = r.u64();
  plan.c = r.u64();
  plan.psi = r.u32();
  plan.left = read_matrix_body(r);
  plan.right = read_matrix_body(r);
  plan.inv_right = read_matrix_body(r);
  plan.inv_left = read_matrix_body(r);
  plan.mid = read_residue_matrix(r);
  plan.inv_mid = read_residue_matrix(r);
  plan.mid_shoup.resize(r.u64());
  for (auto& v : plan.mid_shoup) v = r.u64();
  plan.inv_mid_shoup.resize(r.u64());
  for (auto& v : plan.inv_mid_shoup) v = r.u64();
  if (!r.done()) throw std::runtime_error("trailing bytes in NTT plan record");
  return plan;
}

uint64_t rns_basis_digest(const RnsBasis& basis) {
  uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  mix(static_cast<uint32_t>(basis.limb_count()));
  for (const Modulus& m : basis.moduli) mix(m.q);
  return h;
}

std::vector<uint8_t> save_rns_poly(const RnsPoly& p) {
  Writer w;
  w.raw(kPolyMagic, 4);
  w.u16(kPlanFormatVersion);
  w.u64(rns_basis_digest(*p.basis));
  w.u32(static_cast<uint32_t>(p.limb_count()));
  w.u64(p.n);
  for (uint32_t v : p.limbs) w.u32(v);
  return w.take();
}

RnsPoly load_rns_poly(const std::vector<uint8_t>& bytes, std::shared_ptr<const RnsBasis> basis) {
  Reader r(bytes);
  char m[4];
  r.raw(m, 4);
  if (std::memcmp(m, kPolyMagic, 4) != 0) throw std::runtime_error("bad polynomial magic");
  if (r.u16() != kPlanFormatVersion) throw std::runtime_error("unsupported polynomial version");
  uint64_t digest = r.u64();
  if (digest != rns_basis_digest(*basis)) {
    throw std::runtime_error("polynomial basis digest does not match the supplied basis");
  }
  uint32_t l = r.u32();
  if (l != basis->limb_count()) throw std::runtime_error("limb count mismatch");
  RnsPoly p = make_zero_poly(std::move(basis), r.u64());
  for (auto& v : p.limbs) v = r.u32();
  if (!r.done()) throw std::runtime_error("trailing bytes in polynomial record");
  return p;
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("short write: " + path);
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::streamsize size = f.tellg();
  f.seekg(0);
  std::vector<uint8_t> bytes(static_cast<size_t>(size));
  f.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!f) throw std::runtime_error("short read: " + path);
  return bytes;
}

}  // namespace cross
