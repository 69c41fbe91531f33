// Copyright 2026 The bfbconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bfb/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bfb {

namespace {

constexpr char kCsvHeader[] =
    "time,u_H0,theta_H1,u_V0dot,theta_V1,u_L2a2,theta_Hm1,"
    "e_H0,e_Hm1,e_V0dot,dt";

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt17(*v) : std::string();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_d(const std::string& s) {
  size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::runtime_error("bad number '" + s + "'");
  return v;
}

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_d(s);
}

}  // namespace

void write_diagnostics(const std::vector<DiagnosticsRecord>& records,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << fmt17(r.time) << ',' << fmt17(r.norms.u_H0) << ','
        << fmt17(r.norms.theta_H1) << ',' << fmt17(r.norms.u_V0dot) << ','
        << fmt17(r.norms.theta_V1) << ',' << fmt17(r.norms.u_L2a2) << ','
        << fmt17(r.norms.theta_Hm1) << ',' << fmt_opt(r.e_H0) << ','
        << fmt_opt(r.e_Hm1) << ',' << fmt_opt(r.e_V0dot) << ','
        << fmt17(r.dt) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<DiagnosticsRecord> read_diagnostics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty diagnostics file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw std::runtime_error("unexpected diagnostics header in '" + path + "'");
  std::vector<DiagnosticsRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split_csv(line);
    if (cols.size() != 11)
      throw std::runtime_error("bad diagnostics row in '" + path + "'");
    DiagnosticsRecord r;
    r.time = parse_d(cols[0]);
    r.norms.u_H0 = parse_d(cols[1]);
    r.norms.theta_H1 = parse_d(cols[2]);
    r.norms.u_V0dot = parse_d(cols[3]);
    r.norms.theta_V1 = parse_d(cols[4]);
    r.norms.u_L2a2 = parse_d(cols[5]);
    r.norms.theta_Hm1 = parse_d(cols[6]);
    r.e_H0 = parse_opt(cols[7]);
    r.e_Hm1 = parse_opt(cols[8]);
    r.e_V0dot = parse_opt(cols[9]);
    r.dt = parse_d(cols[10]);
    records.push_back(r);
  }
  return records;
}

// ---- checkpoint -----------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'B', 'F', 'B', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  const std::uint64_t bits = get_u64(in);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void put_field(std::ostream& out, const SpectralField& f) {
  for (const Complex& c : f.c) {
    put_f64(out, c.real());
    put_f64(out, c.imag());
  }
}

void get_field(std::istream& in, SpectralField& f) {
  for (Complex& c : f.c) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    c = Complex(re, im);
  }
}

CheckpointHeader read_header(std::istream& in, const std::string& path) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("'" + path + "' is not a checkpoint file");
  CheckpointHeader h;
  h.version = get_u32(in);
  if (h.version != kVersion)
    throw std::runtime_error("unsupported checkpoint version in '" + path +
                             "'");
  h.nx = static_cast<int>(get_u32(in));
  h.ny = static_cast<int>(get_u32(in));
  h.nz = static_cast<int>(get_u32(in));
  h.L = get_f64(in);
  h.dealias_fraction = get_f64(in);
  // stored parities for (u1, u2, u3, theta); fixed by the model, so a
  // mismatch means corruption
  const std::uint32_t parities = get_u32(in);
  if (parities != 0x01001100u)
    throw std::runtime_error("corrupt parity record in '" + path + "'");
  h.time = get_f64(in);
  h.params_hash = get_u64(in);
  if (!in) throw std::runtime_error("truncated checkpoint header in '" + path +
                                    "'");
  if (h.nx < 4 || h.nx % 2 || h.ny < 4 || h.ny % 2 || h.nz < 4 || h.nz % 2 ||
      !(h.L > 0.0) || !(h.dealias_fraction > 0.0) ||
      !(h.dealias_fraction <= 1.0))
    throw std::runtime_error("invalid grid record in '" + path + "'");
  return h;
}

}  // namespace

unsigned long long params_hash(const PhysicalParams& p) {
  // FNV-1a over the raw parameter bytes
  const double vals[5] = {p.nu, p.kappa, p.a, p.alpha, p.L};
  std::uint64_t h = 1469598103934665603ull;
  const unsigned char* bytes = reinterpret_cast<const unsigned char*>(vals);
  for (size_t i = 0; i < sizeof(vals); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

void write_checkpoint(const State& s, const PhysicalParams& p,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const Grid& g = *s.grid();
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(g.nx));
  put_u32(out, static_cast<std::uint32_t>(g.ny));
  put_u32(out, static_cast<std::uint32_t>(g.nz));
  put_f64(out, g.L);
  put_f64(out, g.dealias_fraction);
  put_u32(out, 0x01001100u);  // parity tags: even, even, odd, odd
  put_f64(out, s.time);
  put_u64(out, params_hash(p));
  for (const auto& comp : s.u) put_field(out, comp);
  put_field(out, s.theta);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

CheckpointHeader read_checkpoint_header(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_header(in, path);
}

State read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  const CheckpointHeader h = read_header(in, path);
  GridPtr grid = build_grid(h.nx, h.ny, h.nz, h.L, h.dealias_fraction);
  State s = State::zero(grid);
  s.time = h.time;
  for (auto& comp : s.u) get_field(in, comp);
  get_field(in, s.theta);
  if (!in) throw std::runtime_error("truncated checkpoint payload in '" + path +
                                    "'");
  return s;
}

}  // namespace bfb
