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

#ifndef BFB_IO_HPP
#define BFB_IO_HPP

#include <string>
#include <vector>

#include "bfb/diagnostics.hpp"

namespace bfb {

/// CSV with fixed header
///   time,u_H0,theta_H1,u_V0dot,theta_V1,u_L2a2,theta_Hm1,e_H0,e_Hm1,e_V0dot,dt
/// Values carry 17 significant digits so the round trip is exact; the
/// assimilation columns stay empty for reference runs.
void write_diagnostics(const std::vector<DiagnosticsRecord>& records,
                       const std::string& path);
std::vector<DiagnosticsRecord> read_diagnostics(const std::string& path);

/// Binary state snapshot.  Header: magic "BFB1", version, grid dims,
/// L, dealias fraction, field parities, time, params hash; payload:
/// little-endian f64 pairs (re, im) in m-major (m, n, q) storage order
/// for u1, u2, u3, theta.
struct CheckpointHeader {
  int nx = 0, ny = 0, nz = 0;
  double L = 0.0;
  double dealias_fraction = 0.0;
  double time = 0.0;
  unsigned long long params_hash = 0;
  unsigned version = 0;
};

unsigned long long params_hash(const PhysicalParams& p);

void write_checkpoint(const State& s, const PhysicalParams& p,
                      const std::string& path);
CheckpointHeader read_checkpoint_header(const std::string& path);
State read_checkpoint(const std::string& path);

}  // namespace bfb

#endif  // BFB_IO_HPP
