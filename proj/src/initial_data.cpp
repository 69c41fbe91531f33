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

#include "bfb/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "bfb/rng.hpp"

namespace bfb {

namespace {

// white noise -> band-limit -> parity projection gives a smooth random
// field with exact symmetry and Hermitian coefficients
SpectralField random_band_field(const GridPtr& grid, Parity parity,
                                unsigned long long seed, int max_mode,
                                unsigned long long stream) {
  const Grid& g = *grid;
  auto rng = make_rng(seed, stream);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> phys(g.size());
  for (double& v : phys) v = dist(rng);
  SpectralField f = forward_transform(phys, parity, grid);
  for (int jx = 0, i = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        if (std::abs(Grid::mode_of(jx, g.nx)) > max_mode ||
            std::abs(Grid::mode_of(jy, g.ny)) > max_mode ||
            std::abs(Grid::mode_of(jz, g.nz)) > max_mode)
          f.c[i] = 0.0;
      }
  f.c[0] = 0.0;  // zero mean
  parity_project_inplace(f);
  dealias_inplace(f);
  return f;
}

void normalize_l2(SpectralField& f) {
  const double n = l2_norm(f);
  if (n == 0.0) throw std::runtime_error("degenerate random field");
  scale(f, 1.0 / n);
}

}  // namespace

SpectralField random_odd_field(const GridPtr& grid, unsigned long long seed,
                               int max_mode) {
  SpectralField f = random_band_field(grid, Parity::OddInZ, seed, max_mode, 1);
  normalize_l2(f);
  return f;
}

SpectralField random_even_field(const GridPtr& grid, unsigned long long seed,
                                int max_mode) {
  SpectralField f = random_band_field(grid, Parity::EvenInZ, seed, max_mode, 2);
  normalize_l2(f);
  return f;
}

VecField random_velocity(const GridPtr& grid, unsigned long long seed,
                         int max_mode) {
  VecField u = {random_band_field(grid, Parity::EvenInZ, seed, max_mode, 3),
                random_band_field(grid, Parity::EvenInZ, seed, max_mode, 4),
                random_band_field(grid, Parity::OddInZ, seed, max_mode, 5)};
  leray_project_inplace(u);
  const double n = l2_norm(u);
  if (n == 0.0) throw std::runtime_error("degenerate random velocity");
  for (auto& comp : u) scale(comp, 1.0 / n);
  return u;
}

State random_state(const GridPtr& grid, double energy, unsigned long long seed,
                   int max_mode, double theta_energy_fraction) {
  if (!(energy >= 0.0)) throw std::invalid_argument("energy must be >= 0");
  State s = State::zero(grid);
  if (energy == 0.0) return s;

  s.u = random_velocity(grid, seed, max_mode);
  s.theta = random_odd_field(grid, seed, max_mode);
  double e_theta = energy * theta_energy_fraction;
  scale(s.theta, std::sqrt(e_theta));

  // shrink theta until T = theta + (1-z) fits in [0,1] at the half-domain
  // sample points, with a little slack
  const Grid& g = *grid;
  const auto phys = inverse_transform(s.theta);
  double allowed = 1.0;
  for (int jx = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = g.nz / 2; jz < g.nz; ++jz) {
        const double z = 2.0 * jz / g.nz - 1.0;
        const double th = phys[g.index(jx, jy, jz)];
        if (th > 0.0 && z > 0.0) allowed = std::min(allowed, z / th);
        if (th < 0.0 && z < 1.0) allowed = std::min(allowed, (z - 1.0) / th);
      }
  if (allowed < 1.0) {
    const double shrink = 0.9 * allowed;
    scale(s.theta, shrink);
    e_theta *= shrink * shrink;
  }
  const double e_u = energy - e_theta;
  for (auto& comp : s.u) scale(comp, std::sqrt(e_u));
  return s;
}

}  // namespace bfb
