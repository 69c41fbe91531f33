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

#include "bfb/model.hpp"

#include <cmath>
#include <stdexcept>

namespace bfb {

PhysicalParams PhysicalParams::make(double nu, double kappa, double a,
                                    double alpha, const Grid& grid) {
  PhysicalParams p;
  p.nu = nu;
  p.kappa = kappa;
  p.a = a;
  p.alpha = alpha;
  p.L = grid.L;
  p.lambda = compute_lambda(grid);
  p.validate();
  return p;
}

void PhysicalParams::validate() const {
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
  if (!(a > 0.0)) throw std::invalid_argument("a must be > 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(L > 0.0)) throw std::invalid_argument("L must be > 0");
}

State State::zero(const GridPtr& grid) {
  State s;
  s.u = make_velocity(grid);
  s.theta = SpectralField(grid, Parity::OddInZ);
  s.time = 0.0;
  return s;
}

// ---- conduction shift -----------------------------------------------------

SpectralField conduction_shift(const std::vector<double>& T_half,
                               const GridPtr& grid) {
  const Grid& g = *grid;
  const int nzh = g.nz / 2 + 1;
  if (static_cast<int>(T_half.size()) != g.nx * g.ny * nzh)
    throw std::invalid_argument("conduction_shift: half-domain shape mismatch");
  auto half = [&](int jx, int jy, int k) {
    return T_half[(jx * g.ny + jy) * nzh + k];
  };
  for (int jx = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy) {
      if (std::abs(half(jx, jy, 0) - 1.0) > 1e-8 ||
          std::abs(half(jx, jy, g.nz / 2)) > 1e-8)
        throw std::invalid_argument(
            "conduction_shift: boundary values deviate from T(0)=1, T(1)=0");
    }
  // theta = T - (1-z) on [0,1], odd extension to [-1,0)
  std::vector<double> phys(g.size(), 0.0);
  for (int jx = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz) {
        const double z = 2.0 * jz / g.nz - 1.0;
        double v;
        if (jz >= g.nz / 2) {
          const int k = jz - g.nz / 2;
          v = half(jx, jy, k) - (1.0 - z);
        } else if (jz == 0) {
          v = 0.0;  // z = -1, pinned by odd periodicity
        } else {
          const int k = g.nz / 2 - jz;  // mirror of -z
          v = -(half(jx, jy, k) - (1.0 + z));  // 1-(-z) = 1+z
        }
        phys[g.index(jx, jy, jz)] = v;
      }
  SpectralField theta = forward_transform(phys, Parity::OddInZ, grid);
  parity_project_inplace(theta);
  return theta;
}

std::vector<double> conduction_unshift(const SpectralField& theta) {
  const Grid& g = *theta.grid;
  const int nzh = g.nz / 2 + 1;
  const auto phys = inverse_transform(theta);
  std::vector<double> T(g.nx * g.ny * nzh);
  for (int jx = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int k = 0; k < nzh; ++k) {
        const double z = 2.0 * k / g.nz;
        // z = 1 wraps to the j = 0 sample where theta vanishes by parity
        const int jz = (g.nz / 2 + k) % g.nz;
        T[(jx * g.ny + jy) * nzh + k] = phys[g.index(jx, jy, jz)] + (1.0 - z);
      }
  return T;
}

// ---- nonlinear terms ------------------------------------------------------

namespace {

// (u . grad) v pseudo-spectrally, dealiased, no projection.
VecField convect(const VecField& u, const VecField& v) {
  const GridPtr& grid = u[0].grid;
  const int n = grid->size();
  std::array<std::vector<double>, 3> up;
  for (int d = 0; d < 3; ++d) up[d] = inverse_transform(u[d]);

  VecField out;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> acc(n, 0.0);
    for (int j = 0; j < 3; ++j) {
      const auto dv = inverse_transform(deriv(v[i], j));
      for (int m = 0; m < n; ++m) acc[m] += up[j][m] * dv[m];
    }
    out[i] = forward_transform(acc, v[i].parity, grid);
    dealias_inplace(out[i]);
    parity_project_inplace(out[i]);
  }
  return out;
}

}  // namespace

VecField advect_velocity_unprojected(const VecField& u, const VecField& v) {
  return convect(u, v);
}

VecField advect_velocity(const VecField& u, const VecField& v) {
  VecField out = convect(u, v);
  leray_project_inplace(out);
  return out;
}

SpectralField advect_scalar(const VecField& u, const SpectralField& theta) {
  const GridPtr& grid = theta.grid;
  const int n = grid->size();
  std::vector<double> acc(n, 0.0);
  for (int j = 0; j < 3; ++j) {
    const auto uj = inverse_transform(u[j]);
    const auto dth = inverse_transform(deriv(theta, j));
    for (int m = 0; m < n; ++m) acc[m] += uj[m] * dth[m];
  }
  SpectralField out = forward_transform(acc, theta.parity, grid);
  dealias_inplace(out);
  parity_project_inplace(out);
  return out;
}

VecField forchheimer(const VecField& u, double a, double alpha) {
  const GridPtr& grid = u[0].grid;
  const int n = grid->size();
  std::array<std::vector<double>, 3> up;
  for (int d = 0; d < 3; ++d) up[d] = inverse_transform(u[d]);
  std::vector<double> mag(n);
  for (int m = 0; m < n; ++m) {
    const double s = up[0][m] * up[0][m] + up[1][m] * up[1][m] +
                     up[2][m] * up[2][m];
    mag[m] = s > 0.0 ? a * std::pow(s, alpha) : 0.0;  // 0^alpha := 0
  }
  VecField out;
  for (int d = 0; d < 3; ++d) {
    std::vector<double> prod(n);
    for (int m = 0; m < n; ++m) prod[m] = mag[m] * up[d][m];
    out[d] = forward_transform(prod, u[d].parity, grid);
    dealias_inplace(out[d]);
    parity_project_inplace(out[d]);
  }
  return out;
}

// ---- tendencies -----------------------------------------------------------

Tendency explicit_tendency_reference(const State& s, const PhysicalParams& p) {
  const GridPtr& grid = s.grid();
  Tendency t;
  t.du = advect_velocity(s.u, s.u);
  for (auto& comp : t.du) scale(comp, -1.0);

  // buoyancy minus damping, one Leray projection for both
  VecField g = forchheimer(s.u, p.a, p.alpha);
  for (auto& comp : g) scale(comp, -1.0);
  axpy(1.0, s.theta, g[2]);
  leray_project_inplace(g);
  for (int d = 0; d < 3; ++d) axpy(1.0, g[d], t.du[d]);

  t.dtheta = advect_scalar(s.u, s.theta);
  scale(t.dtheta, -1.0);
  axpy(1.0, s.u[2], t.dtheta);
  parity_project_inplace(t.dtheta);
  return t;
}

void add_diffusion(const State& s, const PhysicalParams& p, Tendency& t) {
  for (int d = 0; d < 3; ++d) {
    SpectralField lap = laplacian(s.u[d]);
    axpy(p.nu, lap, t.du[d]);
  }
  SpectralField lap = laplacian(s.theta);
  axpy(p.kappa, lap, t.dtheta);
}

Tendency tendency_reference(const State& s, const PhysicalParams& p) {
  Tendency t = explicit_tendency_reference(s, p);
  add_diffusion(s, p, t);
  return t;
}

Tendency explicit_tendency_nudged(
    const State& v, const std::array<SpectralField, 2>& observed_u_perp,
    const PhysicalParams& p, double mu, const Interpolant& interpolant) {
  if (!(mu > 0.0)) throw std::invalid_argument("nudging parameter mu must be > 0");
  Tendency t = explicit_tendency_reference(v, p);
  VecField nudge = {interpolant(v.u[0]), interpolant(v.u[1]),
                    SpectralField(v.grid(), Parity::OddInZ)};
  for (int d = 0; d < 2; ++d) {
    scale(nudge[d], -1.0);
    axpy(1.0, observed_u_perp[d], nudge[d]);
    scale(nudge[d], mu);
  }
  leray_project_inplace(nudge);
  for (int d = 0; d < 3; ++d) axpy(1.0, nudge[d], t.du[d]);
  return t;
}

Tendency tendency_nudged(const State& v,
                         const std::array<SpectralField, 2>& observed_u_perp,
                         const PhysicalParams& p, double mu,
                         const Interpolant& interpolant) {
  Tendency t = explicit_tendency_nudged(v, observed_u_perp, p, mu, interpolant);
  add_diffusion(v, p, t);
  return t;
}

SpectralField recover_pressure(const State& s, const PhysicalParams& p) {
  VecField rhs = advect_velocity_unprojected(s.u, s.u);
  for (auto& comp : rhs) scale(comp, -1.0);
  VecField f = forchheimer(s.u, p.a, p.alpha);
  for (int d = 0; d < 3; ++d) axpy(-1.0, f[d], rhs[d]);
  axpy(1.0, s.theta, rhs[2]);
  SpectralField div = divergence(rhs);
  SpectralField pr = inverse_laplacian_zero_mean(div);
  pr.parity = Parity::EvenInZ;
  return pr;
}

}  // namespace bfb
