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

#include "bfb/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft_engine.hpp"

namespace bfb {

namespace {
constexpr double kPi = std::numbers::pi;

Parity flip(Parity p) {
  return p == Parity::EvenInZ ? Parity::OddInZ : Parity::EvenInZ;
}
}  // namespace

GridPtr build_grid(int nx, int ny, int nz, double L, double dealias_fraction) {
  auto check_dim = [](int n, const char* name) {
    if (n < 4 || n % 2 != 0)
      throw std::invalid_argument(std::string("grid dimension ") + name +
                                  " must be even and >= 4, got " +
                                  std::to_string(n));
  };
  check_dim(nx, "nx");
  check_dim(ny, "ny");
  check_dim(nz, "nz");
  if (!(L > 0.0)) throw std::invalid_argument("horizontal period L must be > 0");
  if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
    throw std::invalid_argument("dealias_fraction must lie in (0,1]");

  auto g = std::make_shared<Grid>();
  g->nx = nx;
  g->ny = ny;
  g->nz = nz;
  g->L = L;
  g->dealias_fraction = dealias_fraction;
  g->mx_keep = static_cast<int>(std::floor(dealias_fraction * nx / 2));
  g->my_keep = static_cast<int>(std::floor(dealias_fraction * ny / 2));
  g->mz_keep = static_cast<int>(std::floor(dealias_fraction * nz / 2));
  g->kx.resize(nx);
  g->ky.resize(ny);
  g->kz.resize(nz);
  for (int j = 0; j < nx; ++j) g->kx[j] = 2.0 * kPi * Grid::mode_of(j, nx) / L;
  for (int j = 0; j < ny; ++j) g->ky[j] = 2.0 * kPi * Grid::mode_of(j, ny) / L;
  for (int j = 0; j < nz; ++j) g->kz[j] = kPi * Grid::mode_of(j, nz);
  return g;
}

double compute_lambda(const Grid& grid) {
  const double kh = 2.0 * kPi / grid.L;
  return std::min(kh * kh, kPi * kPi);
}

VecField make_velocity(const GridPtr& grid) {
  return {SpectralField(grid, Parity::EvenInZ),
          SpectralField(grid, Parity::EvenInZ),
          SpectralField(grid, Parity::OddInZ)};
}

SpectralField forward_transform(const std::vector<double>& physical,
                                Parity parity, const GridPtr& grid) {
  if (static_cast<int>(physical.size()) != grid->size())
    throw std::invalid_argument("forward_transform: physical array shape mismatch");
  SpectralField f(grid, parity);
  FftEngine::get(*grid).forward(physical.data(), f.c.data());
  return f;
}

std::vector<double> inverse_transform(const SpectralField& f) {
  std::vector<double> phys(f.grid->size());
  const double max_imag = FftEngine::get(*f.grid).inverse(f.c.data(), phys.data());
  double max_abs = 0.0;
  for (double v : phys) max_abs = std::max(max_abs, std::abs(v));
  const double ref = std::max(max_abs, 1e-300);
  if (max_imag > 1e-12 * std::max(ref, 1.0))
    throw std::runtime_error(
        "inverse_transform: imaginary residue " + std::to_string(max_imag) +
        " exceeds tolerance (broken Hermitian symmetry)");
  return phys;
}

SpectralField parity_project(const SpectralField& f, Parity parity) {
  SpectralField out = f;
  out.parity = parity;
  parity_project_inplace(out);
  return out;
}

void parity_project_inplace(SpectralField& f) {
  const Grid& g = *f.grid;
  const double sign = f.parity == Parity::OddInZ ? -1.0 : 1.0;
  for (int jx = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy) {
      Complex* col = &f.c[g.index(jx, jy, 0)];
      for (int jz = 1; jz < g.nz / 2; ++jz) {
        const int jm = g.nz - jz;
        const Complex a = col[jz], b = col[jm];
        col[jz] = 0.5 * (a + sign * b);
        col[jm] = 0.5 * (b + sign * a);
      }
      // self-paired planes q = 0 and q = nz/2
      if (f.parity == Parity::OddInZ) {
        col[0] = 0.0;
        col[g.nz / 2] = 0.0;
      }
    }
}

SpectralField deriv(const SpectralField& f, int axis) {
  const Grid& g = *f.grid;
  SpectralField out(f.grid, axis == 2 ? flip(f.parity) : f.parity);
  const Complex I{0.0, 1.0};
  for (int jx = 0, i = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        const double k = axis == 0 ? g.kx[jx] : axis == 1 ? g.ky[jy] : g.kz[jz];
        out.c[i] = I * k * f.c[i];
      }
  return out;
}

std::array<SpectralField, 3> gradient(const SpectralField& f) {
  return {deriv(f, 0), deriv(f, 1), deriv(f, 2)};
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = *f.grid;
  SpectralField out(f.grid, f.parity);
  for (int jx = 0, i = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        const double k2 = g.kx[jx] * g.kx[jx] + g.ky[jy] * g.ky[jy] +
                          g.kz[jz] * g.kz[jz];
        out.c[i] = -k2 * f.c[i];
      }
  return out;
}

SpectralField inverse_laplacian_zero_mean(const SpectralField& f) {
  const Grid& g = *f.grid;
  double sum2 = 0.0;
  for (const Complex& v : f.c) sum2 += std::norm(v);
  const double l2 = std::sqrt(sum2);
  if (std::abs(f.c[0]) > 1e-12 * std::max(l2, 1e-300))
    throw std::invalid_argument(
        "inverse_laplacian_zero_mean: nonzero mean mode");
  SpectralField out(f.grid, f.parity);
  for (int jx = 0, i = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        const double k2 = g.kx[jx] * g.kx[jx] + g.ky[jy] * g.ky[jy] +
                          g.kz[jz] * g.kz[jz];
        out.c[i] = k2 > 0.0 ? -f.c[i] / k2 : Complex{0.0, 0.0};
      }
  return out;
}

void leray_project_inplace(VecField& u) {
  const Grid& g = *u[0].grid;
  for (int jx = 0, i = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        const double kx = g.kx[jx], ky = g.ky[jy], kz = g.kz[jz];
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) continue;  // mean mode passes through
        const Complex kd =
            (kx * u[0].c[i] + ky * u[1].c[i] + kz * u[2].c[i]) / k2;
        u[0].c[i] -= kx * kd;
        u[1].c[i] -= ky * kd;
        u[2].c[i] -= kz * kd;
      }
}

VecField leray_project(const VecField& u) {
  VecField out = u;
  leray_project_inplace(out);
  return out;
}

void dealias_inplace(SpectralField& f) {
  const Grid& g = *f.grid;
  for (int jx = 0, i = 0; jx < g.nx; ++jx) {
    const bool kx_ok = std::abs(Grid::mode_of(jx, g.nx)) <= g.mx_keep;
    for (int jy = 0; jy < g.ny; ++jy) {
      const bool ky_ok = kx_ok && std::abs(Grid::mode_of(jy, g.ny)) <= g.my_keep;
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        if (!ky_ok || std::abs(Grid::mode_of(jz, g.nz)) > g.mz_keep)
          f.c[i] = 0.0;
      }
    }
  }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_inplace(out);
  return out;
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const Complex& v : f.c) s += std::norm(v);
  return std::sqrt(f.grid->volume() * s);
}

double l2_norm(const VecField& u) {
  double s = 0.0;
  for (const auto& comp : u)
    for (const Complex& v : comp.c) s += std::norm(v);
  return std::sqrt(u[0].grid->volume() * s);
}

namespace {
double h1_sum(const SpectralField& f) {
  const Grid& g = *f.grid;
  double s = 0.0;
  for (int jx = 0, i = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        const double k2 = g.kx[jx] * g.kx[jx] + g.ky[jy] * g.ky[jy] +
                          g.kz[jz] * g.kz[jz];
        s += k2 * std::norm(f.c[i]);
      }
  return s;
}
}  // namespace

double h1_seminorm(const SpectralField& f) {
  return std::sqrt(f.grid->volume() * h1_sum(f));
}

double h1_seminorm(const VecField& u) {
  double s = 0.0;
  for (const auto& comp : u) s += h1_sum(comp);
  return std::sqrt(u[0].grid->volume() * s);
}

double inner(const SpectralField& f, const SpectralField& g) {
  double s = 0.0;
  for (size_t i = 0; i < f.c.size(); ++i)
    s += f.c[i].real() * g.c[i].real() + f.c[i].imag() * g.c[i].imag();
  return f.grid->volume() * s;
}

double inner(const VecField& u, const VecField& v) {
  double s = 0.0;
  for (int d = 0; d < 3; ++d) s += inner(u[d], v[d]) / u[d].grid->volume();
  return u[0].grid->volume() * s;
}

SpectralField divergence(const VecField& u) {
  SpectralField out = deriv(u[0], 0);
  SpectralField dy = deriv(u[1], 1);
  SpectralField dz = deriv(u[2], 2);
  for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += dy.c[i] + dz.c[i];
  out.parity = Parity::EvenInZ;
  return out;
}

double max_velocity_magnitude(const VecField& u) {
  const auto p0 = inverse_transform(u[0]);
  const auto p1 = inverse_transform(u[1]);
  const auto p2 = inverse_transform(u[2]);
  double m2 = 0.0;
  for (size_t i = 0; i < p0.size(); ++i) {
    const double s = p0[i] * p0[i] + p1[i] * p1[i] + p2[i] * p2[i];
    m2 = std::max(m2, s);
  }
  return std::sqrt(m2);
}

void axpy(double a, const SpectralField& x, SpectralField& y) {
  for (size_t i = 0; i < y.c.size(); ++i) y.c[i] += a * x.c[i];
}

void scale(SpectralField& f, double a) {
  for (Complex& v : f.c) v *= a;
}

bool all_finite(const SpectralField& f) {
  for (const Complex& v : f.c)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace bfb
