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

#ifndef BFB_SPECTRAL_HPP
#define BFB_SPECTRAL_HPP

#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace bfb {

using Complex = std::complex<double>;

/// Parity of a scalar field with respect to z -> -z on the extended box.
enum class Parity { EvenInZ, OddInZ };

/// Uniform grid on Omega = [0,L]^2 x [-1,1).  z has period 2, so the
/// wavevectors are k = (2*pi*m/L, 2*pi*n/L, pi*q).
///
/// Coefficients are stored in DFT index order: storage index j in [0,n)
/// corresponds to the integer mode m = j for j <= n/2 and m = j - n
/// otherwise.  Physical sample points are x = L*jx/nx, y = L*jy/ny,
/// z = 2*jz/nz - 1.
struct Grid {
  int nx = 0, ny = 0, nz = 0;
  double L = 0.0;
  double dealias_fraction = 2.0 / 3.0;

  // Retained-mode bounds of the dealias mask, |m| <= mx_keep etc.
  int mx_keep = 0, my_keep = 0, mz_keep = 0;

  // Wavenumber tables per storage index.
  std::vector<double> kx, ky, kz;

  int size() const { return nx * ny * nz; }
  double volume() const { return 2.0 * L * L; }
  double cell_volume() const { return volume() / size(); }
  int index(int jx, int jy, int jz) const { return (jx * ny + jy) * nz + jz; }

  /// Integer mode for a storage index.
  static int mode_of(int j, int n) { return j <= n / 2 ? j : j - n; }

  bool mask(int jx, int jy, int jz) const {
    return std::abs(mode_of(jx, nx)) <= mx_keep &&
           std::abs(mode_of(jy, ny)) <= my_keep &&
           std::abs(mode_of(jz, nz)) <= mz_keep;
  }

  bool same_dims(const Grid& o) const {
    return nx == o.nx && ny == o.ny && nz == o.nz && L == o.L;
  }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws std::invalid_argument on odd/too-small dimensions or L <= 0.
GridPtr build_grid(int nx, int ny, int nz, double L,
                   double dealias_fraction = 2.0 / 3.0);

/// Smallest positive |k|^2 among retained modes: min((2*pi/L)^2, pi^2).
double compute_lambda(const Grid& grid);

/// Complex Fourier coefficients of a real field on the extended box.
struct SpectralField {
  GridPtr grid;
  Parity parity = Parity::EvenInZ;
  std::vector<Complex> c;

  SpectralField() = default;
  SpectralField(GridPtr g, Parity p)
      : grid(std::move(g)), parity(p), c(grid->size(), Complex{0.0, 0.0}) {}

  Complex& at(int jx, int jy, int jz) { return c[grid->index(jx, jy, jz)]; }
  const Complex& at(int jx, int jy, int jz) const {
    return c[grid->index(jx, jy, jz)];
  }
};

/// Divergence-free velocity triples carry parities (Even, Even, Odd).
using VecField = std::array<SpectralField, 3>;

VecField make_velocity(const GridPtr& grid);

// ---- transforms -----------------------------------------------------------

/// Physical samples (shape nx*ny*nz, index (jx*ny+jy)*nz+jz) -> coefficients.
SpectralField forward_transform(const std::vector<double>& physical,
                                Parity parity, const GridPtr& grid);

/// Coefficients -> physical samples.  Throws std::runtime_error if the
/// imaginary residue exceeds 1e-12 relative (corrupted Hermitian symmetry).
std::vector<double> inverse_transform(const SpectralField& f);

// ---- pointwise spectral operators ----------------------------------------

SpectralField parity_project(const SpectralField& f, Parity parity);
void parity_project_inplace(SpectralField& f);  // project onto f.parity

/// (d/dx, d/dy, d/dz).  The z derivative flips the parity tag.
std::array<SpectralField, 3> gradient(const SpectralField& f);
SpectralField deriv(const SpectralField& f, int axis);

SpectralField laplacian(const SpectralField& f);

/// Divides nonzero modes by -|k|^2; requires (0,0,0) coefficient ~ 0.
SpectralField inverse_laplacian_zero_mean(const SpectralField& f);

void leray_project_inplace(VecField& u);
VecField leray_project(const VecField& u);

SpectralField dealias(const SpectralField& f);
void dealias_inplace(SpectralField& f);

// ---- norms and inner products --------------------------------------------

/// L2 norm over Omega via Parseval: sqrt(|Omega| * sum |f_k|^2).
double l2_norm(const SpectralField& f);
double l2_norm(const VecField& u);

/// sqrt(|Omega| * sum |k|^2 |f_k|^2).
double h1_seminorm(const SpectralField& f);
double h1_seminorm(const VecField& u);

/// L2 inner product over Omega.
double inner(const SpectralField& f, const SpectralField& g);
double inner(const VecField& u, const VecField& v);

/// Divergence i*k.u, useful for checks.
SpectralField divergence(const VecField& u);

/// max pointwise |u| over the grid (transforms to physical space).
double max_velocity_magnitude(const VecField& u);

// ---- small helpers --------------------------------------------------------

void axpy(double a, const SpectralField& x, SpectralField& y);  // y += a*x
void scale(SpectralField& f, double a);
bool all_finite(const SpectralField& f);

}  // namespace bfb

#endif  // BFB_SPECTRAL_HPP
