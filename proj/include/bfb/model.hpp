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

#ifndef BFB_MODEL_HPP
#define BFB_MODEL_HPP

#include <functional>

#include "bfb/spectral.hpp"

namespace bfb {

/// Model constants.  lambda is derived from the grid via compute_lambda.
struct PhysicalParams {
  double nu = 1.0;     // kinematic viscosity, > 0
  double kappa = 1.0;  // thermal diffusivity, > 0
  double a = 1.0;      // Forchheimer coefficient, > 0
  double alpha = 2.0;  // damping exponent, >= 0
  double L = 1.0;      // horizontal period
  double lambda = 0.0;

  static PhysicalParams make(double nu, double kappa, double a, double alpha,
                             const Grid& grid);
  void validate() const;  // throws std::invalid_argument
};

/// Velocity (parities Even, Even, Odd) plus temperature fluctuation
/// (OddInZ), both divergence-free / zero-mean by construction.
struct State {
  VecField u;
  SpectralField theta;
  double time = 0.0;

  static State zero(const GridPtr& grid);
  const GridPtr& grid() const { return theta.grid; }
};

struct Tendency {
  VecField du;
  SpectralField dtheta;
};

// ---- conduction-state change of variables ---------------------------------

/// T is sampled on the half domain z in [0,1]: shape (nx, ny, nz/2+1) with
/// z_k = 2k/nz, index (jx*ny+jy)*(nz/2+1)+k.  Checks T(.,0)=1 and T(.,1)=0
/// to 1e-8, subtracts the conduction profile 1-z and odd-extends.
SpectralField conduction_shift(const std::vector<double>& T_half,
                               const GridPtr& grid);

/// Inverse: reconstruct T = theta + (1-z) on the half domain.
std::vector<double> conduction_unshift(const SpectralField& theta);

// ---- nonlinear terms ------------------------------------------------------

/// B0(u, v) = P (u . grad) v, dealiased and Leray-projected.
VecField advect_velocity(const VecField& u, const VecField& v);

/// Same without the Leray projection (pressure recovery needs it).
VecField advect_velocity_unprojected(const VecField& u, const VecField& v);

/// B1(u, theta) = (u . grad) theta, dealiased.
SpectralField advect_scalar(const VecField& u, const SpectralField& theta);

/// a * |u|^(2 alpha) u, pointwise in physical space, dealiased once.
/// |u|^(2 alpha) is computed as (u.u)^alpha with 0^alpha := 0.
VecField forchheimer(const VecField& u, double a, double alpha);

// ---- tendencies -----------------------------------------------------------

/// Full right-hand side of the truncated system:
///   du     = -nu A0 u - B0(u,u) - P(a|u|^{2a}u) + P(theta e3)
///   dtheta = -kappa A1 theta - B1(u,theta) + u3
Tendency tendency_reference(const State& s, const PhysicalParams& p);

/// Everything except the diffusion terms (the integrator handles those
/// exactly per mode).
Tendency explicit_tendency_reference(const State& s, const PhysicalParams& p);

/// Adds the diffusion contribution of a state to a tendency.
void add_diffusion(const State& s, const PhysicalParams& p, Tendency& t);

/// Nudged system: the horizontal momentum equations gain
/// mu * P(obs - I_h(v_perp)) where obs = I_h(u_perp) comes from the
/// reference run.  interpolant maps an EvenInZ field to its observation.
using Interpolant = std::function<SpectralField(const SpectralField&)>;

Tendency tendency_nudged(const State& v,
                         const std::array<SpectralField, 2>& observed_u_perp,
                         const PhysicalParams& p, double mu,
                         const Interpolant& interpolant);
Tendency explicit_tendency_nudged(
    const State& v, const std::array<SpectralField, 2>& observed_u_perp,
    const PhysicalParams& p, double mu, const Interpolant& interpolant);

/// Spectral pressure recovery: solves
///   Delta p = div(-(u.grad)u - a|u|^{2a}u + theta e3)
SpectralField recover_pressure(const State& s, const PhysicalParams& p);

}  // namespace bfb

#endif  // BFB_MODEL_HPP
