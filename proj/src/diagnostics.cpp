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

#include "bfb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bfb/rng.hpp"

namespace bfb {

Norms compute_norms(const State& s, const PhysicalParams& p) {
  Norms n;
  n.u_H0 = l2_norm(s.u);
  n.theta_H1 = l2_norm(s.theta);
  n.u_V0dot = h1_seminorm(s.u);
  n.theta_V1 = h1_seminorm(s.theta);

  // L^{2 alpha + 2} via physical quadrature (spectrally accurate on the
  // trigonometric class)
  const Grid& g = *s.grid();
  const auto u0 = inverse_transform(s.u[0]);
  const auto u1 = inverse_transform(s.u[1]);
  const auto u2 = inverse_transform(s.u[2]);
  const double q = p.alpha + 1.0;  // |u|^{2 alpha + 2} = (u.u)^{alpha+1}
  double acc = 0.0;
  for (size_t i = 0; i < u0.size(); ++i) {
    const double m2 = u0[i] * u0[i] + u1[i] * u1[i] + u2[i] * u2[i];
    acc += m2 > 0.0 ? std::pow(m2, q) : 0.0;
  }
  acc *= g.cell_volume();
  n.u_L2a2 = acc > 0.0 ? std::pow(acc, 1.0 / (2.0 * p.alpha + 2.0)) : 0.0;

  // H^{-1} via the inverse Laplacian in spectral space
  double hm1 = 0.0;
  for (int jx = 0, i = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        const double k2 = g.kx[jx] * g.kx[jx] + g.ky[jy] * g.ky[jy] +
                          g.kz[jz] * g.kz[jz];
        if (k2 > 0.0) hm1 += std::norm(s.theta.c[i]) / k2;
      }
  n.theta_Hm1 = std::sqrt(g.volume() * hm1);
  return n;
}

BoundSet compute_bounds(const PhysicalParams& p) {
  p.validate();
  if (!(p.lambda > 0.0))
    throw std::invalid_argument("compute_bounds: lambda not set");
  BoundSet b;
  const double akl = p.a * p.kappa * p.lambda;
  const double base = 2.0 * akl / (akl + 32.0);
  const double L2 = p.L * p.L;
  if (p.alpha > 0.0) {
    const double pw = std::pow(base, (p.alpha + 1.0) / p.alpha);
    b.gamma0 = 2.0 * p.a * L2 * pw;
    b.gamma1 = pw * 4.0 * p.a * L2 / std::min(p.a, p.kappa * p.lambda);
  } else {
    // alpha = 0: the Young-inequality exponent degenerates; the bound
    // formulas are stated for alpha > 0 only
    throw std::invalid_argument("compute_bounds: alpha must be > 0");
  }
  b.r_weak = b.gamma1;
  if (p.alpha == 1.0) {
    b.gamma2.reset();
    b.r_grad.reset();
  } else if (p.alpha > 1.0) {
    b.gamma2 = std::pow(p.a * std::pow(p.nu, p.alpha),
                        1.0 / (1.0 - p.alpha)) *
               std::pow(std::pow(2.0, 2.0 - p.alpha), -1.0 / (1.0 - p.alpha));
    b.r_grad = (*b.gamma2 * ((p.a + 1.0) * b.gamma1 + 4.0 * p.a * L2) +
                (3.0 + p.a) * b.gamma1 + 4.0 * p.a * L2) /
               (2.0 * p.nu);
  } else {
    b.gamma2.reset();
    b.r_grad.reset();
  }
  return b;
}

double uniform_gronwall_bound(double a1, double a2, double a3, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("uniform_gronwall_bound: s must be > 0");
  if (a1 < 0.0 || a2 < 0.0 || a3 < 0.0)
    throw std::invalid_argument("uniform_gronwall_bound: a1, a2, a3 must be >= 0");
  return (a3 / s + a2) * std::exp(a1);
}

std::string AbsorbingBallReport::summary() const {
  std::ostringstream os;
  os << "energy_ball=" << (pass_energy ? "pass" : "fail")
     << " trailing_max_energy=" << trailing_max_energy
     << " energy_margin=" << energy_margin
     << " grad_ball=" << (pass_grad ? "pass" : "fail")
     << " trailing_max_grad2=" << trailing_max_grad2
     << " grad_margin=" << grad_margin
     << " envelope=" << (pass_envelope ? "pass" : "fail")
     << " worst_envelope_excess=" << worst_envelope_excess;
  return os.str();
}

AbsorbingBallReport check_absorbing_ball(
    const std::vector<DiagnosticsRecord>& records, const BoundSet& bounds,
    const PhysicalParams& p, double window_fraction, double envelope_tol) {
  if (records.size() < 2)
    throw std::invalid_argument("check_absorbing_ball: trajectory too short");
  const double t0 = records.front().time;
  const double t1 = records.back().time;
  if (!(t1 > t0))
    throw std::invalid_argument("check_absorbing_ball: zero time span");
  const double t_window = t1 - window_fraction * (t1 - t0);

  AbsorbingBallReport r;
  const double E0 = records.front().norms.u_H0 * records.front().norms.u_H0 +
                    records.front().norms.theta_H1 * records.front().norms.theta_H1;
  const double rate = 0.5 * std::min(p.a, p.kappa * p.lambda);
  for (const auto& rec : records) {
    const double E = rec.norms.u_H0 * rec.norms.u_H0 +
                     rec.norms.theta_H1 * rec.norms.theta_H1;
    const double g2 = rec.norms.u_V0dot * rec.norms.u_V0dot;
    if (rec.time >= t_window) {
      r.trailing_max_energy = std::max(r.trailing_max_energy, E);
      r.trailing_max_grad2 = std::max(r.trailing_max_grad2, g2);
    }
    const double envelope =
        E0 * std::exp(-rate * (rec.time - t0)) + bounds.gamma1;
    r.worst_envelope_excess =
        std::max(r.worst_envelope_excess, E / envelope - 1.0);
  }
  r.pass_energy = r.trailing_max_energy <= bounds.gamma1;
  r.energy_margin = bounds.gamma1 - r.trailing_max_energy;
  if (bounds.r_grad) {
    r.pass_grad = r.trailing_max_grad2 <= *bounds.r_grad;
    r.grad_margin = *bounds.r_grad - r.trailing_max_grad2;
  }
  r.pass_envelope = r.worst_envelope_excess <= envelope_tol;
  return r;
}

namespace {
void temperature_range(const State& s, double& tmin, double& tmax) {
  const auto T = conduction_unshift(s.theta);
  for (double v : T) {
    tmin = std::min(tmin, v);
    tmax = std::max(tmax, v);
  }
}
}  // namespace

MaxPrincipleReport max_principle_check(const std::vector<State>& states,
                                       double tol) {
  MaxPrincipleReport r;
  r.tol = tol;
  r.t_min = 1.0;
  r.t_max = 0.0;
  for (const auto& s : states) temperature_range(s, r.t_min, r.t_max);
  r.pass = r.t_min >= -tol && r.t_max <= 1.0 + tol;
  return r;
}

bool admissible_initial_temperature(const State& s) {
  double tmin = 1.0, tmax = 0.0;
  temperature_range(s, tmin, tmax);
  return tmin >= 0.0 && tmax <= 1.0;
}

MonotonicityResult monotonicity_check(double alpha, int n_samples,
                                      unsigned long long rng_seed) {
  if (n_samples < 1) throw std::invalid_argument("monotonicity_check: n_samples >= 1");
  auto rng = make_rng(rng_seed, 0x6d6f6e6full);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  MonotonicityResult res;
  res.delta_estimate = std::numeric_limits<double>::infinity();
  res.all_nonnegative = true;

  auto damping = [&](const double* u, double* out) {
    const double m2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    const double f = m2 > 0.0 ? std::pow(m2, alpha) : 0.0;
    for (int d = 0; d < 3; ++d) out[d] = f * u[d];
  };

  for (int i = 0; i < n_samples; ++i) {
    double u[3], v[3];
    for (double& x : u) x = dist(rng);
    if (i % 97 == 0) {
      // antipodal ray, where the ratio is 2^{-2 alpha} in closed form
      for (int d = 0; d < 3; ++d) v[d] = -u[d];
    } else {
      for (double& x : v) x = dist(rng);
    }
    double du[3], dv[3];
    damping(u, du);
    damping(v, dv);
    double num = 0.0, d2 = 0.0;
    for (int d = 0; d < 3; ++d) {
      const double w = u[d] - v[d];
      num += (du[d] - dv[d]) * w;
      d2 += w * w;
    }
    if (d2 == 0.0) continue;  // degenerate pair u = v
    const double mu = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    const double mv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    const double den = d2 * std::pow(mu + mv, 2.0 * alpha);
    if (den == 0.0) continue;
    const double ratio = num / den;
    if (ratio < 0.0) res.all_nonnegative = false;
    res.delta_estimate = std::min(res.delta_estimate, ratio);
  }
  res.pass = res.all_nonnegative && res.delta_estimate > 0.0 &&
             std::isfinite(res.delta_estimate);
  return res;
}

SyncError sync_error(const State& ref, const State& nudged,
                     const PhysicalParams& p) {
  (void)p;
  if (!ref.grid()->same_dims(*nudged.grid()))
    throw std::invalid_argument("sync_error: grid mismatch");
  State diff = ref;
  for (int d = 0; d < 3; ++d) axpy(-1.0, nudged.u[d], diff.u[d]);
  axpy(-1.0, nudged.theta, diff.theta);
  SyncError e;
  e.e_H0 = l2_norm(diff.u);
  e.e_V0dot = h1_seminorm(diff.u);
  const Grid& g = *diff.grid();
  double hm1 = 0.0;
  for (int jx = 0, i = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        const double k2 = g.kx[jx] * g.kx[jx] + g.ky[jy] * g.ky[jy] +
                          g.kz[jz] * g.kz[jz];
        if (k2 > 0.0) hm1 += std::norm(diff.theta.c[i]) / k2;
      }
  e.e_Hm1 = std::sqrt(g.volume() * hm1);
  return e;
}

}  // namespace bfb
