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

#include "bfb/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace bfb {

void IntegratorConfig::validate() const {
  if (!(min_dt > 0.0) || !(min_dt <= dt_init) || !(dt_init <= max_dt))
    throw std::invalid_argument("require 0 < min_dt <= dt_init <= max_dt");
  if (!(cfl_number > 0.0) || cfl_number > 1.0)
    throw std::invalid_argument("cfl_number must lie in (0,1]");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
  if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
}

namespace {

// exp(-c |k|^2 dt) applied in place
void apply_factor(SpectralField& f, double c, double dt) {
  const Grid& g = *f.grid;
  for (int jx = 0, i = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz, ++i) {
        const double k2 = g.kx[jx] * g.kx[jx] + g.ky[jy] * g.ky[jy] +
                          g.kz[jz] * g.kz[jz];
        f.c[i] *= std::exp(-c * k2 * dt);
      }
}

void apply_factor(State& s, const PhysicalParams& p, double dt) {
  for (auto& comp : s.u) apply_factor(comp, p.nu, dt);
  apply_factor(s.theta, p.kappa, dt);
}

void enforce_invariants(State& s) {
  for (auto& comp : s.u) {
    parity_project_inplace(comp);
    dealias_inplace(comp);
  }
  leray_project_inplace(s.u);
  parity_project_inplace(s.theta);
  dealias_inplace(s.theta);
}

bool finite(const State& s) {
  return all_finite(s.u[0]) && all_finite(s.u[1]) && all_finite(s.u[2]) &&
         all_finite(s.theta);
}

}  // namespace

State step(const State& s, double dt, const PhysicalParams& p,
           const ExplicitRhs& rhs) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");

  const Tendency n1 = rhs(s);

  // predictor: E(dt) (s + dt N(s))
  State pred = s;
  for (int d = 0; d < 3; ++d) axpy(dt, n1.du[d], pred.u[d]);
  axpy(dt, n1.dtheta, pred.theta);
  apply_factor(pred, p, dt);
  pred.time = s.time + dt;
  enforce_invariants(pred);

  const Tendency n2 = rhs(pred);

  // corrector: E(dt) s + dt/2 (E(dt) N(s) + N(pred))
  State next = s;
  apply_factor(next, p, dt);
  {
    Tendency n1f = n1;
    for (auto& comp : n1f.du) apply_factor(comp, p.nu, dt);
    apply_factor(n1f.dtheta, p.kappa, dt);
    for (int d = 0; d < 3; ++d) {
      axpy(0.5 * dt, n1f.du[d], next.u[d]);
      axpy(0.5 * dt, n2.du[d], next.u[d]);
    }
    axpy(0.5 * dt, n1f.dtheta, next.theta);
    axpy(0.5 * dt, n2.dtheta, next.theta);
  }
  next.time = s.time + dt;
  enforce_invariants(next);

  if (!finite(next)) {
    Trajectory partial;
    partial.final_state = s;
    throw BlowupError(next.time, std::move(partial));
  }
  return next;
}

double adaptive_dt(const State& s, const PhysicalParams& p,
                   const IntegratorConfig& cfg) {
  const Grid& g = *s.grid();
  const double umax = max_velocity_magnitude(s.u);
  if (umax == 0.0) return cfg.max_dt;
  const double dx_min =
      std::min({g.L / g.nx, g.L / g.ny, 2.0 / g.nz});
  const double cfl_dt = cfg.cfl_number * dx_min / umax;
  constexpr double c_damp = 0.5;
  const double damp_dt =
      c_damp / (p.a * std::pow(umax, 2.0 * p.alpha));
  const double dt = std::min({cfl_dt, damp_dt, cfg.max_dt});
  return std::clamp(dt, cfg.min_dt, cfg.max_dt);
}

Trajectory integrate(const State& state0, const PhysicalParams& p,
                     const IntegratorConfig& cfg, const ExplicitRhs& rhs,
                     const std::vector<Observer>& observers,
                     bool keep_states) {
  cfg.validate();
  Trajectory traj;
  State s = state0;
  enforce_invariants(s);

  auto sample = [&](double dt_taken) {
    DiagnosticsRecord rec;
    rec.time = s.time;
    rec.norms = compute_norms(s, p);
    rec.dt = dt_taken;
    traj.samples.push_back(rec);
    if (keep_states) traj.checkpoints.push_back(s);
    for (const auto& obs : observers) obs(s, dt_taken);
  };

  sample(0.0);
  const double t_end = state0.time + cfg.t_end;
  long steps = 0;
  try {
    while (s.time < t_end - 1e-14 * std::max(1.0, t_end)) {
      double dt = cfg.adaptive ? adaptive_dt(s, p, cfg) : cfg.dt_init;
      dt = std::min(dt, t_end - s.time);
      s = step(s, dt, p, rhs);
      ++steps;
      if (steps % cfg.sample_every == 0 || s.time >= t_end - 1e-14)
        sample(dt);
    }
  } catch (BlowupError& e) {
    e.trajectory = std::move(traj);
    throw;
  }
  traj.final_state = s;
  return traj;
}

}  // namespace bfb
