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

#include "bfb/assimilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bfb/initial_data.hpp"
#include "bfb/rng.hpp"

namespace bfb {

namespace {
constexpr double kPi = std::numbers::pi;

// largest divisor of n that is <= target (and >= 2)
int divisor_near(int n, int target) {
  target = std::clamp(target, 2, n);
  for (int d = target; d >= 2; --d)
    if (n % d == 0) return d;
  return n;
}

struct BoxLayout {
  int bx, by, bz;  // box counts per direction (z over the half domain)
};

BoxLayout box_layout(const InterpolantSpec& spec, const Grid& g) {
  const int bx = divisor_near(g.nx, static_cast<int>(std::lround(g.L / spec.h)));
  const int by = divisor_near(g.ny, static_cast<int>(std::lround(g.L / spec.h)));
  const int bz =
      divisor_near(g.nz / 2, static_cast<int>(std::lround(1.0 / spec.h)));
  return {bx, by, bz};
}
}  // namespace

void InterpolantSpec::validate(const Grid& grid) const {
  if (!(h > 0.0) || h >= std::min(grid.L, 2.0))
    throw std::invalid_argument("interpolant resolution h out of range");
  if (kind == InterpolantKind::ModalLowPass) {
    const double cutoff = 2.0 * kPi / h;
    if (std::min(2.0 * kPi / grid.L, kPi) > cutoff)
      throw std::invalid_argument(
          "ModalLowPass: h too large, no mode retained");
  } else {
    const auto b = box_layout(*this, grid);
    if (b.bx < 2 || b.by < 2 || b.bz < 2)
      throw std::invalid_argument(
          "VolumeAverage: h too large to form >= 2 boxes per direction");
  }
}

double InterpolantSpec::realized_h(const Grid& grid) const {
  if (kind == InterpolantKind::ModalLowPass) return h;
  const auto b = box_layout(*this, grid);
  return std::max({grid.L / b.bx, grid.L / b.by, 1.0 / b.bz});
}

SpectralField apply_interpolant(const SpectralField& f,
                                const InterpolantSpec& spec) {
  if (f.parity != Parity::EvenInZ)
    throw std::invalid_argument("apply_interpolant: field must be EvenInZ");
  const Grid& g = *f.grid;
  spec.validate(g);

  if (spec.kind == InterpolantKind::ModalLowPass) {
    SpectralField out = f;
    const double cutoff = 2.0 * kPi / spec.h;
    for (int jx = 0, i = 0; jx < g.nx; ++jx)
      for (int jy = 0; jy < g.ny; ++jy)
        for (int jz = 0; jz < g.nz; ++jz, ++i) {
          const double kinf = std::max(
              {std::abs(g.kx[jx]), std::abs(g.ky[jy]), std::abs(g.kz[jz])});
          if (kinf > cutoff) out.c[i] = 0.0;
        }
    return out;
  }

  // VolumeAverage: box means on the half domain, mirrored evenly to z < 0
  const auto b = box_layout(spec, g);
  const int sx = g.nx / b.bx, sy = g.ny / b.by, sz = (g.nz / 2) / b.bz;
  const auto phys = inverse_transform(f);
  std::vector<double> mean(b.bx * b.by * b.bz, 0.0);
  const double w = 1.0 / (sx * sy * sz);
  for (int jx = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = g.nz / 2; jz < g.nz; ++jz) {
        const int box = ((jx / sx) * b.by + jy / sy) * b.bz +
                        (jz - g.nz / 2) / sz;
        mean[box] += w * phys[g.index(jx, jy, jz)];
      }
  std::vector<double> out_phys(g.size());
  for (int jx = 0; jx < g.nx; ++jx)
    for (int jy = 0; jy < g.ny; ++jy)
      for (int jz = 0; jz < g.nz; ++jz) {
        int k;  // half-domain z index of this sample or its mirror
        if (jz >= g.nz / 2)
          k = jz - g.nz / 2;
        else if (jz == 0)
          k = g.nz / 2 - 1;  // z = -1 ~ z = 1, top box
        else
          k = g.nz / 2 - jz;
        const int box = ((jx / sx) * b.by + jy / sy) * b.bz + k / sz;
        out_phys[g.index(jx, jy, jz)] = mean[box];
      }
  SpectralField out = forward_transform(out_phys, Parity::EvenInZ, f.grid);
  parity_project_inplace(out);
  return out;
}

InterpolantBoundResult verify_interpolant_bound(const InterpolantSpec& spec,
                                                const GridPtr& grid,
                                                int n_trials,
                                                unsigned long long rng_seed) {
  if (n_trials < 1)
    throw std::invalid_argument("verify_interpolant_bound: n_trials >= 1");
  spec.validate(*grid);
  const double h = spec.realized_h(*grid);
  InterpolantBoundResult res;
  for (int t = 0; t < n_trials; ++t) {
    SpectralField psi = random_even_field(grid, rng_seed + t, grid->mz_keep);
    SpectralField ipsi = apply_interpolant(psi, spec);
    SpectralField diff = psi;
    axpy(-1.0, ipsi, diff);
    const double num = l2_norm(diff);
    const double den = h1_seminorm(psi);
    if (den == 0.0) continue;
    res.worst_ratio =
        std::max(res.worst_ratio, (num * num) / (h * h * den * den));
  }
  res.certified_c0 = 1.5 * res.worst_ratio;
  res.pass = res.worst_ratio <= spec.c0 + 1e-12;
  return res;
}

Observer record_observations(ObservationStream& out,
                             const InterpolantSpec& spec, int cadence) {
  if (cadence < 1) throw std::invalid_argument("cadence must be >= 1");
  out.spec = spec;
  auto counter = std::make_shared<long>(0);
  return [&out, spec, cadence, counter](const State& s, double) {
    if ((*counter)++ % cadence != 0) return;
    ObservationFrame frame;
    frame.time = s.time;
    frame.u_perp = {apply_interpolant(s.u[0], spec),
                    apply_interpolant(s.u[1], spec)};
    out.frames.push_back(std::move(frame));
  };
}

void TwinExperimentConfig::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("nudging parameter mu must be > 0");
  if (observation_cadence < 1)
    throw std::invalid_argument("observation_cadence must be >= 1");
}

TwinExperimentResult run_twin_experiment(const State& reference_init,
                                         const PhysicalParams& params,
                                         const IntegratorConfig& integ,
                                         const TwinExperimentConfig& twin) {
  integ.validate();
  twin.validate();
  const GridPtr& grid = reference_init.grid();
  twin.spec.validate(*grid);

  State ref = reference_init;
  State nud = twin.v0_strategy == InitStrategy::Zero
                  ? State::zero(grid)
                  : random_state(grid, twin.v0_radius * twin.v0_radius,
                                 twin.seed + 1);
  nud.time = ref.time;

  const Interpolant ih = [&](const SpectralField& f) {
    return apply_interpolant(f, twin.spec);
  };
  std::array<SpectralField, 2> obs = {apply_interpolant(ref.u[0], twin.spec),
                                      apply_interpolant(ref.u[1], twin.spec)};

  const auto ref_rhs = [&](const State& s) {
    return explicit_tendency_reference(s, params);
  };
  const auto nud_rhs = [&](const State& s) {
    return explicit_tendency_nudged(s, obs, params, twin.mu, ih);
  };

  TwinExperimentResult result;
  double last_dt = 0.0;
  auto sample = [&]() {
    SyncSample sm;
    sm.time = ref.time;
    sm.error = sync_error(ref, nud, params);
    result.series.push_back(sm);
    DiagnosticsRecord rec;
    rec.time = ref.time;
    rec.norms = compute_norms(ref, params);
    rec.e_H0 = sm.error.e_H0;
    rec.e_Hm1 = sm.error.e_Hm1;
    rec.e_V0dot = sm.error.e_V0dot;
    rec.dt = last_dt;
    result.records.push_back(std::move(rec));
  };
  sample();

  const double t_end = ref.time + integ.t_end;
  // explicit nudging stability cap on top of the usual bounds
  const double mu_cap = 0.5 / twin.mu;
  long steps = 0;
  while (ref.time < t_end - 1e-14 * std::max(1.0, t_end)) {
    double dt = integ.adaptive
                    ? std::min(adaptive_dt(ref, params, integ),
                               adaptive_dt(nud, params, integ))
                    : integ.dt_init;
    if (integ.adaptive) dt = std::min(dt, mu_cap);
    dt = std::min(dt, t_end - ref.time);
    last_dt = dt;
    ref = step(ref, dt, params, ref_rhs);
    ++steps;
    if (steps % twin.observation_cadence == 0) {
      obs = {apply_interpolant(ref.u[0], twin.spec),
             apply_interpolant(ref.u[1], twin.spec)};
    }
    nud = step(nud, dt, params, nud_rhs);
    if (steps % integ.sample_every == 0 ||
        ref.time >= t_end - 1e-14 * std::max(1.0, t_end))
      sample();
  }
  result.final_reference = ref;
  result.final_nudged = nud;

  // fit the decaying segment of e_H0: stop once the error has collapsed
  // to round-off relative to its initial value
  std::vector<std::pair<double, double>> series;
  const double e0 = result.series.front().error.e_H0;
  for (const auto& sm : result.series) {
    series.emplace_back(sm.time, sm.error.e_H0);
    if (e0 > 0.0 && sm.error.e_H0 < 1e-12 * e0 && series.size() > 3) break;
  }
  const DecayFit fit = fit_decay_rate(series);
  result.rate = fit.rate;
  result.r_squared = fit.r_squared;
  return result;
}

DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& series,
                        double trim_fraction) {
  DecayFit fit;
  std::vector<std::pair<double, double>> pts(
      series.begin() + static_cast<long>(series.size() * trim_fraction),
      series.end());
  // positive prefix only
  auto zero_it = std::find_if(pts.begin(), pts.end(),
                              [](const auto& p) { return !(p.second > 0.0); });
  pts.erase(zero_it, pts.end());
  if (pts.empty()) {
    fit.all_zero = true;
    fit.rate = std::numeric_limits<double>::infinity();
    fit.r_squared = 0.0;
    return fit;
  }
  if (pts.size() < 2) {
    fit.rate = 0.0;
    return fit;
  }
  double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
  const double n = static_cast<double>(pts.size());
  for (const auto& [t, e] : pts) {
    const double y = std::log(e);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    syy += y * y;
  }
  const double denom = n * stt - st * st;
  if (denom == 0.0) return fit;
  const double slope = (n * sty - st * sy) / denom;
  fit.rate = -slope;
  const double ss_tot = syy - sy * sy / n;
  const double ss_res = ss_tot - slope * (sty - st * sy / n);
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace bfb
