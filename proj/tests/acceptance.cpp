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

// Acceptance suite: one pass/fail line per criterion, exit code equals
// the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "bfb/assimilation.hpp"
#include "bfb/diagnostics.hpp"
#include "bfb/initial_data.hpp"
#include "bfb/integrator.hpp"
#include "bfb/io.hpp"

using namespace bfb;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("CRITERION %2d %-28s %s  %s\n", id, name.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double state_distance(const State& a, const State& b) {
  State diff = a;
  for (int d = 0; d < 3; ++d) axpy(-1.0, b.u[d], diff.u[d]);
  axpy(-1.0, b.theta, diff.theta);
  const double du = l2_norm(diff.u);
  const double dth = l2_norm(diff.theta);
  return std::sqrt(du * du + dth * dth);
}

// ---- criterion 1: structural invariants -----------------------------------

void criterion_1() {
  bool pass = true;
  std::string worst;
  for (int n : {16, 32}) {
    const auto g = build_grid(n, n, n, 1.0);
    const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);

    // transform round trip + Parseval
    const SpectralField f = random_odd_field(g, 100 + n);
    const auto phys = inverse_transform(f);
    const SpectralField back = forward_transform(phys, f.parity, g);
    double rt = 0.0;
    for (size_t i = 0; i < f.c.size(); ++i)
      rt = std::max(rt, std::abs(f.c[i] - back.c[i]));
    double quad = 0.0;
    for (double v : phys) quad += v * v;
    quad = std::sqrt(quad * g->cell_volume());
    const double parseval = std::abs(quad - l2_norm(f)) / l2_norm(f);
    if (rt > 1e-12 || parseval > 1e-12) pass = false;

    // parity/Leray idempotence and preservation through tendencies
    const State s = random_state(g, 2.0, 200 + n);
    const Tendency t = tendency_reference(s, p);
    const double div_rel =
        l2_norm(divergence(t.du)) / (1.0 + l2_norm(t.du));
    if (div_rel > 1e-10) pass = false;
    for (const auto& comp : t.du) {
      const SpectralField proj = parity_project(comp, comp.parity);
      double d = 0.0;
      for (size_t i = 0; i < comp.c.size(); ++i)
        d = std::max(d, std::abs(proj.c[i] - comp.c[i]));
      if (d > 1e-13) pass = false;
    }

    // advection skew-symmetry
    const VecField b0 = advect_velocity(s.u, s.u);
    const double skew0 =
        std::abs(inner(b0, s.u)) / (l2_norm(b0) * l2_norm(s.u) + 1e-300);
    const SpectralField b1 = advect_scalar(s.u, s.theta);
    const double skew1 = std::abs(inner(b1, s.theta)) /
                         (l2_norm(b1) * l2_norm(s.theta) + 1e-300);
    if (skew0 > 1e-10 || skew1 > 1e-10) pass = false;

    // Forchheimer sign identity
    VecField fh = forchheimer(s.u, 1.0, p.alpha);
    leray_project_inplace(fh);
    const double lhs = inner(fh, s.u);
    const Norms norms = compute_norms(s, p);
    const double rhs = std::pow(norms.u_L2a2, 2.0 * p.alpha + 2.0);
    const double sign_rel = std::abs(lhs - rhs) / (std::abs(rhs) + 1e-300);
    if (sign_rel > 1e-10) pass = false;

    // buoyancy/coupling duality
    VecField buoy = make_velocity(g);
    buoy[2] = s.theta;
    leray_project_inplace(buoy);
    const double dual =
        std::abs(inner(buoy, s.u) - inner(s.u[2], s.theta));
    if (dual > 1e-12 * (1.0 + std::abs(inner(buoy, s.u)))) pass = false;

    if (n == 32)
      worst = "roundtrip=" + fmt(rt) + " skew=" + fmt(std::max(skew0, skew1)) +
              " sign=" + fmt(sign_rel) + " dual=" + fmt(dual);
  }
  report(1, "structural-invariants", pass, worst);
}

// ---- criterion 2: conduction fixed point ----------------------------------

void criterion_2() {
  const auto g = build_grid(16, 16, 16, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
  IntegratorConfig cfg;
  cfg.t_end = 10.0;
  const Trajectory traj =
      integrate(State::zero(g), p, cfg, [&](const State& s) {
        return explicit_tendency_reference(s, p);
      });
  double worst = 0.0;
  for (const auto& rec : traj.samples) {
    worst = std::max({worst, rec.norms.u_H0, rec.norms.theta_H1,
                      rec.norms.u_V0dot, rec.norms.theta_V1});
  }
  report(2, "conduction-fixed-point", worst < 1e-12,
         "max norm over run = " + fmt(worst));
}

// ---- criterion 3: temporal order ------------------------------------------

void criterion_3() {
  const auto g = build_grid(32, 32, 32, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
  const State s0 = random_state(g, 1.0, 300);
  const auto rhs = [&](const State& s) {
    return explicit_tendency_reference(s, p);
  };
  auto run = [&](double dt) {
    IntegratorConfig cfg;
    cfg.t_end = 0.5;
    cfg.adaptive = false;
    cfg.dt_init = dt;
    cfg.min_dt = dt;
    cfg.max_dt = dt;
    cfg.sample_every = 1000000;
    return integrate(s0, p, cfg, rhs).final_state;
  };
  const State s1 = run(4e-3);
  const State s2 = run(2e-3);
  const State s3 = run(1e-3);
  const double e12 = state_distance(s1, s2);
  const double e23 = state_distance(s2, s3);
  const double slope = std::log2(e12 / e23);
  report(3, "temporal-order", std::abs(slope - 2.0) <= 0.15,
         "slope = " + fmt(slope) + " (e12 = " + fmt(e12) +
             ", e23 = " + fmt(e23) + ")");
}

// ---- criteria 4, 5, 9: the long absorbing-ball run ------------------------

void criteria_4_5_9() {
  const auto g = build_grid(32, 32, 32, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
  const BoundSet bounds = compute_bounds(p);
  const double e0_target = 8.0;  // <= 10 * gamma1
  State s0 = random_state(g, e0_target, 459);
  if (!admissible_initial_temperature(s0)) {
    report(4, "absorbing-ball", false, "inadmissible initial data");
    report(5, "gradient-ball", false, "inadmissible initial data");
    report(9, "maximum-principle", false, "inadmissible initial data");
    return;
  }

  IntegratorConfig cfg;
  cfg.t_end = 60.0;
  cfg.sample_every = 10;

  std::vector<DiagnosticsRecord> records;
  double t_min = 1.0, t_max = 0.0;
  std::vector<Observer> observers;
  observers.push_back([&](const State& s, double dt) {
    DiagnosticsRecord rec;
    rec.time = s.time;
    rec.norms = compute_norms(s, p);
    rec.dt = dt;
    records.push_back(std::move(rec));
    const auto T = conduction_unshift(s.theta);
    for (double v : T) {
      t_min = std::min(t_min, v);
      t_max = std::max(t_max, v);
    }
  });
  integrate(s0, p, cfg, [&](const State& s) {
    return explicit_tendency_reference(s, p);
  }, observers);

  const AbsorbingBallReport rep =
      check_absorbing_ball(records, bounds, p, 0.5, 0.05);
  report(4, "absorbing-ball", rep.pass_energy && rep.pass_envelope,
         "trailing max E = " + fmt(rep.trailing_max_energy) + " vs gamma1 = " +
             fmt(bounds.gamma1) + ", envelope excess = " +
             fmt(rep.worst_envelope_excess));
  report(5, "gradient-ball", rep.pass_grad,
         "trailing max grad2 = " + fmt(rep.trailing_max_grad2) +
             " vs r_grad = " + fmt(*bounds.r_grad) + ", margin = " +
             fmt(rep.grad_margin));
  report(9, "maximum-principle", t_min >= -0.02 && t_max <= 1.02,
         "T range over run = [" + fmt(t_min) + ", " + fmt(t_max) + "]");
}

// ---- criterion 6: strong monotonicity -------------------------------------

void criterion_6() {
  bool pass = true;
  std::string detail;
  for (double alpha : {1.5, 2.0, 3.0}) {
    const MonotonicityResult r = monotonicity_check(alpha, 100000, 600);
    const double closed_form = std::pow(2.0, -2.0 * alpha);
    const bool ok = r.all_nonnegative && r.delta_estimate > 0.0 &&
                    r.delta_estimate <= closed_form + 1e-12;
    pass = pass && ok;
    detail += "a=" + fmt(alpha) + ":" + fmt(r.delta_estimate) + " ";
  }
  report(6, "strong-monotonicity", pass, detail);
}

// ---- criterion 7: interpolant bound ---------------------------------------

void criterion_7() {
  const auto g = build_grid(32, 32, 32, 1.0);
  InterpolantSpec spec;
  spec.h = 0.25;
  const InterpolantBoundResult res = verify_interpolant_bound(spec, g, 1000, 700);
  bool pass = res.pass;

  // extremal single mode just above the cutoff
  const double h = (1.0 / 3.0) * (1.0 + 1e-12);
  InterpolantSpec ext;
  ext.h = h;
  SpectralField psi(g, Parity::EvenInZ);
  psi.at(3, 0, 0) = 0.5;
  psi.at(g->nx - 3, 0, 0) = 0.5;
  SpectralField resid = psi;
  axpy(-1.0, apply_interpolant(psi, ext), resid);
  const double num = l2_norm(resid);
  const double den = h1_seminorm(psi);
  const double ratio = (num * num) / (h * h * den * den);
  const double c0 = 1.0 / (4.0 * kPi * kPi);
  if (std::abs(ratio - c0) > 1e-10) pass = false;

  report(7, "interpolant-bound", pass,
         "worst ratio = " + fmt(res.worst_ratio) + " vs c0 = " + fmt(spec.c0) +
             ", extremal ratio = " + fmt(ratio));
}

// ---- criterion 8: twin-experiment synchronization -------------------------

TwinExperimentResult twin_run(double alpha, double mu, unsigned long long seed) {
  const auto g = build_grid(32, 32, 32, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, alpha, *g);
  const State ref0 = random_state(g, 1.0, seed);  // inside the energy ball
  IntegratorConfig cfg;
  cfg.t_end = 20.0;
  cfg.sample_every = 5;
  TwinExperimentConfig twin;
  twin.mu = mu;
  twin.spec.kind = InterpolantKind::ModalLowPass;
  twin.spec.h = 0.25;  // retains ~1/4 of the horizontal modes per direction
  twin.v0_strategy = InitStrategy::Zero;
  twin.observation_cadence = 1;
  twin.seed = seed;
  return run_twin_experiment(ref0, p, cfg, twin);
}

void criterion_8() {
  // weak-mode check at alpha = 2 (H0 x H^{-1})
  const TwinExperimentResult weak = twin_run(2.0, 50.0, 800);
  const double e0_h0 = weak.series.front().error.e_H0;
  const double e0_hm1 = weak.series.front().error.e_Hm1;
  double ef_h0 = e0_h0, ef_hm1 = e0_hm1;
  for (const auto& sm : weak.series) {
    ef_h0 = std::min(ef_h0, sm.error.e_H0);
    ef_hm1 = std::min(ef_hm1, sm.error.e_Hm1);
  }
  const bool weak_ok = weak.series.back().error.e_H0 < 1e-6 * e0_h0 &&
                       weak.series.back().error.e_Hm1 < 1e-6 * e0_hm1 &&
                       weak.r_squared >= 0.95;
  report(8, "twin-sync-weak", weak_ok,
         "e_H0 drop = " + fmt(weak.series.back().error.e_H0 / e0_h0) +
             ", e_Hm1 drop = " + fmt(weak.series.back().error.e_Hm1 / e0_hm1) +
             ", rate = " + fmt(weak.rate) + ", r2 = " + fmt(weak.r_squared));

  // strong-mode check at alpha = 1.5 (V0dot)
  const TwinExperimentResult strong = twin_run(1.5, 50.0, 801);
  const double e0_v = strong.series.front().error.e_V0dot;
  const bool strong_ok = strong.series.back().error.e_V0dot < 1e-6 * e0_v;
  report(8, "twin-sync-strong", strong_ok,
         "e_V0dot drop = " +
             fmt(strong.series.back().error.e_V0dot / e0_v) + ", rate = " +
             fmt(strong.rate));

  // negative control: mu = 1e-6 should show no decay below half the
  // initial error
  const TwinExperimentResult neg = twin_run(2.0, 1e-6, 802);
  const double n0 = neg.series.front().error.e_H0;
  double nmin = n0;
  for (const auto& sm : neg.series) nmin = std::min(nmin, sm.error.e_H0);
  report(8, "twin-negative-control", nmin >= 0.5 * n0,
         "min e_H0 / initial = " + fmt(nmin / n0));
}

// ---- criterion 10: determinism and persistence ----------------------------

void criterion_10() {
  namespace fs = std::filesystem;
  const auto g = build_grid(16, 16, 16, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
  const auto rhs = [&](const State& s) {
    return explicit_tendency_reference(s, p);
  };
  const double dt = 1e-3;

  State direct = random_state(g, 2.0, 1000);
  for (int i = 0; i < 100; ++i) direct = step(direct, dt, p, rhs);

  State half = random_state(g, 2.0, 1000);
  for (int i = 0; i < 50; ++i) half = step(half, dt, p, rhs);
  const fs::path dir = fs::temp_directory_path() / "bfb_acceptance";
  fs::create_directories(dir);
  const std::string path = (dir / "resume.bfb").string();
  write_checkpoint(half, p, path);
  State resumed = read_checkpoint(path);

  // bitwise round trip
  bool bitwise = resumed.time == half.time;
  for (int d = 0; d < 3; ++d)
    for (size_t i = 0; i < half.u[d].c.size(); ++i)
      if (resumed.u[d].c[i] != half.u[d].c[i]) bitwise = false;
  for (size_t i = 0; i < half.theta.c.size(); ++i)
    if (resumed.theta.c[i] != half.theta.c[i]) bitwise = false;

  for (int i = 0; i < 50; ++i) resumed = step(resumed, dt, p, rhs);
  const double dist = state_distance(direct, resumed);
  const double ref = std::sqrt(l2_norm(direct.u) * l2_norm(direct.u) +
                               l2_norm(direct.theta) * l2_norm(direct.theta));
  fs::remove_all(dir);
  report(10, "determinism-persistence", bitwise && dist <= 1e-13 * ref,
         std::string("bitwise = ") + (bitwise ? "yes" : "no") +
             ", resume distance = " + fmt(dist / (ref + 1e-300)) +
             " relative");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criteria_4_5_9();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_10();
  std::printf("ACCEPTANCE %s: %d criterion checks failed\n",
              g_failures == 0 ? "CLEAN" : "WITH FAILURES", g_failures);
  return g_failures;
}
