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

#include "bfb/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "bfb/initial_data.hpp"

namespace bfb {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

State initial_state(const RunConfig& cfg, const GridPtr& grid) {
  if (cfg.init_kind == "conduction") return State::zero(grid);
  if (cfg.init_kind == "random")
    return random_state(grid, cfg.init_energy, cfg.seed);
  State s = read_checkpoint(cfg.init_checkpoint);
  if (!s.grid()->same_dims(*grid))
    throw ConfigError({"checkpoint grid does not match the configured grid"});
  return s;
}

}  // namespace

void RunResult::add(const std::string& key, const std::string& value) {
  values.emplace_back(key, value);
}
void RunResult::add(const std::string& key, double value) {
  values.emplace_back(key, fmt17(value));
}
void RunResult::add(const std::string& key, long long value) {
  values.emplace_back(key, std::to_string(value));
}

std::string RunResult::result_line() const {
  std::string line = "RESULT";
  for (const auto& [k, v] : values) line += " " + k + "=" + v;
  return line;
}

int effective_threads() {
  const char* env = std::getenv("BFB_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1)
    throw ConfigError({"BFB_THREADS must be a positive integer"});
  return 1;  // single-threaded build; any valid cap collapses to 1
}

RunResult run_simulate(const RunConfig& cfg) {
  RunResult res;
  const int threads = effective_threads();
  const GridPtr grid = cfg.make_grid();
  const PhysicalParams params = cfg.make_params(*grid);
  const State s0 = initial_state(cfg, grid);

  std::vector<DiagnosticsRecord> records;
  long long samples_written = 0;
  std::vector<Observer> observers;
  observers.push_back([&](const State& s, double dt) {
    DiagnosticsRecord rec;
    rec.time = s.time;
    rec.norms = compute_norms(s, params);
    rec.dt = dt;
    records.push_back(std::move(rec));
    ++samples_written;
    if (!cfg.checkpoint_path.empty() && cfg.checkpoint_every > 0 &&
        samples_written % cfg.checkpoint_every == 0)
      write_checkpoint(s, params, cfg.checkpoint_path);
  });

  const auto rhs = [&](const State& s) {
    return explicit_tendency_reference(s, params);
  };

  auto flush = [&]() {
    if (!cfg.diagnostics_path.empty())
      write_diagnostics(records, cfg.diagnostics_path);
  };

  try {
    const Trajectory traj = integrate(s0, params, cfg.integ, rhs, observers);
    flush();
    if (!cfg.checkpoint_path.empty())
      write_checkpoint(traj.final_state, params, cfg.checkpoint_path);
    const Norms& n = records.back().norms;
    res.add("status", std::string("ok"));
    res.add("t_final", traj.final_state.time);
    res.add("samples", samples_written);
    res.add("u_H0", n.u_H0);
    res.add("theta_H1", n.theta_H1);
    res.add("E", n.u_H0 * n.u_H0 + n.theta_H1 * n.theta_H1);
    res.add("dt_last", records.back().dt);
    res.add("threads", static_cast<long long>(threads));
  } catch (const BlowupError& e) {
    flush();
    res.exit_code = 2;
    res.log.push_back(e.what());
    res.add("status", std::string("blowup"));
    res.add("t_blowup", e.time);
  }
  return res;
}

RunResult run_assimilate(const RunConfig& cfg) {
  RunResult res;
  const int threads = effective_threads();
  if (!cfg.has_assimilation)
    throw ConfigError({"assimilate requires an assimilation section"});
  const GridPtr grid = cfg.make_grid();
  const PhysicalParams params = cfg.make_params(*grid);
  const State ref0 = initial_state(cfg, grid);
  const TwinExperimentConfig twin = cfg.make_twin();
  twin.spec.validate(*grid);

  try {
    const TwinExperimentResult r =
        run_twin_experiment(ref0, params, cfg.integ, twin);
    if (!cfg.diagnostics_path.empty())
      write_diagnostics(r.records, cfg.diagnostics_path);
    if (!cfg.checkpoint_path.empty())
      write_checkpoint(r.final_nudged, params, cfg.checkpoint_path);
    const SyncSample& first = r.series.front();
    const SyncSample& last = r.series.back();
    res.add("status", std::string("ok"));
    res.add("t_final", last.time);
    res.add("rate", r.rate);
    res.add("r_squared", r.r_squared);
    res.add("e_H0_initial", first.error.e_H0);
    res.add("e_H0_final", last.error.e_H0);
    res.add("e_Hm1_final", last.error.e_Hm1);
    res.add("e_V0dot_final", last.error.e_V0dot);
    res.add("realized_h", twin.spec.realized_h(*grid));
    res.add("threads", static_cast<long long>(threads));
  } catch (const BlowupError& e) {
    res.exit_code = 2;
    res.log.push_back(e.what());
    res.add("status", std::string("blowup"));
    res.add("t_blowup", e.time);
  }
  return res;
}

RunResult run_verify_bounds(const RunConfig& cfg,
                            const std::string& diagnostics_path) {
  RunResult res;
  const GridPtr grid = cfg.make_grid();
  const PhysicalParams params = cfg.make_params(*grid);
  if (params.alpha == 1.0)
    throw ConfigError(
        {"gamma2 is undefined at alpha = 1 (singular exponent 1/(1-alpha)); "
         "gradient bounds are unavailable"});
  const BoundSet bounds = compute_bounds(params);
  const auto records = read_diagnostics(diagnostics_path);
  const auto report = check_absorbing_ball(records, bounds, params);

  res.add("gamma0", bounds.gamma0);
  res.add("gamma1", bounds.gamma1);
  if (bounds.gamma2) res.add("gamma2", *bounds.gamma2);
  res.add("r_weak", bounds.r_weak);
  if (bounds.r_grad) res.add("r_grad", *bounds.r_grad);
  res.add("trailing_max_energy", report.trailing_max_energy);
  res.add("energy_margin", report.energy_margin);
  if (bounds.r_grad) {
    res.add("trailing_max_grad2", report.trailing_max_grad2);
    res.add("grad_margin", report.grad_margin);
  }
  res.add("worst_envelope_excess", report.worst_envelope_excess);
  const bool pass = report.pass_energy && report.pass_envelope &&
                    (!bounds.r_grad || report.pass_grad);
  res.add("status", std::string(pass ? "ok" : "fail"));
  res.log.push_back(report.summary());
  if (!pass) res.exit_code = 1;
  return res;
}

RunResult run_verify_properties(const RunConfig& cfg) {
  RunResult res;
  const GridPtr grid = cfg.make_grid();

  // transform round trip and Parseval on a random band-limited field
  SpectralField f = random_even_field(grid, cfg.seed, grid->mz_keep);
  const auto phys = inverse_transform(f);
  const SpectralField back = forward_transform(phys, f.parity, grid);
  double rt = 0.0;
  for (size_t i = 0; i < f.c.size(); ++i)
    rt = std::max(rt, std::abs(f.c[i] - back.c[i]));
  double quad = 0.0;
  for (double v : phys) quad += v * v;
  quad = std::sqrt(quad * grid->cell_volume());
  const double parseval = std::abs(quad - l2_norm(f)) / l2_norm(f);

  // projector idempotence
  SpectralField pf = parity_project(f, f.parity);
  double parity_resid = 0.0;
  for (size_t i = 0; i < f.c.size(); ++i)
    parity_resid = std::max(parity_resid, std::abs(pf.c[i] - f.c[i]));
  VecField u = random_velocity(grid, cfg.seed + 1);
  VecField pu = leray_project(u);
  double leray_resid = 0.0;
  for (int d = 0; d < 3; ++d)
    for (size_t i = 0; i < u[d].c.size(); ++i)
      leray_resid = std::max(leray_resid, std::abs(pu[d].c[i] - u[d].c[i]));

  bool pass = rt <= 1e-12 && parseval <= 1e-12 && parity_resid <= 1e-12 &&
              leray_resid <= 1e-12;
  res.add("roundtrip_resid", rt);
  res.add("parseval_resid", parseval);
  res.add("parity_resid", parity_resid);
  res.add("leray_resid", leray_resid);

  for (double alpha : {1.5, 2.0, 3.0}) {
    const MonotonicityResult m = monotonicity_check(alpha, 100000, cfg.seed);
    const double closed_form = std::pow(2.0, -2.0 * alpha);
    const bool ok = m.pass && m.delta_estimate <= closed_form + 1e-12;
    pass = pass && ok;
    char key[32];
    std::snprintf(key, sizeof(key), "mono_a%g", alpha);
    res.add(key, m.delta_estimate);
  }

  const InterpolantSpec spec = cfg.make_interpolant();
  const InterpolantBoundResult ib =
      verify_interpolant_bound(spec, grid, 1000, cfg.seed);
  res.add("interp_worst_ratio", ib.worst_ratio);
  res.add("interp_certified_c0", ib.certified_c0);
  if (spec.kind == InterpolantKind::ModalLowPass) pass = pass && ib.pass;

  res.add("status", std::string(pass ? "ok" : "fail"));
  if (!pass) res.exit_code = 1;
  return res;
}

RunResult run_checkpoint_info(const std::string& checkpoint_path) {
  RunResult res;
  const CheckpointHeader h = read_checkpoint_header(checkpoint_path);
  res.add("status", std::string("ok"));
  res.add("version", static_cast<long long>(h.version));
  res.add("nx", static_cast<long long>(h.nx));
  res.add("ny", static_cast<long long>(h.ny));
  res.add("nz", static_cast<long long>(h.nz));
  res.add("L", h.L);
  res.add("dealias_fraction", h.dealias_fraction);
  res.add("time", h.time);
  res.add("params_hash", std::to_string(h.params_hash));
  return res;
}

}  // namespace bfb
