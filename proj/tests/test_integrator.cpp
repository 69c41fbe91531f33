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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bfb/initial_data.hpp"
#include "bfb/integrator.hpp"

using namespace bfb;

namespace {

constexpr double kPi = std::numbers::pi;

Tendency zero_tendency(const State& s) {
  Tendency t;
  t.du = make_velocity(s.grid());
  t.dtheta = SpectralField(s.grid(), Parity::OddInZ);
  return t;
}

}  // namespace

TEST_CASE("IntegratorConfig validation") {
  IntegratorConfig c;
  CHECK_NOTHROW(c.validate());
  c.min_dt = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = IntegratorConfig{};
  c.dt_init = 1.0;  // > max_dt
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = IntegratorConfig{};
  c.cfl_number = 1.5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = IntegratorConfig{};
  c.sample_every = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("pure diffusion is integrated exactly per mode") {
  const auto g = build_grid(8, 8, 8, 1.0);
  const PhysicalParams p = PhysicalParams::make(0.7, 1.3, 1.0, 2.0, *g);
  State s = State::zero(g);
  // theta = sin(pi z), u3-free single mode
  s.theta.at(0, 0, 1) = Complex(0.0, -0.5);
  s.theta.at(0, 0, g->nz - 1) = Complex(0.0, 0.5);
  const double dt = 0.037;
  const State next = step(s, dt, p, zero_tendency);
  const double factor = std::exp(-p.kappa * kPi * kPi * dt);
  CHECK(std::abs(next.theta.at(0, 0, 1) -
                 Complex(0.0, -0.5) * factor) < 1e-15);
  CHECK(next.time == doctest::Approx(dt));
}

TEST_CASE("zero state steps to zero") {
  const auto g = build_grid(8, 8, 8, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
  const State next = step(State::zero(g), 0.01, p, [&](const State& s) {
    return explicit_tendency_reference(s, p);
  });
  CHECK(l2_norm(next.u) == 0.0);
  CHECK(l2_norm(next.theta) == 0.0);
}

TEST_CASE("adaptive_dt") {
  const auto g = build_grid(8, 8, 8, 1.0);
  IntegratorConfig cfg;
  cfg.max_dt = 0.05;
  cfg.min_dt = 1e-8;
  cfg.dt_init = 1e-3;

  SUBCASE("zero velocity returns max_dt") {
    const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
    CHECK(adaptive_dt(State::zero(g), p, cfg) == cfg.max_dt);
  }
  SUBCASE("damping bound for alpha = 2, a = 1, max|u| = 2") {
    const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
    State s = State::zero(g);
    s.u[0].at(0, 0, 0) = 2.0;  // constant field, max|u| = 2
    CHECK(adaptive_dt(s, p, cfg) == doctest::Approx(0.03125).epsilon(1e-12));
  }
  SUBCASE("doubling max|u| halves the CFL candidate at alpha = 0") {
    const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1e-6, 0.0, *g);
    State s = State::zero(g);
    s.u[0].at(0, 0, 0) = 2.0;
    const double dt1 = adaptive_dt(s, p, cfg);
    s.u[0].at(0, 0, 0) = 4.0;
    const double dt2 = adaptive_dt(s, p, cfg);
    CHECK(dt1 == doctest::Approx(2.0 * dt2).epsilon(1e-12));
  }
}

TEST_CASE("integrate") {
  const auto g = build_grid(16, 16, 16, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
  const auto rhs = [&](const State& s) {
    return explicit_tendency_reference(s, p);
  };

  SUBCASE("t_end = 0 yields only the initial sample") {
    IntegratorConfig cfg;
    cfg.t_end = 0.0;
    const Trajectory traj = integrate(State::zero(g), p, cfg, rhs);
    CHECK(traj.samples.size() == 1);
    CHECK(traj.final_state.time == 0.0);
  }
  SUBCASE("conduction state is a fixed point over t = 10") {
    IntegratorConfig cfg;
    cfg.t_end = 10.0;
    const Trajectory traj = integrate(State::zero(g), p, cfg, rhs);
    CHECK(l2_norm(traj.final_state.u) < 1e-12);
    CHECK(l2_norm(traj.final_state.theta) < 1e-12);
  }
  SUBCASE("decaying Fourier mode matches the heat kernel with nonlinearities off") {
    State s0 = State::zero(g);
    s0.theta.at(0, 0, 1) = Complex(0.0, -0.5);
    s0.theta.at(0, 0, g->nz - 1) = Complex(0.0, 0.5);
    IntegratorConfig cfg;
    cfg.t_end = 1.0;
    cfg.adaptive = false;
    cfg.dt_init = 1e-3;
    const Trajectory traj = integrate(s0, p, cfg, zero_tendency);
    const double expect = 0.5 * std::exp(-p.kappa * kPi * kPi * 1.0);
    const double got = std::abs(traj.final_state.theta.at(0, 0, 1));
    CHECK(std::abs(got - expect) < 1e-10 * expect);
  }
  SUBCASE("sample cadence and strictly increasing times") {
    IntegratorConfig cfg;
    cfg.t_end = 0.1;
    cfg.adaptive = false;
    cfg.dt_init = 1e-3;
    cfg.sample_every = 10;
    std::vector<double> times;
    const std::vector<Observer> obs = {
        [&](const State& s, double) { times.push_back(s.time); }};
    integrate(random_state(g, 0.1, 3), p, cfg, rhs, obs);
    REQUIRE(times.size() == 11);
    for (size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
  }
  SUBCASE("blow-up is detected and carries the partial trajectory") {
    // feedback with the wrong sign: anti-diffusive forcing
    const auto bad_rhs = [&](const State& s) {
      Tendency t = explicit_tendency_reference(s, p);
      for (int d = 0; d < 3; ++d) {
        SpectralField boost = laplacian(s.u[d]);
        axpy(-400.0, boost, t.du[d]);
      }
      return t;
    };
    IntegratorConfig cfg;
    cfg.t_end = 50.0;
    cfg.adaptive = false;
    cfg.dt_init = 1e-2;
    bool thrown = false;
    try {
      integrate(random_state(g, 1.0, 4), p, cfg, bad_rhs);
    } catch (const BlowupError& e) {
      thrown = true;
      CHECK(e.time > 0.0);
      CHECK(e.trajectory.samples.size() >= 1);
    }
    CHECK(thrown);
  }
}

TEST_CASE("invariants hold at every sample") {
  const auto g = build_grid(16, 16, 16, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
  IntegratorConfig cfg;
  cfg.t_end = 0.2;
  cfg.sample_every = 5;
  const std::vector<Observer> obs = {[&](const State& s, double) {
    const SpectralField div = divergence(s.u);
    CHECK(l2_norm(div) < 1e-10 * (1.0 + l2_norm(s.u)));
    for (const auto& comp : s.u) {
      const SpectralField proj = parity_project(comp, comp.parity);
      double diff = 0.0;
      for (size_t i = 0; i < comp.c.size(); ++i)
        diff = std::max(diff, std::abs(proj.c[i] - comp.c[i]));
      CHECK(diff < 1e-14);
    }
  }};
  integrate(random_state(g, 1.0, 9), p, cfg,
            [&](const State& s) { return explicit_tendency_reference(s, p); },
            obs);
}

TEST_CASE("discrete energy inequality between samples") {
  const auto g = build_grid(16, 16, 16, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
  IntegratorConfig cfg;
  cfg.t_end = 0.5;
  cfg.sample_every = 5;
  std::vector<std::pair<double, double>> energy;
  const std::vector<Observer> obs = {[&](const State& s, double) {
    const double e = l2_norm(s.u) * l2_norm(s.u) +
                     l2_norm(s.theta) * l2_norm(s.theta);
    energy.emplace_back(s.time, e);
  }};
  integrate(random_state(g, 2.0, 10), p, cfg,
            [&](const State& s) { return explicit_tendency_reference(s, p); },
            obs);
  for (size_t i = 1; i < energy.size(); ++i) {
    const double de = energy[i].second - energy[i - 1].second;
    const double dt = energy[i].first - energy[i - 1].first;
    const double e = energy[i - 1].second;
    CHECK(de / dt <= 2.0 * e + 1e-6 * e + 1e-14);
  }
}
