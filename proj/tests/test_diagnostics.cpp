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

#include "bfb/diagnostics.hpp"
#include "bfb/initial_data.hpp"

using namespace bfb;

namespace {
constexpr double kPi = std::numbers::pi;

State theta_sine_state(const GridPtr& g, double c) {
  State s = State::zero(g);
  s.theta.at(0, 0, 1) = Complex(0.0, -0.5 * c);
  s.theta.at(0, 0, g->nz - 1) = Complex(0.0, 0.5 * c);
  return s;
}
}  // namespace

TEST_CASE("compute_norms") {
  const auto g = build_grid(16, 16, 16, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);

  SUBCASE("zero state") {
    const Norms n = compute_norms(State::zero(g), p);
    CHECK(n.u_H0 == 0.0);
    CHECK(n.theta_H1 == 0.0);
    CHECK(n.u_V0dot == 0.0);
    CHECK(n.theta_V1 == 0.0);
    CHECK(n.u_L2a2 == 0.0);
    CHECK(n.theta_Hm1 == 0.0);
  }
  SUBCASE("theta = c sin(pi z) single-mode analytics") {
    const double c = 0.7;
    const Norms n = compute_norms(theta_sine_state(g, c), p);
    // integral of sin^2(pi z) over the extended box = L^2
    CHECK(n.theta_H1 == doctest::Approx(c).epsilon(1e-13));
    CHECK(n.theta_V1 == doctest::Approx(kPi * c).epsilon(1e-13));
    CHECK(n.theta_Hm1 == doctest::Approx(c / kPi).epsilon(1e-13));
  }
  SUBCASE("L^{2 alpha + 2} at alpha = 0 coincides with u_H0") {
    const PhysicalParams p0 = PhysicalParams::make(1.0, 1.0, 1.0, 0.0, *g);
    State s = State::zero(g);
    s.u = random_velocity(g, 5);
    const Norms n = compute_norms(s, p0);
    CHECK(n.u_L2a2 == doctest::Approx(n.u_H0).epsilon(1e-12));
  }
}

TEST_CASE("compute_bounds") {
  const auto g = build_grid(16, 16, 16, 1.0);

  SUBCASE("reference values at a = kappa = nu = L = 1, alpha = 2") {
    const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
    const BoundSet b = compute_bounds(p);
    CHECK(b.gamma0 == doctest::Approx(0.64740540507317096).epsilon(1e-12));
    CHECK(b.gamma1 == doctest::Approx(1.2948108101463419).epsilon(1e-12));
    REQUIRE(b.gamma2.has_value());
    CHECK(*b.gamma2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.r_weak == b.gamma1);
    REQUIRE(b.r_grad.has_value());
    CHECK(*b.r_grad == doctest::Approx(7.8844324304390258).epsilon(1e-12));
  }
  SUBCASE("gamma identity across parameters") {
    for (double a : {0.5, 1.0, 3.0})
      for (double kappa : {0.2, 1.0})
        for (double L : {0.5, 2.0}) {
          const auto gl = build_grid(8, 8, 8, L);
          const PhysicalParams p =
              PhysicalParams::make(1.0, kappa, a, 1.7, *gl);
          const BoundSet b = compute_bounds(p);
          CHECK(b.gamma1 * std::min(a, kappa * p.lambda) ==
                doctest::Approx(2.0 * b.gamma0).epsilon(1e-12));
        }
  }
  SUBCASE("alpha = 1 leaves gamma2 and r_grad unset") {
    const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 1.0, *g);
    const BoundSet b = compute_bounds(p);
    CHECK_FALSE(b.gamma2.has_value());
    CHECK_FALSE(b.r_grad.has_value());
    CHECK(b.gamma1 > 0.0);
  }
  SUBCASE("alpha = 0 rejected") {
    const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 0.0, *g);
    CHECK_THROWS_AS(compute_bounds(p), std::invalid_argument);
  }
}

TEST_CASE("uniform_gronwall_bound") {
  CHECK(uniform_gronwall_bound(0, 0, 0, 1) == 0.0);
  CHECK(uniform_gronwall_bound(0, 3.5, 0, 2.0) == doctest::Approx(3.5));
  CHECK(uniform_gronwall_bound(1, 1, 2, 2) ==
        doctest::Approx(5.4365636569180905).epsilon(1e-14));
  CHECK_THROWS_AS(uniform_gronwall_bound(1, 1, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_gronwall_bound(-1, 1, 1, 1), std::invalid_argument);

  SUBCASE("monotone in a1, a2, a3 and decreasing in s") {
    const double base = uniform_gronwall_bound(1, 2, 3, 4);
    CHECK(uniform_gronwall_bound(1.5, 2, 3, 4) > base);
    CHECK(uniform_gronwall_bound(1, 2.5, 3, 4) > base);
    CHECK(uniform_gronwall_bound(1, 2, 3.5, 4) > base);
    CHECK(uniform_gronwall_bound(1, 2, 3, 4.5) < base);
  }
}

TEST_CASE("check_absorbing_ball") {
  const auto g = build_grid(8, 8, 8, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);
  const BoundSet b = compute_bounds(p);

  SUBCASE("zero trajectory is trivially inside") {
    std::vector<DiagnosticsRecord> recs(5);
    for (int i = 0; i < 5; ++i) recs[i].time = i * 1.0;
    const auto rep = check_absorbing_ball(recs, b, p);
    CHECK(rep.pass_energy);
    CHECK(rep.pass_grad);
    CHECK(rep.pass_envelope);
    CHECK(rep.energy_margin == doctest::Approx(b.gamma1));
  }
  SUBCASE("synthetic decay under the Gronwall envelope") {
    const double rate = 0.5 * std::min(p.a, p.kappa * p.lambda);
    std::vector<DiagnosticsRecord> recs;
    const double E0 = 5.0;
    for (int i = 0; i <= 100; ++i) {
      DiagnosticsRecord r;
      r.time = 0.4 * i;
      // E(t) decaying strictly faster than the envelope
      const double E = E0 * std::exp(-1.2 * rate * r.time);
      r.norms.u_H0 = std::sqrt(0.5 * E);
      r.norms.theta_H1 = std::sqrt(0.5 * E);
      recs.push_back(r);
    }
    const auto rep = check_absorbing_ball(recs, b, p);
    CHECK(rep.pass_energy);
    CHECK(rep.pass_envelope);
  }
  SUBCASE("energy outside the ball fails") {
    std::vector<DiagnosticsRecord> recs(10);
    for (int i = 0; i < 10; ++i) {
      recs[i].time = i * 1.0;
      recs[i].norms.u_H0 = std::sqrt(2.0 * b.gamma1);
    }
    const auto rep = check_absorbing_ball(recs, b, p);
    CHECK_FALSE(rep.pass_energy);
  }
  SUBCASE("too-short trajectory rejected") {
    std::vector<DiagnosticsRecord> recs(1);
    CHECK_THROWS_AS(check_absorbing_ball(recs, b, p), std::invalid_argument);
  }
}

TEST_CASE("max principle and admissibility") {
  const auto g = build_grid(16, 16, 16, 1.0);

  SUBCASE("conduction profile is exactly in range") {
    const auto rep = max_principle_check({State::zero(g)});
    CHECK(rep.pass);
    CHECK(rep.t_min == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.t_max == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("large sine perturbation is inadmissible") {
    State s = State::zero(g);
    s.theta.at(0, 0, 1) = Complex(0.0, -1.0);  // 2 sin(pi z)
    s.theta.at(0, 0, g->nz - 1) = Complex(0.0, 1.0);
    CHECK_FALSE(admissible_initial_temperature(s));
    CHECK_FALSE(max_principle_check({s}).pass);
  }
  SUBCASE("random_state produces admissible data") {
    for (unsigned long long seed : {1ull, 2ull, 3ull}) {
      const State s = random_state(g, 3.0, seed);
      CHECK(admissible_initial_temperature(s));
    }
  }
}

TEST_CASE("monotonicity_check") {
  SUBCASE("alpha = 0 gives ratio identically 1") {
    const auto r = monotonicity_check(0.0, 20000, 1);
    CHECK(r.pass);
    CHECK(r.delta_estimate == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("antipodal closed form bounds the empirical minimum") {
    for (double alpha : {1.5, 2.0, 3.0}) {
      const auto r = monotonicity_check(alpha, 20000, 2);
      CHECK(r.pass);
      CHECK(r.all_nonnegative);
      CHECK(r.delta_estimate > 0.0);
      CHECK(r.delta_estimate <= std::pow(2.0, -2.0 * alpha) + 1e-12);
    }
  }
}

TEST_CASE("sync_error") {
  const auto g = build_grid(16, 16, 16, 1.0);
  const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, 2.0, *g);

  SUBCASE("identical states") {
    const State s = random_state(g, 1.0, 4);
    const SyncError e = sync_error(s, s, p);
    CHECK(e.e_H0 == 0.0);
    CHECK(e.e_Hm1 == 0.0);
    CHECK(e.e_V0dot == 0.0);
  }
  SUBCASE("single theta-mode difference") {
    const double c = 0.3;
    State a = State::zero(g);
    const State b = theta_sine_state(g, c);
    const SyncError e = sync_error(a, b, p);
    // ||sin(pi z)||_2 = L = 1 on the extended box
    CHECK(e.e_Hm1 == doctest::Approx(c / kPi).epsilon(1e-13));
    CHECK(e.e_H0 == 0.0);
  }
  SUBCASE("triangle inequality on random triples") {
    const State x = random_state(g, 1.0, 5);
    const State y = random_state(g, 1.0, 6);
    const State z = random_state(g, 1.0, 7);
    const SyncError xy = sync_error(x, y, p);
    const SyncError yz = sync_error(y, z, p);
    const SyncError xz = sync_error(x, z, p);
    CHECK(xz.e_H0 <= xy.e_H0 + yz.e_H0 + 1e-12);
    CHECK(xz.e_Hm1 <= xy.e_Hm1 + yz.e_Hm1 + 1e-12);
    CHECK(xz.e_V0dot <= xy.e_V0dot + yz.e_V0dot + 1e-12);
  }
  SUBCASE("H^{-1} Poincare chain") {
    const double lambda = compute_lambda(*g);
    const State a = random_state(g, 1.0, 8);
    const State b = random_state(g, 1.0, 9);
    const SyncError e = sync_error(a, b, p);
    SpectralField diff = a.theta;
    axpy(-1.0, b.theta, diff);
    CHECK(e.e_Hm1 <= l2_norm(diff) / std::sqrt(lambda) + 1e-12);
    CHECK(l2_norm(diff) <= h1_seminorm(diff) / std::sqrt(lambda) + 1e-12);
  }
  SUBCASE("grid mismatch rejected") {
    const auto g2 = build_grid(8, 8, 8, 1.0);
    CHECK_THROWS_AS(
        sync_error(random_state(g, 1.0, 10), random_state(g2, 1.0, 10), p),
        std::invalid_argument);
  }
}
