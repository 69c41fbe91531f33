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

#ifndef BFB_INTEGRATOR_HPP
#define BFB_INTEGRATOR_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "bfb/diagnostics.hpp"
#include "bfb/model.hpp"

namespace bfb {

struct IntegratorConfig {
  double dt_init = 1e-3;
  double cfl_number = 0.5;
  double t_end = 1.0;
  double max_dt = 1e-2;
  double min_dt = 1e-8;
  int sample_every = 10;
  bool adaptive = true;  // fixed dt = dt_init when false

  void validate() const;
};

struct Trajectory {
  std::vector<DiagnosticsRecord> samples;
  State final_state;
  std::vector<State> checkpoints;  // populated when keep_states is set
};

/// Thrown when non-finite values appear; carries the partial trajectory.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(double t, Trajectory partial)
      : std::runtime_error("numerical blow-up at t = " + std::to_string(t)),
        time(t),
        trajectory(std::move(partial)) {}
  double time;
  Trajectory trajectory;
};

/// Explicit (non-diffusive) right-hand side of the system being stepped.
using ExplicitRhs = std::function<Tendency(const State&)>;

/// One step of the second-order integrating-factor scheme: diffusion is
/// integrated exactly per mode, everything else by a two-stage explicit
/// rule under the integrating factor.  The result is parity-projected,
/// Leray-projected, and dealiased.
State step(const State& s, double dt, const PhysicalParams& p,
           const ExplicitRhs& rhs);

/// CFL and explicit-damping step bound, clamped to [min_dt, max_dt].
double adaptive_dt(const State& s, const PhysicalParams& p,
                   const IntegratorConfig& cfg);

/// Invoked at every sample; dt is the step just taken (0 at t = 0).
using Observer = std::function<void(const State&, double dt)>;

Trajectory integrate(const State& state0, const PhysicalParams& p,
                     const IntegratorConfig& cfg, const ExplicitRhs& rhs,
                     const std::vector<Observer>& observers = {},
                     bool keep_states = false);

}  // namespace bfb

#endif  // BFB_INTEGRATOR_HPP
