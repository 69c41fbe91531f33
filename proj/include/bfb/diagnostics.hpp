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

#ifndef BFB_DIAGNOSTICS_HPP
#define BFB_DIAGNOSTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "bfb/model.hpp"

namespace bfb {

struct Norms {
  double u_H0 = 0.0;       // ||u||_2
  double theta_H1 = 0.0;   // ||theta||_2
  double u_V0dot = 0.0;    // ||grad u||_2
  double theta_V1 = 0.0;   // ||grad theta||_2
  double u_L2a2 = 0.0;     // ||u||_{2 alpha + 2}
  double theta_Hm1 = 0.0;  // ||grad inv-Laplacian theta||_2
  std::optional<double> dtu_L2;
};

/// One diagnostics sample; the e_* fields are populated only for
/// assimilation runs.
struct DiagnosticsRecord {
  double time = 0.0;
  Norms norms;
  std::optional<double> e_H0, e_Hm1, e_V0dot;
  double dt = 0.0;
};

/// Closed-form bound set; gamma2 and r_grad require alpha > 1 (alpha = 1
/// makes gamma2 singular and is rejected).
struct BoundSet {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  std::optional<double> gamma2;
  double r_weak = 0.0;              // limsup radius for ||u||^2 + ||theta||^2
  std::optional<double> r_grad;     // limsup radius for ||u||^2_{V0dot}
};

Norms compute_norms(const State& s, const PhysicalParams& p);

BoundSet compute_bounds(const PhysicalParams& p);

/// (a3/s + a2) * exp(a1); s <= 0 rejected.
double uniform_gronwall_bound(double a1, double a2, double a3, double s);

struct AbsorbingBallReport {
  bool pass_energy = false;
  bool pass_grad = false;
  bool pass_envelope = false;
  double trailing_max_energy = 0.0;  // max of u_H0^2 + theta_H1^2 on window
  double trailing_max_grad2 = 0.0;   // max of u_V0dot^2 on window
  double energy_margin = 0.0;        // gamma1 - trailing_max_energy
  double grad_margin = 0.0;
  double worst_envelope_excess = 0.0;  // max of E(t)/envelope(t) - 1
  std::string summary() const;
};

/// Trailing-window absorbing-ball check plus the sample-wise transient
/// envelope E(t) <= E(0) exp(-min(a, kappa lambda) t / 2) + Gamma1.
/// window_fraction is the trailing fraction of the run used as the
/// limsup proxy; envelope_tol is the relative discretization allowance.
AbsorbingBallReport check_absorbing_ball(
    const std::vector<DiagnosticsRecord>& records, const BoundSet& bounds,
    const PhysicalParams& p, double window_fraction = 0.5,
    double envelope_tol = 0.05);

struct MaxPrincipleReport {
  bool pass = false;
  double t_min = 0.0, t_max = 0.0;  // extrema of reconstructed T over samples
  double tol = 0.02;
};

/// Reconstructs T = theta + (1-z) on the half domain for each state and
/// checks T within [-tol, 1+tol].
MaxPrincipleReport max_principle_check(const std::vector<State>& states,
                                       double tol = 0.02);
bool admissible_initial_temperature(const State& s);

/// Empirical strong-monotonicity constant: minimum over random pairs of
///   R = [(|u|^{2a}u - |v|^{2a}v).(u-v)] / [|u-v|^2 (|u|+|v|)^{2a}].
/// A fraction of the sample is placed on the antipodal ray v = -u where
/// R = 2^{-2a} in closed form.
struct MonotonicityResult {
  double delta_estimate = 0.0;
  bool all_nonnegative = false;
  bool pass = false;  // delta_estimate > 0 and all ratios >= 0
};
MonotonicityResult monotonicity_check(double alpha, int n_samples,
                                      unsigned long long rng_seed);

struct SyncError {
  double e_H0 = 0.0;
  double e_Hm1 = 0.0;
  double e_V0dot = 0.0;
};

/// Norm distances between two states on the same grid and time.
SyncError sync_error(const State& ref, const State& nudged,
                     const PhysicalParams& p);

}  // namespace bfb

#endif  // BFB_DIAGNOSTICS_HPP
