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

#ifndef BFB_ASSIMILATION_HPP
#define BFB_ASSIMILATION_HPP

#include <optional>
#include <vector>

#include "bfb/integrator.hpp"

namespace bfb {

enum class InterpolantKind { ModalLowPass, VolumeAverage };

/// Observation operator at resolution h.
///  - ModalLowPass zeroes every coefficient with |k|_inf > 2*pi/h; its
///    type-1 constant is c0 = 1/(4 pi^2) from the Fourier tail bound.
///  - VolumeAverage replaces values by box means on a partition of the
///    half domain (even z extension), boxes anchored at the corner and
///    sized to evenly divide the grid.
struct InterpolantSpec {
  InterpolantKind kind = InterpolantKind::ModalLowPass;
  double h = 0.25;
  double c0 = 1.0 / (4.0 * 9.869604401089358);  // 1/(4 pi^2)
  double c1 = 0.0;

  void validate(const Grid& grid) const;  // throws on unusable h
  /// Box sizes are rounded to divide the grid; the realized h (largest
  /// box side) is what the bound certification uses.
  double realized_h(const Grid& grid) const;
};

SpectralField apply_interpolant(const SpectralField& f,
                                const InterpolantSpec& spec);

struct InterpolantBoundResult {
  double worst_ratio = 0.0;
  bool pass = false;
  double certified_c0 = 0.0;  // worst_ratio * 1.5 for VolumeAverage
};

/// Monte-Carlo verification of ||psi - I_h psi||^2 <= c0 h^2 ||grad psi||^2
/// on random band-limited EvenInZ fields.
InterpolantBoundResult verify_interpolant_bound(const InterpolantSpec& spec,
                                                const GridPtr& grid,
                                                int n_trials,
                                                unsigned long long rng_seed);

struct ObservationFrame {
  double time = 0.0;
  std::array<SpectralField, 2> u_perp;  // I_h(u1), I_h(u2), EvenInZ
};

struct ObservationStream {
  InterpolantSpec spec;
  std::vector<ObservationFrame> frames;
};

/// Observer recording I_h(u_perp) every `cadence` samples of a reference
/// integration.  Never stores theta, u3, or the unfiltered velocity.
Observer record_observations(ObservationStream& out, const InterpolantSpec& spec,
                             int cadence);

enum class InitStrategy { Zero, RandomBall };

struct TwinExperimentConfig {
  double mu = 50.0;
  InterpolantSpec spec;
  InitStrategy v0_strategy = InitStrategy::Zero;
  double v0_radius = 0.0;
  int observation_cadence = 1;  // integrator steps between frames
  unsigned long long seed = 0;

  void validate() const;
};

struct SyncSample {
  double time = 0.0;
  SyncError error;
};

struct TwinExperimentResult {
  std::vector<SyncSample> series;
  std::vector<DiagnosticsRecord> records;  // reference norms + sync errors
  double rate = 0.0;      // fitted exponential decay rate of e_H0
  double r_squared = 0.0;
  State final_reference;
  State final_nudged;
};

/// Runs the reference system and the nudged system in lockstep with a
/// shared step size, feeding ModalLowPass/VolumeAverage observations of
/// u_perp at the configured cadence.
TwinExperimentResult run_twin_experiment(const State& reference_init,
                                         const PhysicalParams& params,
                                         const IntegratorConfig& integ,
                                         const TwinExperimentConfig& twin);

struct DecayFit {
  double rate = 0.0;  // negated slope of log e(t); +inf for all-zero series
  double r_squared = 0.0;
  bool all_zero = false;
};

/// Least-squares exponential fit after trimming the leading transient
/// (default 20%).  A series hitting exactly zero is fitted on its
/// positive prefix.
DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& series,
                        double trim_fraction = 0.2);

}  // namespace bfb

#endif  // BFB_ASSIMILATION_HPP
