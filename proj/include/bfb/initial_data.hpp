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

#ifndef BFB_INITIAL_DATA_HPP
#define BFB_INITIAL_DATA_HPP

#include "bfb/model.hpp"

namespace bfb {

/// Random low-mode state with the correct parities, divergence-free
/// velocity, scaled so ||u||^2 + ||theta||^2 = energy.  The temperature
/// part is kept small enough that T = theta + (1-z) stays inside [0,1]
/// (admissible data for the maximum-principle check).
State random_state(const GridPtr& grid, double energy,
                   unsigned long long seed, int max_mode = 2,
                   double theta_energy_fraction = 0.02);

/// Random zero-mean OddInZ scalar field, band-limited to |m| <= max_mode,
/// normalized to unit L2 norm.  Test utility.
SpectralField random_odd_field(const GridPtr& grid, unsigned long long seed,
                               int max_mode = 3);
SpectralField random_even_field(const GridPtr& grid, unsigned long long seed,
                                int max_mode = 3);

/// Random divergence-free velocity triple of unit H0 norm.
VecField random_velocity(const GridPtr& grid, unsigned long long seed,
                         int max_mode = 3);

}  // namespace bfb

#endif  // BFB_INITIAL_DATA_HPP
