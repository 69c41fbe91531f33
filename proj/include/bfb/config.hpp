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

#ifndef BFB_CONFIG_HPP
#define BFB_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "bfb/assimilation.hpp"

namespace bfb {

/// Full run configuration, parsed from a plain-text key-value document
/// with dotted section prefixes:
///
///   grid.nx = 32
///   physics.nu = 1.0
///   integration.t_end = 10
///   seed = 7
///
/// '#' starts a comment.  Unknown keys are errors; all violations are
/// collected before reporting.
struct RunConfig {
  // grid
  int nx = 16, ny = 16, nz = 16;
  double L = 1.0;
  double dealias_fraction = 2.0 / 3.0;
  // physics
  double nu = 1.0, kappa = 1.0, a = 1.0, alpha = 2.0;
  // integration
  IntegratorConfig integ;
  // initial data
  std::string init_kind = "random";  // conduction | random | checkpoint
  double init_energy = 1.0;
  std::string init_checkpoint;
  // assimilation (optional section)
  bool has_assimilation = false;
  double mu = 50.0;
  std::string interpolant_kind = "modal";  // modal | volume
  double interp_h = 0.25;
  int observation_cadence = 1;
  std::string v0_strategy = "zero";  // zero | random_ball
  double v0_radius = 0.0;
  // output
  std::string diagnostics_path;
  std::string checkpoint_path;
  int checkpoint_every = 0;  // 0 disables periodic checkpoints
  // randomness
  unsigned long long seed = 0;

  GridPtr make_grid() const;
  PhysicalParams make_params(const Grid& grid) const;
  InterpolantSpec make_interpolant() const;
  TwinExperimentConfig make_twin() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Parses and validates; throws ConfigError listing every violation.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace bfb

#endif  // BFB_CONFIG_HPP
