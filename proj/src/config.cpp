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

#include "bfb/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace bfb {

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error([&violations] {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  - " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct Parser {
  std::map<std::string, std::string> kv;
  std::vector<std::string> errors;

  void load(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        errors.push_back("line " + std::to_string(lineno) +
                         ": expected key = value");
        continue;
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (key.empty() || val.empty()) {
        errors.push_back("line " + std::to_string(lineno) +
                         ": empty key or value");
        continue;
      }
      if (kv.count(key))
        errors.push_back("duplicate key '" + key + "'");
      kv[key] = val;
    }
  }

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  template <typename T, typename Conv>
  void take(const std::string& key, T& out, Conv conv) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    try {
      out = conv(it->second);
    } catch (const std::exception&) {
      errors.push_back("key '" + key + "': cannot parse value '" + it->second +
                       "'");
    }
    kv.erase(it);
  }

  void take_d(const std::string& key, double& out) {
    take(key, out, [](const std::string& s) {
      size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    });
  }
  void take_i(const std::string& key, int& out) {
    take(key, out, [](const std::string& s) {
      size_t pos = 0;
      const int v = std::stoi(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    });
  }
  void take_u64(const std::string& key, unsigned long long& out) {
    take(key, out, [](const std::string& s) {
      size_t pos = 0;
      const unsigned long long v = std::stoull(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    });
  }
  void take_s(const std::string& key, std::string& out) {
    take(key, out, [](const std::string& s) { return s; });
  }
  void take_b(const std::string& key, bool& out) {
    take(key, out, [](const std::string& s) {
      if (s == "true" || s == "1" || s == "yes") return true;
      if (s == "false" || s == "0" || s == "no") return false;
      throw std::invalid_argument(s);
    });
  }

  void require(bool cond, const std::string& msg) {
    if (!cond) errors.push_back(msg);
  }
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  Parser p;
  p.load(text);
  RunConfig c;

  const bool assim_requested =
      p.has("assimilation.mu") || p.has("assimilation.interpolant") ||
      p.has("assimilation.h") || p.has("assimilation.cadence") ||
      p.has("assimilation.v0") || p.has("assimilation.v0_radius");

  p.take_i("grid.nx", c.nx);
  p.take_i("grid.ny", c.ny);
  p.take_i("grid.nz", c.nz);
  p.take_d("grid.L", c.L);
  p.take_d("grid.dealias_fraction", c.dealias_fraction);

  p.take_d("physics.nu", c.nu);
  p.take_d("physics.kappa", c.kappa);
  p.take_d("physics.a", c.a);
  p.take_d("physics.alpha", c.alpha);

  p.take_d("integration.dt_init", c.integ.dt_init);
  p.take_d("integration.cfl", c.integ.cfl_number);
  p.take_d("integration.t_end", c.integ.t_end);
  p.take_d("integration.max_dt", c.integ.max_dt);
  p.take_d("integration.min_dt", c.integ.min_dt);
  p.take_i("integration.sample_every", c.integ.sample_every);
  p.take_b("integration.adaptive", c.integ.adaptive);

  p.take_s("init.kind", c.init_kind);
  p.take_d("init.energy", c.init_energy);
  p.take_s("init.checkpoint", c.init_checkpoint);

  c.has_assimilation = assim_requested;
  p.take_d("assimilation.mu", c.mu);
  p.take_s("assimilation.interpolant", c.interpolant_kind);
  p.take_d("assimilation.h", c.interp_h);
  p.take_i("assimilation.cadence", c.observation_cadence);
  p.take_s("assimilation.v0", c.v0_strategy);
  p.take_d("assimilation.v0_radius", c.v0_radius);

  p.take_s("output.diagnostics", c.diagnostics_path);
  p.take_s("output.checkpoint", c.checkpoint_path);
  p.take_i("output.checkpoint_every", c.checkpoint_every);

  p.take_u64("seed", c.seed);

  for (const auto& [key, val] : p.kv)
    p.errors.push_back("unknown key '" + key + "'");

  // validate against module preconditions before any allocation
  auto even_ok = [](int n) { return n >= 4 && n % 2 == 0; };
  p.require(even_ok(c.nx), "grid.nx must be even and >= 4");
  p.require(even_ok(c.ny), "grid.ny must be even and >= 4");
  p.require(even_ok(c.nz), "grid.nz must be even and >= 4");
  p.require(c.L > 0.0, "grid.L must be > 0");
  p.require(c.dealias_fraction > 0.0 && c.dealias_fraction <= 1.0,
            "grid.dealias_fraction must lie in (0,1]");
  p.require(c.nu > 0.0, "physics.nu must be > 0");
  p.require(c.kappa > 0.0, "physics.kappa must be > 0");
  p.require(c.a > 0.0, "physics.a must be > 0");
  p.require(c.alpha >= 0.0, "physics.alpha must be >= 0");
  p.require(c.integ.min_dt > 0.0 && c.integ.min_dt <= c.integ.dt_init &&
                c.integ.dt_init <= c.integ.max_dt,
            "integration: require 0 < min_dt <= dt_init <= max_dt");
  p.require(c.integ.cfl_number > 0.0 && c.integ.cfl_number <= 1.0,
            "integration.cfl must lie in (0,1]");
  p.require(c.integ.t_end >= 0.0, "integration.t_end must be >= 0");
  p.require(c.integ.sample_every >= 1, "integration.sample_every must be >= 1");
  p.require(c.init_kind == "conduction" || c.init_kind == "random" ||
                c.init_kind == "checkpoint",
            "init.kind must be conduction, random, or checkpoint");
  p.require(c.init_energy >= 0.0, "init.energy must be >= 0");
  if (c.init_kind == "checkpoint")
    p.require(!c.init_checkpoint.empty(),
              "init.checkpoint path required for init.kind = checkpoint");
  if (c.has_assimilation) {
    p.require(c.mu > 0.0, "assimilation.mu must be > 0");
    p.require(c.interpolant_kind == "modal" || c.interpolant_kind == "volume",
              "assimilation.interpolant must be modal or volume");
    p.require(c.interp_h > 0.0 && c.interp_h < std::min(c.L, 2.0),
              "assimilation.h must lie in (0, min(L,2))");
    p.require(c.observation_cadence >= 1,
              "assimilation.cadence must be >= 1");
    p.require(c.v0_strategy == "zero" || c.v0_strategy == "random_ball",
              "assimilation.v0 must be zero or random_ball");
  }
  p.require(c.checkpoint_every >= 0, "output.checkpoint_every must be >= 0");

  if (!p.errors.empty()) throw ConfigError(std::move(p.errors));
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError({"cannot open config file '" + path + "'"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

GridPtr RunConfig::make_grid() const {
  return build_grid(nx, ny, nz, L, dealias_fraction);
}

PhysicalParams RunConfig::make_params(const Grid& grid) const {
  return PhysicalParams::make(nu, kappa, a, alpha, grid);
}

InterpolantSpec RunConfig::make_interpolant() const {
  InterpolantSpec spec;
  spec.kind = interpolant_kind == "modal" ? InterpolantKind::ModalLowPass
                                          : InterpolantKind::VolumeAverage;
  spec.h = interp_h;
  return spec;
}

TwinExperimentConfig RunConfig::make_twin() const {
  TwinExperimentConfig t;
  t.mu = mu;
  t.spec = make_interpolant();
  t.v0_strategy = v0_strategy == "zero" ? InitStrategy::Zero
                                        : InitStrategy::RandomBall;
  t.v0_radius = v0_radius;
  t.observation_cadence = observation_cadence;
  t.seed = seed;
  return t;
}

}  // namespace bfb
