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

#include "bfb/bfb.h"

#include <optional>
#include <string>

#include "bfb/runner.hpp"

struct bfb_run {
  std::optional<bfb::RunConfig> config;
  std::string result_line;
  std::string log;
  std::string last_error;
  int exit_code = 0;
};

namespace {

bfb_status finish(bfb_run* run, const bfb::RunResult& res) {
  run->result_line = res.result_line();
  run->log.clear();
  for (const auto& line : res.log) {
    if (!run->log.empty()) run->log += '\n';
    run->log += line;
  }
  run->last_error.clear();
  run->exit_code = res.exit_code;
  switch (res.exit_code) {
    case 0:
      return BFB_OK;
    case 2:
      return BFB_E_BLOWUP;
    default:
      return BFB_E_INVALID;
  }
}

template <typename Fn>
bfb_status guarded(bfb_run* run, Fn fn) {
  if (!run) return BFB_E_INVALID;
  try {
    return fn();
  } catch (const bfb::BlowupError& e) {
    run->last_error = e.what();
    run->exit_code = 2;
    return BFB_E_BLOWUP;
  } catch (const bfb::ConfigError& e) {
    run->last_error = e.what();
    run->exit_code = 1;
    return BFB_E_INVALID;
  } catch (const std::invalid_argument& e) {
    run->last_error = e.what();
    run->exit_code = 1;
    return BFB_E_INVALID;
  } catch (const std::runtime_error& e) {
    run->last_error = e.what();
    run->exit_code = 1;
    return BFB_E_IO;
  } catch (const std::exception& e) {
    run->last_error = e.what();
    run->exit_code = 1;
    return BFB_E_INTERNAL;
  }
}

bfb_status need_config(bfb_run* run) {
  if (run->config) return BFB_OK;
  run->last_error = "no configuration loaded";
  run->exit_code = 1;
  return BFB_E_INVALID;
}

}  // namespace

extern "C" {

bfb_run* bfb_run_new(void) { return new (std::nothrow) bfb_run; }

void bfb_run_free(bfb_run* run) { delete run; }

bfb_status bfb_run_load_config_file(bfb_run* run, const char* path) {
  return guarded(run, [&]() -> bfb_status {
    if (!path) throw bfb::ConfigError({"config path is null"});
    run->config = bfb::parse_config_file(path);
    run->last_error.clear();
    run->exit_code = 0;
    return BFB_OK;
  });
}

bfb_status bfb_run_load_config_text(bfb_run* run, const char* text) {
  return guarded(run, [&]() -> bfb_status {
    if (!text) throw bfb::ConfigError({"config text is null"});
    run->config = bfb::parse_config(text);
    run->last_error.clear();
    run->exit_code = 0;
    return BFB_OK;
  });
}

bfb_status bfb_run_simulate(bfb_run* run) {
  return guarded(run, [&]() -> bfb_status {
    if (bfb_status st = need_config(run); st != BFB_OK) return st;
    return finish(run, bfb::run_simulate(*run->config));
  });
}

bfb_status bfb_run_assimilate(bfb_run* run) {
  return guarded(run, [&]() -> bfb_status {
    if (bfb_status st = need_config(run); st != BFB_OK) return st;
    return finish(run, bfb::run_assimilate(*run->config));
  });
}

bfb_status bfb_run_verify_bounds(bfb_run* run, const char* diagnostics_path) {
  return guarded(run, [&]() -> bfb_status {
    if (bfb_status st = need_config(run); st != BFB_OK) return st;
    if (!diagnostics_path)
      throw bfb::ConfigError({"diagnostics path is null"});
    return finish(run, bfb::run_verify_bounds(*run->config, diagnostics_path));
  });
}

bfb_status bfb_run_verify_properties(bfb_run* run) {
  return guarded(run, [&]() -> bfb_status {
    if (bfb_status st = need_config(run); st != BFB_OK) return st;
    return finish(run, bfb::run_verify_properties(*run->config));
  });
}

bfb_status bfb_run_checkpoint_info(bfb_run* run, const char* checkpoint_path) {
  return guarded(run, [&]() -> bfb_status {
    if (!checkpoint_path)
      throw bfb::ConfigError({"checkpoint path is null"});
    return finish(run, bfb::run_checkpoint_info(checkpoint_path));
  });
}

const char* bfb_run_result_line(const bfb_run* run) {
  return run ? run->result_line.c_str() : "";
}

const char* bfb_run_log(const bfb_run* run) {
  return run ? run->log.c_str() : "";
}

const char* bfb_run_last_error(const bfb_run* run) {
  return run ? run->last_error.c_str() : "";
}

int bfb_run_exit_code(const bfb_run* run) { return run ? run->exit_code : 1; }

const char* bfb_version(void) { return "0.1.0"; }

}  // extern "C"
