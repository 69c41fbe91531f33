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

#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "bfb/bfb.h"

namespace {

struct RunDeleter {
  void operator()(bfb_run* r) const { bfb_run_free(r); }
};

int report(bfb_run* run, bfb_status st) {
  const char* log = bfb_run_log(run);
  if (log && *log) std::printf("%s\n", log);
  const char* err = bfb_run_last_error(run);
  if (err && *err) std::fprintf(stderr, "error: %s\n", err);
  const char* line = bfb_run_result_line(run);
  if (line && *line) {
    std::printf("%s\n", line);
  } else if (st != BFB_OK) {
    // a failed command may not have produced a summary; synthesize one so
    // the final line stays machine readable
    std::printf("RESULT status=%s\n",
                st == BFB_E_BLOWUP ? "blowup" : "error");
  }
  return bfb_run_exit_code(run);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bfbconv: parity-extended spectral convection solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string diagnostics_path;
  std::string checkpoint_path;

  CLI::App* simulate = app.add_subcommand("simulate", "Reference run");
  simulate->add_option("--config", config_path, "Configuration file")
      ->required();

  CLI::App* assimilate = app.add_subcommand("assimilate", "Twin experiment");
  assimilate->add_option("--config", config_path, "Configuration file")
      ->required();

  CLI::App* verify_bounds = app.add_subcommand(
      "verify-bounds", "Check a diagnostics file against the bound set");
  verify_bounds->add_option("--config", config_path, "Configuration file")
      ->required();
  verify_bounds
      ->add_option("--diagnostics", diagnostics_path, "Diagnostics CSV")
      ->required();

  CLI::App* verify_properties = app.add_subcommand(
      "verify-properties",
      "Monotonicity, interpolant, and spectral property suites");
  verify_properties->add_option("--config", config_path, "Configuration file")
      ->required();

  CLI::App* ckpt_info =
      app.add_subcommand("checkpoint-info", "Describe a checkpoint file");
  ckpt_info->add_option("checkpoint", checkpoint_path, "Checkpoint file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<bfb_run, RunDeleter> run(bfb_run_new());
  if (!run) {
    std::fprintf(stderr, "error: out of memory\n");
    return 1;
  }

  if (ckpt_info->parsed()) {
    const bfb_status st =
        bfb_run_checkpoint_info(run.get(), checkpoint_path.c_str());
    return report(run.get(), st);
  }

  bfb_status st = bfb_run_load_config_file(run.get(), config_path.c_str());
  if (st != BFB_OK) return report(run.get(), st);

  if (simulate->parsed()) {
    st = bfb_run_simulate(run.get());
  } else if (assimilate->parsed()) {
    st = bfb_run_assimilate(run.get());
  } else if (verify_bounds->parsed()) {
    st = bfb_run_verify_bounds(run.get(), diagnostics_path.c_str());
  } else if (verify_properties->parsed()) {
    st = bfb_run_verify_properties(run.get());
  }
  return report(run.get(), st);
}
