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

#ifndef BFB_RUNNER_HPP
#define BFB_RUNNER_HPP

#include <string>
#include <utility>
#include <vector>

#include "bfb/config.hpp"
#include "bfb/io.hpp"

namespace bfb {

/// Outcome of a top-level command.  exit_code: 0 success, 1 validation
/// failure, 2 numerical blow-up.  result_line() renders the final
/// machine-readable "RESULT key=value ..." line.
struct RunResult {
  int exit_code = 0;
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::string> log;  // human-readable lines, printed before RESULT

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long long value);
  std::string result_line() const;
};

/// Reads BFB_THREADS; this build runs single-threaded, so any positive
/// value is accepted and capped at 1.  Throws ConfigError on junk.
int effective_threads();

RunResult run_simulate(const RunConfig& cfg);
RunResult run_assimilate(const RunConfig& cfg);
RunResult run_verify_bounds(const RunConfig& cfg,
                            const std::string& diagnostics_path);
RunResult run_verify_properties(const RunConfig& cfg);
RunResult run_checkpoint_info(const std::string& checkpoint_path);

}  // namespace bfb

#endif  // BFB_RUNNER_HPP
