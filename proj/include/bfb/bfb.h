/* Copyright 2026 The bfbconv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the bfbconv solver library.  A bfb_run holds one parsed
 * configuration plus the outcome of the last command executed on it.
 * All strings returned by accessors are owned by the handle and stay
 * valid until the next command or bfb_run_free.
 */

#ifndef BFB_BFB_H
#define BFB_BFB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bfb_status {
  BFB_OK = 0,
  BFB_E_INVALID = 1,  /* validation / configuration failure */
  BFB_E_BLOWUP = 2,   /* numerical blow-up mid-run */
  BFB_E_IO = 3,       /* file missing, unreadable, or corrupt */
  BFB_E_INTERNAL = 4
} bfb_status;

typedef struct bfb_run bfb_run;

bfb_run* bfb_run_new(void);
void bfb_run_free(bfb_run* run);

/* Either loader may be called; the last successful load wins. */
bfb_status bfb_run_load_config_file(bfb_run* run, const char* path);
bfb_status bfb_run_load_config_text(bfb_run* run, const char* text);

/* Commands.  Each records a machine-readable summary retrievable via
 * bfb_run_result_line, and a process exit code via bfb_run_exit_code
 * (0 success, 1 validation failure, 2 blow-up). */
bfb_status bfb_run_simulate(bfb_run* run);
bfb_status bfb_run_assimilate(bfb_run* run);
bfb_status bfb_run_verify_bounds(bfb_run* run, const char* diagnostics_path);
bfb_status bfb_run_verify_properties(bfb_run* run);
/* Standalone: needs no loaded config. */
bfb_status bfb_run_checkpoint_info(bfb_run* run, const char* checkpoint_path);

/* "RESULT key=value ..." line of the last command; empty if none ran. */
const char* bfb_run_result_line(const bfb_run* run);
/* Newline-joined human-readable lines to print before the RESULT line. */
const char* bfb_run_log(const bfb_run* run);
/* Message of the last error; empty if the last command succeeded. */
const char* bfb_run_last_error(const bfb_run* run);
int bfb_run_exit_code(const bfb_run* run);

const char* bfb_version(void);

#ifdef __cplusplus
}
#endif

#endif /* BFB_BFB_H */
