#pragma once

#include "mch/config.hpp"

namespace mch {

struct RunResult {
  Termination termination = Termination::reached_t_end;
  int exit_code = 0;
  std::string out_dir;
};

// Exit codes: 0 reached_t_end, 2 blowup_detected, 3 dt_underflow,
// 4 nonfinite. (1 is reserved for usage and configuration errors.)
int exit_code_for(Termination t);

// Build the initial datum described by the config on the config's grid.
Field build_initial(const RunConfig& cfg);

// Execute the run: simulate, evaluate the enabled diagnostics, and write
// timeseries.csv, snapshot files, bounds.json, diagnostics.json and
// manifest.json into cfg.out_dir. Byte-identical outputs for identical
// configs on one platform.
RunResult run(const RunConfig& cfg);

// Re-validate the invariants that emitted files must satisfy: a strictly
// increasing time column, finite values, H0 = I1 and H1 = I2/4. Returns the
// list of violations (empty when the directory checks out).
std::vector<std::string> check_output_dir(const std::string& dir);

}  // namespace mch
