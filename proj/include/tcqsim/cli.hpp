#pragma once

#include <ostream>
#include <string>

#include "tcqsim/config.hpp"

namespace tcqsim::cli {

/// Execute a parsed run configuration.  Output goes to `out` when given,
/// otherwise to the path from the config/--out resolution ("-" = stdout).
/// `threads` = 0 defers to TCQSIM_THREADS / hardware.  Returns the process
/// exit status (0 on success); errors are thrown.
int run(const config::RunConfig& cfg, int threads = 0,
        std::ostream* out = nullptr);

/// Resolved output file name: --out override, then [output] path, then
/// "<command>.csv".
std::string output_path(const config::RunConfig& cfg,
                        const std::string& override_path);

}  // namespace tcqsim::cli
