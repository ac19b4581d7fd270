#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace invscheme::cli {

/// Runs one command, writing its artifacts under cfg.out. Returns 0 when all
/// checks pass, 1 when a check fails or the numerics fail (an error.json is
/// written then). A one-line verdict goes to `log`.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace invscheme::cli
