#pragma once

#include <string>
#include <vector>

namespace opalg {

/// Batch runner entry point; returns the process exit code.
/// 0: all hard invariants passed (soft flags allowed)
/// 1: invariant failure
/// 2: configuration error
/// 3: numerical failure
int cli_main(const std::vector<std::string>& args);

}  // namespace opalg
