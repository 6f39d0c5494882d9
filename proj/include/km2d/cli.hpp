// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace km2d {

enum ExitCode : int {
  kExitPass = 0,
  kExitUsage = 1,
  kExitCheckFailed = 2,
  kExitUnresolved = 3,
};

/// Runs one km2d subcommand. Summaries go to `out`, diagnostics to `err`.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int parse_and_dispatch(int argc, char** argv);

}  // namespace km2d
