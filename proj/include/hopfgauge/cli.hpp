#pragma once

// The hopfgauge command line as a library call, so tests can run it in-process.

#include <string>
#include <vector>

namespace hg {

struct CliResult {
  int exit_code = 0;  // 0 all checks pass, 1 some check failed, 2 bad input
  std::string out;    // the JSON report (empty when --out was given)
  std::string err;
};

/// args excludes the program name, e.g. {"characters", "--taft", "3"}.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace hg
