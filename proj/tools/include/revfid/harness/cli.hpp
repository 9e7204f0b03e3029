#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace revfid::harness {

/// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revfid::harness
