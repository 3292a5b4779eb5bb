#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctdg {

/// Entry point of the `ctdgbench` tool. Subcommands: generate, split, inject,
/// detect, evaluate, stats. Returns the process exit code.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctdg
