#pragma once

#include "resonf/io.hpp"

#include <iosfwd>

namespace resonf {

enum ExitCode { kPass = 0, kViolations = 1, kInputError = 2 };

const std::vector<std::string>& subcommands();

// Runs one subcommand; writes the human summary to `out` and fills `report`.
int run_subcommand(const std::string& name, const RunConfig& cfg, std::ostream& out, json& report);

// Full command line entry point. JSON goes to <out>/<subcommand>.json, or to stdout with --out -.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace resonf
