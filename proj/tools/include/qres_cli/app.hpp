#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qres::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kParseError = 2,
  kDimensionError = 3,
  kUnknownQuantifier = 4,
};

std::string_view version();

// Runs the command line; reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qres::cli
