#pragma once

// The wt1 command line: classify, batch, gen-dihedral, validate, sturm, discs.

#include <iosfwd>
#include <string>
#include <vector>

namespace wt1::cli {

enum ExitCode : int {
  kDefinitive = 0,
  kError = 1,
  kInconclusive = 2,
  kUsage = 64,
  kFileError = 66,
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace wt1::cli
