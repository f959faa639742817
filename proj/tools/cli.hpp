#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liegeom::cli {

enum Exit : int {
  kOk = 0,
  kIoOrSchema = 1,
  kValidation = 2,
  kSolverFailure = 3,
};

/// Runs one command. args excludes the program name. Reports go to `out`
/// unless -o names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
        std::ostream &err);

} // namespace liegeom::cli
