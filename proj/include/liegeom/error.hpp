#pragma once

#include <stdexcept>
#include <string>

namespace liegeom {

enum class ErrorCode {
  InvalidBasisChange,
  UnknownName,
  InvalidArgument,
  NotNilpotent,
  NotADerivation,
  NotSymmetric,
  SearchFailed,
  SpdLoss,
  StepUnderflow,
  Schema,
  Io,
};

const char *to_string(ErrorCode code);

/// Exception carrying a machine-readable category; the CLI maps it to an exit code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace liegeom
