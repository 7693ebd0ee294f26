#pragma once

#include <stdexcept>
#include <string>

namespace optcorr {

enum class ErrorCode {
  InvalidArgument = 1,
  Overlap,
  EmptyArgument,
  DimensionMismatch,
  IterationLimit,
  InfiniteMeasure,
  Parse,
  InvalidState,
  UnknownName,
  Uncovered,
  Numerical,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace optcorr
