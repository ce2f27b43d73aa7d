#pragma once

#include <stdexcept>
#include <string>

namespace hyperg {

enum class Errc {
  AxiomViolation,
  DegenerateHaar,
  NotCommutative,
  CharacterDefect,
  NonOrthogonal,
  NotUnitary,
  NotStrong,
  CapExceeded,
  NotAPartition,
  NotClosed,
  EquivalenceFailure,
  ParamOutOfRange,
  NotASubgroup,
  NormDrift,
  Unresolved,
  BadDocument,
  Io,
};

const char* errc_name(Errc c);

/// Library-wide error type; `code()` identifies the failed contract.
class HyperError : public std::runtime_error {
 public:
  HyperError(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace hyperg
