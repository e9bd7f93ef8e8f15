#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bisector_lab {

enum class ErrorCode {
  NotPrime,
  NotOdd,
  ModulusOutOfRange,
  ZeroInverse,
  IsotropicOrEqualPair,
  ModulusMismatch,
  EmptyInput,
  EmptySet,
  Mod4Mismatch,
  UnsolvableTerm,
  SizeTooLarge,
  TooLarge,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bisector_lab
