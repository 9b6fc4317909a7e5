#pragma once

#include <stdexcept>
#include <string>

namespace ca {

enum class ErrorCode {
  MissingField,
  BadValue,
  EmptyInput,
  RaggedRow,
  DuplicateLabel,
  ZeroMargin,
  NegativeEntry,
  TooSmall,
  NonFinite,
  ConvergenceFailure,
  TrivialAxisMissing,
  UnknownNormalization,
  BadDims,
  InputMismatch,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ca
