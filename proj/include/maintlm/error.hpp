#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace maintlm {

enum class ErrorKind {
  kInvalidArgument,
  kParse,
  kDuplicate,
  kEmptyInput,
  kLengthMismatch,
  kTooFewSamples,
  kZeroVariance,
  kConstantPredictor,
  kSingularSystem,
  kNonFinite,
  kIo,
};

// Every failure raised by the library carries the module it came from so the
// command-line front end can print a one-line "<module>: <message>" diagnostic.
class Error : public std::runtime_error {
 public:
  Error(std::string module, ErrorKind kind, const std::string& message)
      : std::runtime_error(message), module_(std::move(module)), kind_(kind) {}

  const std::string& module() const noexcept { return module_; }
  ErrorKind kind() const noexcept { return kind_; }

 private:
  std::string module_;
  ErrorKind kind_;
};

}  // namespace maintlm
