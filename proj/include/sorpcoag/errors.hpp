#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace sorpcoag {

enum class ErrorKind {
  config,            // invalid or inconsistent configuration
  domain,            // argument outside the domain of a function
  model_validation,  // rate model breaks monotonicity in r
  kernel_validation, // negative or asymmetric kernel
  input_validation,  // negative initial data
  normalization,     // zero field cannot be normalized
  cfl,               // time step violates the stability gate
  numerical,         // NaN/Inf or negativity beyond rounding
  io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::int64_t> step = std::nullopt)
      : std::runtime_error(what), kind_(kind), step_(step) {}

  ErrorKind kind() const { return kind_; }
  /// Step index at which a numerical failure was detected, if any.
  std::optional<std::int64_t> step() const { return step_; }

 private:
  ErrorKind kind_;
  std::optional<std::int64_t> step_;
};

/// Process exit status associated with an error kind:
/// 1 configuration, 2 numerical failure, 3 I/O failure.
int exit_status(ErrorKind kind);

}  // namespace sorpcoag
