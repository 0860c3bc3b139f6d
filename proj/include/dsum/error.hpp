#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsum {

enum class ErrorKind {
  SyntaxError,
  NonHomogeneous,
  IndexOutOfRange,
  SideMismatch,
  DegreeMismatch,
  FieldMismatch,
  DivisionByZero,
  SingularMatrix,
  AmbientMismatch,
  DimensionMismatch,
  ZeroForm,
  CharacteristicGuard,
  NotSmooth,
  KernelDimensionError,
  GuardExceeded,
  UnluckyEvaluationExhausted,
  InternalInconsistency,
  FieldExtensionRequired,
  NotInFiber,
  SizeTooSmall,
  ShapeMismatch,
  AssumptionViolated,
  SchemaError,
};

/// Machine-readable snake_case name, used in CLI error reports.
std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the 0-based byte offset of the offending character.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorKind::SyntaxError,
              what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dsum
