#pragma once

#include <stdexcept>
#include <string>

namespace frugal {

/// Diagnostic categories, also used as CLI exit codes.
enum class ErrorCategory : int {
  generic = 1,
  parse = 2,
  schema = 3,
  contract = 4,
  infeasible = 5,
  io = 6,
  tuning = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

/// A cell or value that could not be interpreted.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(ErrorCategory::parse, message) {}
};

/// Structural problems: duplicate headers, ragged rows, missing columns.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message) : Error(ErrorCategory::schema, message) {}
};

/// A caller violated an operation's precondition.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message) : Error(ErrorCategory::contract, message) {}
};

/// The request is well-formed but cannot be satisfied by this data
/// (e.g. more stratification bins than minority instances).
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& message) : Error(ErrorCategory::infeasible, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorCategory::io, message) {}
};

/// Raised when feature/instance selection exhausts every violation-score
/// tier without finding a two-class survivor set.
class DegenerateDataError : public Error {
 public:
  explicit DegenerateDataError(const std::string& message)
      : Error(ErrorCategory::infeasible, message) {}
};

/// Raised when no grid configuration could be fitted and scored.
class TuningError : public Error {
 public:
  explicit TuningError(const std::string& message) : Error(ErrorCategory::tuning, message) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

}  // namespace frugal
