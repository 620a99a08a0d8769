#pragma once

#include <stdexcept>
#include <string>

namespace normlab {

// Common base so the CLI can report the error kind by name.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("DomainError", what) {}
};

struct ZeroVectorError : Error {
  explicit ZeroVectorError(const std::string& what = "norm of the zero vector is 0 by convention; no solve")
      : Error("ZeroVector", what) {}
};

struct NonBracketableError : Error {
  explicit NonBracketableError(const std::string& what) : Error("NonBracketable", what) {}
};

struct EmptySliceSearchError : Error {
  explicit EmptySliceSearchError(const std::string& what) : Error("EmptySliceSearch", what) {}
};

struct BudgetExceededError : Error {
  explicit BudgetExceededError(const std::string& what) : Error("BudgetExceeded", what) {}
};

struct SymmetryViolationError : Error {
  explicit SymmetryViolationError(const std::string& what) : Error("SymmetryViolation", what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

}  // namespace normlab
