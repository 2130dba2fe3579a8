#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace monobn {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single violated structural invariant of a network.
struct Violation {
  std::string location;  ///< e.g. "cpt C row 2", "arcs", "roles"
  std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Raised when a network draft fails validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Raised when a posterior is requested for evidence of probability zero.
class ZeroEvidenceError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an MBN document.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace monobn
