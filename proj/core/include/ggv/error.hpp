#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ggv {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation hit the singular locus of an expression (division by zero,
/// ln or sqrt outside its domain).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A metric (or other matrix that must be inverted) is singular at a point.
class SingularMetric : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an expression or a structure file.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found,
             std::size_t line = 0);

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

  /// Same error relocated into a larger text (used by the structure-file reader).
  ParseError at(std::size_t line, std::size_t column_shift) const;

 private:
  std::size_t offset_;
  std::size_t line_;
  std::string expected_;
  std::string found_;
};

class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

/// A hypersurface parametrization has a rank-deficient Jacobian.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Almost-contact identities fail for Sasakian-product inputs.
class AlgebraViolation : public Error {
 public:
  using Error::Error;
};

/// A suite was requested for a target that lacks the data it needs.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ggv
