#ifndef ARMTRAJ_ERRORS_HPP_
#define ARMTRAJ_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace armtraj {

/// Root of the library's error hierarchy. Every throw in armtraj derives
/// from this, so callers can catch one type at the boundary.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller-supplied argument or config value failed validation.
/// Maps to process exit code 2.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, std::string reason)
      : Error(field + ": " + reason),
        field_(std::move(field)),
        reason_(std::move(reason)) {}

  const std::string& field() const { return field_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string field_;
  std::string reason_;
};

/// A config or data file could not be parsed. Carries the 1-based line
/// number where parsing stopped. Maps to exit code 2.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(std::move(reason)) {}

  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

/// Filesystem trouble: missing file, unwritable directory, short read.
/// Maps to exit code 4.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

/// A numeric routine could not produce a meaningful result.
/// Maps to exit code 3.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

/// IK could not bring the residual under tolerance for one path sample.
class UnreachableError : public NumericError {
 public:
  UnreachableError(std::size_t sample_index, double residual_mm2)
      : NumericError("target unreachable at sample " +
                     std::to_string(sample_index) +
                     " (residual " + std::to_string(residual_mm2) + " mm^2)"),
        sample_index_(sample_index),
        residual_mm2_(residual_mm2) {}

  std::size_t sample_index() const { return sample_index_; }
  double residual_mm2() const { return residual_mm2_; }

 private:
  std::size_t sample_index_;
  double residual_mm2_;
};

/// Trapezoidal profile constraints cannot be met (accel too small for the
/// requested distance/duration).
class InfeasibleError : public NumericError {
 public:
  explicit InfeasibleError(const std::string& what) : NumericError(what) {}
};

/// Lognormal sigma solve has no solution for the given endpoint time.
class DegenerateDurationError : public NumericError {
 public:
  explicit DegenerateDurationError(const std::string& what)
      : NumericError(what) {}
};

/// SNR is undefined because the programmed speed signal has zero energy.
class ZeroSignalError : public NumericError {
 public:
  explicit ZeroSignalError(const std::string& what) : NumericError(what) {}
};

}  // namespace armtraj

#endif  // ARMTRAJ_ERRORS_HPP_
