#pragma once

#include <stdexcept>
#include <string>

namespace nobleent {

/// Base of every error raised by the library.
///
/// Errors fall into two families that the CLI maps onto distinct exit codes:
/// input problems (malformed or invalid configuration) and numerical guard
/// failures (a regime or resolution condition of the model is violated).
class Error : public std::runtime_error {
public:
  enum class Family { input, numerical };

  Error(std::string code, Family family, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)), family_(family) {}

  const std::string& code() const noexcept { return code_; }
  Family family() const noexcept { return family_; }

private:
  std::string code_;
  Family family_;
};

class UnsupportedPair : public Error {
public:
  explicit UnsupportedPair(const std::string& message)
      : Error("UnsupportedPair", Family::input, message) {}
};

class OutOfRangeTemperature : public Error {
public:
  explicit OutOfRangeTemperature(const std::string& message)
      : Error("OutOfRangeTemperature", Family::input, message) {}
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& message) : Error("ParseError", Family::input, message) {}
};

/// Invariant violation on a named field. `field()` is a dotted path such as
/// `cell.noble_polarization`.
class ValidationError : public Error {
public:
  ValidationError(std::string field, const std::string& message)
      : Error("ValidationError", Family::input, field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// |Delta| too small compared with gamma_a, J or Q.
class OffResonanceViolation : public Error {
public:
  explicit OffResonanceViolation(const std::string& message)
      : Error("OffResonanceViolation", Family::numerical, message) {}
};

/// |delta_e| too small compared with the optical linewidth.
class DispersiveRegimeViolation : public Error {
public:
  explicit DispersiveRegimeViolation(const std::string& message)
      : Error("DispersiveRegimeViolation", Family::numerical, message) {}
};

class StepTooLarge : public Error {
public:
  explicit StepTooLarge(const std::string& message)
      : Error("StepTooLarge", Family::numerical, message) {}
};

class DegenerateMeasurement : public Error {
public:
  explicit DegenerateMeasurement(const std::string& message)
      : Error("DegenerateMeasurement", Family::numerical, message) {}
};

}  // namespace nobleent
