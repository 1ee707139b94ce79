#pragma once

#include <stdexcept>
#include <string>

namespace tqs {

struct NotUnitaryError : std::runtime_error {
  explicit NotUnitaryError(const std::string& what) : std::runtime_error(what) {}
};

struct NotSymmetricError : std::runtime_error {
  explicit NotSymmetricError(const std::string& what) : std::runtime_error(what) {}
};

struct ConvergenceFailure : std::runtime_error {
  explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

struct NotAProductError : std::runtime_error {
  explicit NotAProductError(const std::string& what) : std::runtime_error(what) {}
};

struct NotSpecialOrthogonalError : std::runtime_error {
  explicit NotSpecialOrthogonalError(const std::string& what)
      : std::runtime_error(what) {}
};

struct NotNegOrthogonalError : std::runtime_error {
  explicit NotNegOrthogonalError(const std::string& what)
      : std::runtime_error(what) {}
};

struct NotLocallyEquivalentError : std::runtime_error {
  explicit NotLocallyEquivalentError(const std::string& what)
      : std::runtime_error(what) {}
};

struct InconsistentPhasesError : std::runtime_error {
  explicit InconsistentPhasesError(const std::string& what)
      : std::runtime_error(what) {}
};

struct NotNormalizedError : std::runtime_error {
  explicit NotNormalizedError(const std::string& what) : std::runtime_error(what) {}
};

struct VerificationFailure : std::runtime_error {
  explicit VerificationFailure(const std::string& what) : std::runtime_error(what) {}
};

// Malformed circuit text; carries the 1-based line number.
struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line(line) {}
  int line;
};

}  // namespace tqs
