#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hatlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments or malformed input objects.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The requested computation exceeds its configured budget. `required()` is
/// saturated at UINT64_MAX when the true requirement does not fit.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : Error(what + " (required " + std::to_string(required) + ", budget " +
              std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// A construction precondition that is checked on the data failed.
class ConditionViolated : public Error {
 public:
  using Error::Error;
};

/// A product certificate failed its disjointness or solvability checks.
class CertificateInvalid : public Error {
 public:
  using Error::Error;
};

}  // namespace hatlab
