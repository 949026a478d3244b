#pragma once

#include <stdexcept>
#include <string>

namespace qac {

/// Raised for parameter values outside the model's domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class NumericalFailure {
  no_sign_change,
  spinodal,
  missing_minimum,
  no_branch_point,
  not_converged,
  dimension_guard,
};

const char* to_string(NumericalFailure kind);

/// A root find, scan, or refinement that could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(NumericalFailure kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  NumericalFailure kind() const noexcept { return kind_; }

 private:
  NumericalFailure kind_;
};

}  // namespace qac
