#ifndef OPUC_ERRORS_HPP
#define OPUC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opuc {

// Three error families, matching the CLI exit-code taxonomy:
//   DomainError    -> exit 1 (invalid parameters / degenerate configuration)
//   NumericalError -> exit 2 (breakdown of a numerical process)
//   IoError        -> exit 3 (files, config parsing)
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroLeadingCoefficient : public DomainError {
 public:
  ZeroLeadingCoefficient() : DomainError("reciprocal requires a nonzero leading coefficient") {}
};

class PoleInParameter : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidReflectionData : public DomainError {
 public:
  using DomainError::DomainError;
};

// An operation divided by phi_n(0) while the reflection coefficient vanishes.
class DegenerateReflection : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateParameters : public DomainError {
 public:
  using DomainError::DomainError;
};

class PoleAtUnimodularProduct : public DomainError {
 public:
  using DomainError::DomainError;
};

class GridTooCoarse : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoLadderForOperator : public DomainError {
 public:
  using DomainError::DomainError;
};

class CoincidentCharges : public DomainError {
 public:
  using DomainError::DomainError;
};

class PoleOfA : public DomainError {
 public:
  using DomainError::DomainError;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotPositiveDefinite : public NumericalError {
 public:
  NotPositiveDefinite(const std::string& what, int order)
      : NumericalError(what), failing_order(order) {}
  int failing_order;
};

class NumericalBreakdown : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureNotConverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
 public:
  NoConvergence(const std::string& what, double worst)
      : NumericalError(what), worst_residual(worst) {}
  double worst_residual;
};

class SingularityApproached : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace opuc

#endif  // OPUC_ERRORS_HPP
