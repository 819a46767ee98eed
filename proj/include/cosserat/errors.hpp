#ifndef COSSERAT_ERRORS_HPP
#define COSSERAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cosserat {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Errors raised during energy/derivative evaluation.  The trust-region
/// driver treats these as "reject the trial step" when they occur at a
/// trial point.
class EvaluationError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

/// Metric derivatives requested at the cut locus (rotation angle pi
/// between the arguments, i.e. |<p,q>| ~ 0).
class CutLocusError : public EvaluationError {
public:
  using EvaluationError::EvaluationError;
};

/// log_map has no unique value for antipodal points.
class AntipodalPointsError : public Error {
public:
  using Error::Error;
};

/// Sign canonicalization is undefined when the candidate is orthogonal
/// to the reference.
class AmbiguousSignError : public Error {
public:
  using Error::Error;
};

class NewtonDivergenceError : public EvaluationError {
public:
  using EvaluationError::EvaluationError;
};

class SingularHessianError : public EvaluationError {
public:
  using EvaluationError::EvaluationError;
};

class OutsideElementError : public Error {
public:
  using Error::Error;
};

class InvalidResolutionError : public Error {
public:
  using Error::Error;
};

class DegenerateElementError : public Error {
public:
  using Error::Error;
};

/// Membrane energy blows up as det(U) -> 0; signaled instead of
/// returning a float infinity.
class DegenerateDeformationError : public EvaluationError {
public:
  using EvaluationError::EvaluationError;
};

class NonpositiveDenominatorError : public EvaluationError {
public:
  using EvaluationError::EvaluationError;
};

class SolverFailure : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace cosserat

#endif
