#pragma once

#include <stdexcept>
#include <string>

namespace dkg {

/// Input outside the mathematical domain of an operation (|gamma| >= 1,
/// negative radicand, E < -m, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A bracket scan found no sign change of an energy condition.
class NoRootFound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The gauge factor exp(-B Z^2) is not normalizable (eta (E + m) <= 0).
class GaugeDomainError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Internal algebra check failed; indicates a bug, not bad input.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class CalibrationFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Richardson estimate of a grid eigenvalue exceeded the accepted threshold.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonlinearIterationDiverged : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace dkg
