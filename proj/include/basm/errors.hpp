#pragma once

#include <stdexcept>
#include <string>

namespace basm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two eigenvalue moduli that downstream code must separate are too close
/// (non-loxodromic element, or numerical breakdown).
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

/// A hyperplane/line pairing that must be nonzero vanished numerically.
class TransversalityFailure : public Error {
 public:
  using Error::Error;
};

/// L^2 = 4: the two roots of x^2 + L x + 1 collide.
class BranchPointError : public Error {
 public:
  using Error::Error;
};

/// The fitted per-level decay ratio of the tail is not below one.
class ExtrapolationUnstable : public Error {
 public:
  using Error::Error;
};

/// Level-sum growth is not decreasing in the exponent.
class NonHyperbolicData : public Error {
 public:
  using Error::Error;
};

/// A tracked path lost a spectral gap or transversality.
class PathLeavesDomain : public Error {
 public:
  PathLeavesDomain(const std::string& what, double t) : Error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

class RefinementBudgetExceeded : public Error {
 public:
  RefinementBudgetExceeded(const std::string& what, double t) : Error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

/// The dimension gate failed at some sample of a path.
class DomainViolation : public Error {
 public:
  DomainViolation(const std::string& what, double t) : Error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

/// Invalid user input (config files, word strings, CLI flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace basm
