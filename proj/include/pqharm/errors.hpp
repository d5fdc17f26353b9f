#ifndef PQHARM_ERRORS_HPP
#define PQHARM_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace pqharm {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two series (or a series and a parameter set) disagree on the valence.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Weights of an affine combination do not sum to one.
class NormalizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The class bound ell*(ell-2-sigma) is not positive.
class DegenerateClassError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The denominator of the class ratio vanished at a point.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, std::complex<double> z)
      : std::runtime_error(what), z_(z) {}
  std::complex<double> where() const noexcept { return z_; }

 private:
  std::complex<double> z_;
};

/// Adaptive quadrature hit its subdivision limit above the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Malformed or schema-violating JSON input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pqharm

#endif  // PQHARM_ERRORS_HPP
