#ifndef QGV_ERRORS_HPP
#define QGV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qgv {

// Base class for all qgv failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands have incompatible orders.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A pivot fell below the working tolerance during elimination.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// A matrix that must be unitary is not, at the working tolerance.
class NotUnitary : public Error {
 public:
  using Error::Error;
};

// The Gram system of the quadratic fit is singular (U is a scalar matrix).
class DegenerateGram : public Error {
 public:
  using Error::Error;
};

// The quadratic-closure residual exceeds the membership threshold.
class MoreThanTwoEigenvalues : public Error {
 public:
  MoreThanTwoEigenvalues(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// A computed quantity violates a structural guarantee (an eigenvalue off the
// unit circle, a recovered M that fails M^2 = I, a projector trace that is
// not close to an integer).
class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

// The supplied matrix is not Hermitian unitary at the working tolerance.
class NotHermitianUnitary : public Error {
 public:
  using Error::Error;
};

// The (a, b) pair fails |a| = 1 or |a + n b| = 1.
class NotUnitaryPS : public Error {
 public:
  using Error::Error;
};

// The matrix does not have equal diagonal moduli and equal off-diagonal
// moduli, or it is diagonal where a non-diagonal matrix is required.
class NotMPS : public Error {
 public:
  using Error::Error;
};

// The spectral form has a single eigenvalue phase where two are required.
class DegenerateForm : public Error {
 public:
  using Error::Error;
};

// Requested curvature factor lies outside the admissible interval.
class COutOfRange : public Error {
 public:
  COutOfRange(const std::string& what, double upper, bool upper_closed)
      : Error(what), upper_(upper), upper_closed_(upper_closed) {}
  // Upper end of the admissible interval starting at 0; +inf when open-ended.
  double upper() const { return upper_; }
  bool upper_closed() const { return upper_closed_; }

 private:
  double upper_;
  bool upper_closed_;
};

// Mixing angle outside (-pi/2, pi/2) or exactly 0.
class InvalidXi : public Error {
 public:
  using Error::Error;
};

// The chosen reference entry of M vanishes, so ratios against it diverge.
class ZeroReference : public Error {
 public:
  using Error::Error;
};

// Exhaustive sign search requested beyond the supported order.
class OrderTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace qgv

#endif  // QGV_ERRORS_HPP
