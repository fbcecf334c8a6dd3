#ifndef QGV_MATRIX_HPP
#define QGV_MATRIX_HPP

#include <complex>
#include <vector>

#include "qgv/errors.hpp"

namespace qgv {

using Complex = std::complex<double>;

// Largest admitted matrix order. All objects here are vertex-degree sized;
// dense storage with partial-pivot elimination is enough at this scale.
inline constexpr int kMaxOrder = 64;

// Absolute tolerance for the entrywise structural predicates.
struct Tolerance {
  double eps;

  explicit Tolerance(double e) : eps(e) {
    if (!(e > 0.0) || !(e < 1.0))
      throw Error("Tolerance.eps must lie in (0, 1)");
  }
};

inline Tolerance default_tolerance() { return Tolerance(1e-10); }

// Dense square complex matrix, row-major, 0-based indexing.
// Entries are kept finite: factory constructors reject NaN and infinity.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int n) : n_(check_order(n)), a_(n * n) {}

  static ComplexMatrix identity(int n);
  static ComplexMatrix all_ones(int n);
  // Builds from nested rows; validates squareness and finiteness.
  static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

  int order() const { return n_; }

  Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
  const Complex& operator()(int r, int c) const {
    return a_[static_cast<size_t>(r) * n_ + c];
  }

  bool all_finite() const;

 private:
  static int check_order(int n) {
    if (n < 1 || n > kMaxOrder)
      throw Error("matrix order must lie in [1, 64]");
    return n;
  }

  int n_;
  std::vector<Complex> a_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

// trace(A^dagger B).
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

Complex trace(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);

// Largest entry modulus.
double max_abs(const ComplexMatrix& a);

// Largest entry modulus of A - B.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Solves A X = B by Gaussian elimination with partial pivoting.
// Throws SingularMatrix when a pivot modulus falls to tol.eps or below.
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b,
                           Tolerance tol = default_tolerance());

// max-norm test of A A^dagger = I.
bool is_unitary(const ComplexMatrix& a, Tolerance tol);

// max-norm test of A = A^dagger.
bool is_hermitian(const ComplexMatrix& a, Tolerance tol);

// All off-diagonal moduli at or below tol.eps.
bool is_diagonal(const ComplexMatrix& a, Tolerance tol);

}  // namespace qgv

#endif  // QGV_MATRIX_HPP
