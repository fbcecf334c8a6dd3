#ifndef QGV_COUPLING_HPP
#define QGV_COUPLING_HPP

#include <optional>

#include "qgv/errors.hpp"
#include "qgv/matrix.hpp"

namespace qgv {

// Phases within this distance of 0 or pi are snapped exactly, so borderline
// couplings classify deterministically instead of landing in the mixed type.
inline constexpr double kPhaseSnap = 1e-9;

// Wrap phi into (-pi, pi] and snap values within kPhaseSnap of 0 or pi.
double snap_phase(double phi);

// A vertex coupling is a unitary matrix U of order n (the vertex degree).
// The boundary conditions it encodes are (U - I) Psi + i (U + I) Psi' = 0.
class VertexCoupling {
 public:
  // Validates unitarity at tol; throws NotUnitary otherwise.
  static VertexCoupling from_unitary(ComplexMatrix U,
                                     Tolerance tol = default_tolerance());
  // Skips the unitarity check. Intended for diagnostics that must accept a
  // possibly corrupt matrix and report on it rather than reject it up front.
  static VertexCoupling unchecked(ComplexMatrix U);

  int degree() const { return u_.order(); }
  const ComplexMatrix& matrix() const { return u_; }

 private:
  explicit VertexCoupling(ComplexMatrix U) : u_(std::move(U)) {}
  ComplexMatrix u_;
};

// Spectral form of a coupling whose U has at most two eigenvalues e^{i alpha}
// and e^{i beta}:
//
//   U = e^{i(alpha+beta)/2} (cos((alpha-beta)/2) I + i sin((alpha-beta)/2) M)
//
// where M = 2P - I is Hermitian unitary and P projects onto the alpha
// eigenspace. Phases are canonically ordered |alpha| <= |beta| (tie broken by
// alpha <= beta). A single-eigenvalue U (scalar multiple of I) is flagged
// degenerate and carries M = I, beta = alpha.
struct TwoEigSpectralForm {
  double alpha;
  double beta;
  ComplexMatrix M;
  int multiplicity_p;  // rank of P = (M + I)/2
  bool degenerate;
};

// Least-squares fit of U^2 = s U + t I in the Frobenius inner product.
// A small residual certifies that U has at most two eigenvalues; the roots of
// z^2 - s z - t then recover them.
struct QuadraticFit {
  Complex s;
  Complex t;
  double residual;  // minimized ||U^2 - sU - tI||_F
};

// Build U from the spectral data. Throws NotHermitianUnitary when M fails
// its predicate at tol.
VertexCoupling from_spectral(double alpha, double beta, const ComplexMatrix& M,
                             Tolerance tol = default_tolerance());

// Fit U^2 = sU + tI by solving the 2x2 Gram system. Throws DegenerateGram
// when U is a scalar multiple of I at tol (the system is singular there);
// callers must handle that case first.
QuadraticFit quadratic_closure_fit(const ComplexMatrix& U,
                                   Tolerance tol = default_tolerance());

// Recover the spectral form of a coupling. Throws MoreThanTwoEigenvalues
// when the closure residual exceeds tol.eps * n, and NumericalInconsistency
// when the recovered eigenvalues leave the unit circle or the recovered M
// fails to be Hermitian unitary.
TwoEigSpectralForm decompose(const VertexCoupling& coupling,
                             Tolerance tol = default_tolerance());

// Permutation-symmetric coupling U = a I + b J. Unitarity requires |a| = 1
// and |a + nb| = 1; throws NotUnitaryPS when either fails at tol.
VertexCoupling from_ps(Complex a, Complex b, int n,
                       Tolerance tol = default_tolerance());

// The named permutation-symmetric families, each a specific (a, b) pair.
// param is gamma for Delta and DeltaP, gamma' for the two delta' variants,
// and ignored for Free.
enum class Table1Kind { Free, Delta, DeltaPrimeS, DeltaPrime, DeltaP };

VertexCoupling table1(Table1Kind kind, double param, int n);

// A decoupled vertex has diagonal U: every edge scatters independently.
bool is_decoupled(const VertexCoupling& coupling,
                  Tolerance tol = default_tolerance());

}  // namespace qgv

#endif  // QGV_COUPLING_HPP
