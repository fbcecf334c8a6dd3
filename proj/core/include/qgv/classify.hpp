#ifndef QGV_CLASSIFY_HPP
#define QGV_CLASSIFY_HPP

#include <optional>

#include "qgv/coupling.hpp"
#include "qgv/errors.hpp"
#include "qgv/matrix.hpp"
#include "qgv/mps.hpp"

namespace qgv {

// The four behaviours of the reflection-to-transmission ratio rho(k), plus
// the decoupled case and the upstream rejection marker.
//   TypeI:   {alpha, beta} = {0, pi}; S(k) constant in k.
//   TypeII:  beta = pi, alpha elsewhere; rho = d^2 + c/k^2 (generalized
//            delta, principal parameter gamma = -n tan(alpha/2)).
//   TypeIII: alpha = 0, beta elsewhere; rho = d^2 + c k^2 (generalized
//            delta', principal parameter gamma' = -n cot(beta/2)).
//   TypeIV:  both phases off {0, pi}; mixture angle xi with
//            tan(xi) = tan(alpha/2) tan(beta/2).
enum class CouplingTag {
  Decoupled,
  TypeI_ScaleInvariant,
  TypeII_GeneralizedDelta,
  TypeIII_GeneralizedDeltaPrime,
  TypeIV_Mixed,
  OutsideFamily,
};

struct CouplingClass {
  CouplingTag tag;
  double alpha;
  double beta;
  std::optional<double> gamma;        // TypeII only
  std::optional<double> gamma_prime;  // TypeIII only
  std::optional<double> xi;           // TypeIV only
  // Curvature factor of rho(k), present for types II-IV when M is MPS so
  // that d (and hence rho) is defined.
  std::optional<double> c;
};

// Classify a decomposed coupling. Expects the canonical phase ordering and
// snapping that decompose applies; coupling_is_diagonal comes from
// is_decoupled on the original U and takes precedence over the phase tests.
CouplingClass classify(const TwoEigSpectralForm& form,
                       bool coupling_is_diagonal, int n,
                       Tolerance tol = default_tolerance());

// Closed form of rho(k) = reflection/transmission for an equally-transmitting
// coupling:
//   rho(k) = d^2 + scale * (cc * k + ss / k)^2
// with cc = cos(alpha/2) cos(beta/2), ss = sin(alpha/2) sin(beta/2) and
// scale = (d^2 + n - 1) / sin^2((alpha - beta)/2).
struct RhoCurve {
  double d_squared;
  double scale;
  double cc;
  double ss;

  double evaluate(double k) const {
    const double bracket = cc * k + ss / k;
    return d_squared + scale * bracket * bracket;
  }
};

// Build the curve from a form and the profile of its M. Throws DegenerateForm
// when alpha = beta. The overload without a profile extracts it from form.M
// and throws NotMPS when M is not a non-diagonal MPS matrix.
RhoCurve rho_curve(const TwoEigSpectralForm& form, const MPSProfile& profile,
                   int n);
RhoCurve rho_curve(const TwoEigSpectralForm& form, int n,
                   Tolerance tol = default_tolerance());

// Achievable curvature factors c for type IV at fixed mixing angle xi:
// the whole of (0, inf) when tan(xi) > 0, and (0, upper] with
// upper = (d^2 + n - 1)(1 + tan^2(xi)) / (4 |tan(xi)|) when tan(xi) < 0.
struct CRange {
  double upper;       // +infinity when unbounded
  bool upper_closed;  // true iff the upper end is attained
};

// Throws InvalidXi for xi outside (-pi/2, pi/2) or xi = 0.
CRange c_range(double xi, double d, int n);

// Inverse designs: build a coupling on a given Hermitian unitary MPS matrix M
// whose classification reproduces the requested parameters. Each validates M
// (throws NotHermitianUnitary or NotMPS) and the requested c (throws
// COutOfRange, carrying the admissible interval).
//
// Type II: alpha = sign * 2 arctan(sqrt(c / (d^2 + n - 1))), beta = pi.
VertexCoupling design_type_ii(const ComplexMatrix& M, const MPSProfile& profile,
                              double c, int sign, int n,
                              Tolerance tol = default_tolerance());

// Type III: alpha = 0, cot(beta/2) = sign * sqrt(c / (d^2 + n - 1)).
VertexCoupling design_type_iii(const ComplexMatrix& M,
                               const MPSProfile& profile, double c, int sign,
                               int n, Tolerance tol = default_tolerance());

// Type IV: with u = sqrt((1 + tan^2(xi)) (d^2 + n - 1) / c), tan(alpha/2) is
// a root of T^2 - u T - tan(xi) = 0 (the larger-magnitude root, for a
// deterministic pick) and beta follows from tan(beta/2) = tan(xi) / T.
VertexCoupling design_type_iv(const ComplexMatrix& M, const MPSProfile& profile,
                              double xi, double c, int n,
                              Tolerance tol = default_tolerance());

}  // namespace qgv

#endif  // QGV_CLASSIFY_HPP
