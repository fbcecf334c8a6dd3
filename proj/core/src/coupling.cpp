#include "qgv/coupling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace qgv {

namespace {

constexpr double kPi = std::numbers::pi;

// Unitarity checks on matrices we assembled ourselves run slightly looser
// than the caller's tolerance: the inputs were validated at tol.eps and the
// assembly adds a few rounding steps on top.
Tolerance relaxed(Tolerance tol, double factor) {
  return Tolerance(std::min(factor * tol.eps, 0.5));
}

}  // namespace

double snap_phase(double phi) {
  if (!std::isfinite(phi)) throw Error("snap_phase: non-finite phase");
  phi = std::remainder(phi, 2.0 * kPi);  // lands in [-pi, pi]
  if (phi <= -kPi + kPhaseSnap) return kPi;
  if (std::abs(phi) <= kPhaseSnap) return 0.0;
  if (std::abs(phi - kPi) <= kPhaseSnap) return kPi;
  return phi;
}

VertexCoupling VertexCoupling::from_unitary(ComplexMatrix U, Tolerance tol) {
  if (!is_unitary(U, tol))
    throw NotUnitary("vertex coupling matrix is not unitary at tolerance");
  return VertexCoupling(std::move(U));
}

VertexCoupling VertexCoupling::unchecked(ComplexMatrix U) {
  if (!U.all_finite())
    throw Error("vertex coupling matrix has non-finite entries");
  return VertexCoupling(std::move(U));
}

VertexCoupling from_spectral(double alpha, double beta, const ComplexMatrix& M,
                             Tolerance tol) {
  alpha = snap_phase(alpha);
  beta = snap_phase(beta);
  if (!is_hermitian(M, tol) || !is_unitary(M, tol))
    throw NotHermitianUnitary("from_spectral: M must be Hermitian unitary");

  const int n = M.order();
  const double half = (alpha - beta) / 2.0;
  const Complex phase = std::polar(1.0, (alpha + beta) / 2.0);
  const Complex on_i = phase * std::cos(half);
  const Complex on_m = phase * Complex(0.0, 1.0) * std::sin(half);

  ComplexMatrix U(n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      U(j, l) = on_m * M(j, l);
      if (j == l) U(j, l) += on_i;
    }
  }
  return VertexCoupling::from_unitary(std::move(U), relaxed(tol, 10.0));
}

QuadraticFit quadratic_closure_fit(const ComplexMatrix& U, Tolerance tol) {
  const int n = U.order();
  const ComplexMatrix U2 = U * U;
  const ComplexMatrix eye = ComplexMatrix::identity(n);

  // Normal equations of min ||U^2 - sU - tI||_F over (s, t), in the basis
  // {U, I} of the fitting space.
  const Complex g00 = frobenius_inner(U, U);
  const Complex g01 = frobenius_inner(U, eye);
  const Complex g10 = frobenius_inner(eye, U);
  const Complex g11 = Complex(static_cast<double>(n), 0.0);
  const Complex b0 = frobenius_inner(U, U2);
  const Complex b1 = frobenius_inner(eye, U2);

  // det = n^2 - |trace U|^2, which vanishes exactly when U is a scalar
  // multiple of the identity and the basis degenerates.
  const Complex det = g00 * g11 - g01 * g10;
  if (std::abs(det) <= tol.eps * static_cast<double>(n) * n)
    throw DegenerateGram(
        "quadratic fit: U is (numerically) a scalar matrix, the Gram system "
        "is singular");

  const Complex s = (b0 * g11 - g01 * b1) / det;
  const Complex t = (g00 * b1 - g10 * b0) / det;

  ComplexMatrix diff = U2;
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      diff(j, l) -= s * U(j, l);
      if (j == l) diff(j, l) -= t;
    }
  }
  return QuadraticFit{s, t, frobenius_norm(diff)};
}

TwoEigSpectralForm decompose(const VertexCoupling& coupling, Tolerance tol) {
  const ComplexMatrix& U = coupling.matrix();
  const int n = coupling.degree();

  // Single-eigenvalue case: U is a scalar multiple of I. Convention: M = I,
  // beta = alpha, the projector is the full identity.
  const Complex mean = trace(U) / static_cast<double>(n);
  bool scalar = std::abs(std::abs(mean) - 1.0) <= tol.eps;
  if (scalar) {
    for (int j = 0; j < n && scalar; ++j)
      for (int l = 0; l < n && scalar; ++l) {
        const Complex want = (j == l) ? mean : Complex{};
        if (std::abs(U(j, l) - want) > tol.eps) scalar = false;
      }
  }
  if (scalar) {
    const double phase = snap_phase(std::arg(mean));
    return TwoEigSpectralForm{phase, phase, ComplexMatrix::identity(n), n,
                              true};
  }

  const QuadraticFit fit = quadratic_closure_fit(U, tol);
  if (fit.residual > tol.eps * static_cast<double>(n)) {
    std::ostringstream msg;
    msg << "matrix has more than two eigenvalues (closure residual "
        << fit.residual << " exceeds " << tol.eps * n << ")";
    throw MoreThanTwoEigenvalues(msg.str(), fit.residual);
  }

  // Eigenvalues are the roots of z^2 - s z - t.
  const Complex sq = std::sqrt(fit.s * fit.s + 4.0 * fit.t);
  Complex z1 = (fit.s + sq) / 2.0;
  Complex z2 = (fit.s - sq) / 2.0;
  if (std::abs(std::abs(z1) - 1.0) > 10.0 * tol.eps ||
      std::abs(std::abs(z2) - 1.0) > 10.0 * tol.eps)
    throw NumericalInconsistency(
        "decompose: recovered eigenvalues are off the unit circle");
  z1 /= std::abs(z1);
  z2 /= std::abs(z2);

  double p1 = snap_phase(std::arg(z1));
  double p2 = snap_phase(std::arg(z2));
  // Canonical ordering: |alpha| <= |beta|, ties broken by alpha <= beta.
  bool swap_roots = std::abs(p1) > std::abs(p2) ||
                    (std::abs(p1) == std::abs(p2) && p1 > p2);
  if (swap_roots) {
    std::swap(p1, p2);
    std::swap(z1, z2);
  }
  const double alpha = p1;
  const double beta = p2;

  // P projects onto the alpha eigenspace; M = 2P - I. Exact M is Hermitian,
  // so symmetrizing only removes rounding dust.
  const Complex denom = z1 - z2;
  ComplexMatrix M(n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      Complex p = U(j, l);
      if (j == l) p -= z2;
      p /= denom;
      M(j, l) = 2.0 * p;
      if (j == l) M(j, l) -= 1.0;
    }
  }
  const ComplexMatrix Mh = adjoint(M);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) M(j, l) = (M(j, l) + Mh(j, l)) / 2.0;

  const Tolerance verify = relaxed(tol, 1000.0);
  if (!is_hermitian(M, verify) || !is_unitary(M, verify))
    throw NumericalInconsistency(
        "decompose: recovered M is not Hermitian unitary");

  // trace P = (trace M + n)/2 must be a whole number, the rank of P.
  const double trace_p = (trace(M).real() + n) / 2.0;
  const double rounded = std::round(trace_p);
  if (std::abs(trace_p - rounded) > tol.eps * static_cast<double>(n))
    throw NumericalInconsistency(
        "decompose: projector trace is not close to an integer");
  const int mult = static_cast<int>(rounded);
  if (mult < 1 || mult > n - 1)
    throw NumericalInconsistency(
        "decompose: projector rank outside [1, n-1] for a two-eigenvalue "
        "matrix");

  return TwoEigSpectralForm{alpha, beta, std::move(M), mult, false};
}

VertexCoupling from_ps(Complex a, Complex b, int n, Tolerance tol) {
  if (n < 1) throw DimensionMismatch("from_ps: order must be positive");
  if (std::abs(std::abs(a) - 1.0) > tol.eps)
    throw NotUnitaryPS("from_ps: |a| must be 1");
  if (std::abs(std::abs(a + static_cast<double>(n) * b) - 1.0) > tol.eps)
    throw NotUnitaryPS("from_ps: |a + n b| must be 1");

  ComplexMatrix U(n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      U(j, l) = b;
      if (j == l) U(j, l) += a;
    }
  }
  return VertexCoupling::from_unitary(std::move(U), relaxed(tol, 10.0));
}

VertexCoupling table1(Table1Kind kind, double param, int n) {
  if (n < 2) throw DimensionMismatch("table1: vertex degree must be >= 2");
  const double nn = static_cast<double>(n);
  Complex a;
  Complex b;
  switch (kind) {
    case Table1Kind::Free:
      a = -1.0;
      b = 2.0 / nn;
      break;
    case Table1Kind::Delta:
      a = -1.0;
      b = 2.0 / Complex(nn, param);
      break;
    case Table1Kind::DeltaPrimeS:
      a = 1.0;
      b = -2.0 / Complex(nn, -param);
      break;
    case Table1Kind::DeltaPrime:
      a = -Complex(nn, param) / Complex(nn, -param);
      b = 2.0 / Complex(nn, -param);
      break;
    case Table1Kind::DeltaP:
      a = Complex(nn, -param) / Complex(nn, param);
      b = -2.0 / Complex(nn, param);
      break;
  }
  return from_ps(a, b, n, default_tolerance());
}

bool is_decoupled(const VertexCoupling& coupling, Tolerance tol) {
  return is_diagonal(coupling.matrix(), tol);
}

}  // namespace qgv
