#include "qgv/classify.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qgv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double require_tan_xi(double xi) {
  if (!std::isfinite(xi) || std::abs(xi) >= kPi / 2.0 || xi == 0.0)
    throw InvalidXi("mixing angle must lie in (-pi/2, pi/2) and be nonzero");
  return std::tan(xi);
}

// All design targets share the combination d^2 + n - 1 and need M validated
// as Hermitian unitary MPS with the stated profile.
double design_weight(const ComplexMatrix& M, const MPSProfile& profile, int n,
                     Tolerance tol) {
  if (M.order() != n)
    throw DimensionMismatch("design: M order does not match n");
  if (!is_hermitian(M, tol) || !is_unitary(M, tol))
    throw NotHermitianUnitary("design: M must be Hermitian unitary");
  const auto derived = mps_profile(M, tol);
  if (!derived)
    throw NotMPS("design: M is not a non-diagonal MPS matrix");
  if (std::abs(derived->d - profile.d) > 1e-6 * (1.0 + std::abs(profile.d)))
    throw NotMPS("design: supplied profile disagrees with M");
  return derived->d * derived->d + static_cast<double>(n) - 1.0;
}

void require_positive_c(double c) {
  if (!std::isfinite(c) || c <= 0.0)
    throw COutOfRange("curvature factor c must lie in (0, +inf)", kInf, false);
}

}  // namespace

CouplingClass classify(const TwoEigSpectralForm& form,
                       bool coupling_is_diagonal, int n, Tolerance tol) {
  CouplingClass out;
  const double alpha = snap_phase(form.alpha);
  const double beta = snap_phase(form.beta);
  out.alpha = alpha;
  out.beta = beta;

  if (coupling_is_diagonal || form.degenerate) {
    out.tag = CouplingTag::Decoupled;
    return out;
  }

  const auto profile = mps_profile(form.M, tol);
  const auto weight = [&]() {
    return profile->d * profile->d + static_cast<double>(n) - 1.0;
  };

  if (alpha == 0.0 && beta == kPi) {
    out.tag = CouplingTag::TypeI_ScaleInvariant;
  } else if (beta == kPi) {
    out.tag = CouplingTag::TypeII_GeneralizedDelta;
    const double tan_half = std::tan(alpha / 2.0);
    out.gamma = -static_cast<double>(n) * tan_half;
    if (profile) out.c = weight() * tan_half * tan_half;
  } else if (alpha == 0.0) {
    out.tag = CouplingTag::TypeIII_GeneralizedDeltaPrime;
    const double cot_half = 1.0 / std::tan(beta / 2.0);
    out.gamma_prime = -static_cast<double>(n) * cot_half;
    if (profile) out.c = weight() * cot_half * cot_half;
  } else {
    out.tag = CouplingTag::TypeIV_Mixed;
    out.xi = std::atan(std::tan(alpha / 2.0) * std::tan(beta / 2.0));
    if (profile) {
      const double cc = std::cos(alpha / 2.0) * std::cos(beta / 2.0);
      const double ss = std::sin(alpha / 2.0) * std::sin(beta / 2.0);
      const double s = std::sin((alpha - beta) / 2.0);
      out.c = weight() * (cc * cc + ss * ss) / (s * s);
    }
  }
  return out;
}

RhoCurve rho_curve(const TwoEigSpectralForm& form, const MPSProfile& profile,
                   int n) {
  const double alpha = form.alpha;
  const double beta = form.beta;
  if (form.degenerate || alpha == beta)
    throw DegenerateForm("rho_curve: form has a single eigenvalue phase");
  const double s = std::sin((alpha - beta) / 2.0);
  RhoCurve curve;
  curve.d_squared = profile.d * profile.d;
  curve.scale =
      (curve.d_squared + static_cast<double>(n) - 1.0) / (s * s);
  curve.cc = std::cos(alpha / 2.0) * std::cos(beta / 2.0);
  curve.ss = std::sin(alpha / 2.0) * std::sin(beta / 2.0);
  return curve;
}

RhoCurve rho_curve(const TwoEigSpectralForm& form, int n, Tolerance tol) {
  // A single-phase form has no curve no matter what M looks like.
  if (form.degenerate || form.alpha == form.beta)
    throw DegenerateForm("rho_curve: form has a single eigenvalue phase");
  const auto profile = mps_profile(form.M, tol);
  if (!profile)
    throw NotMPS("rho_curve: M is not a non-diagonal MPS matrix");
  return rho_curve(form, *profile, n);
}

CRange c_range(double xi, double d, int n) {
  if (n < 2) throw DimensionMismatch("c_range: n must be >= 2");
  if (!std::isfinite(d) || d < 0.0) throw Error("c_range: d must be >= 0");
  const double t = require_tan_xi(xi);
  if (t > 0.0) return CRange{kInf, false};
  const double weight = d * d + static_cast<double>(n) - 1.0;
  return CRange{weight * (1.0 + t * t) / (4.0 * std::abs(t)), true};
}

VertexCoupling design_type_ii(const ComplexMatrix& M, const MPSProfile& profile,
                              double c, int sign, int n, Tolerance tol) {
  if (sign != 1 && sign != -1) throw Error("design: sign must be +1 or -1");
  const double weight = design_weight(M, profile, n, tol);
  require_positive_c(c);
  const double alpha = sign * 2.0 * std::atan(std::sqrt(c / weight));
  return from_spectral(alpha, kPi, M, tol);
}

VertexCoupling design_type_iii(const ComplexMatrix& M,
                               const MPSProfile& profile, double c, int sign,
                               int n, Tolerance tol) {
  if (sign != 1 && sign != -1) throw Error("design: sign must be +1 or -1");
  const double weight = design_weight(M, profile, n, tol);
  require_positive_c(c);
  // cot(beta/2) = sign * sqrt(c / weight); beta stays inside (-pi, pi) \ {0}.
  const double cot_half = sign * std::sqrt(c / weight);
  const double beta = 2.0 * std::atan(1.0 / cot_half);
  return from_spectral(0.0, beta, M, tol);
}

VertexCoupling design_type_iv(const ComplexMatrix& M, const MPSProfile& profile,
                              double xi, double c, int n, Tolerance tol) {
  const double weight = design_weight(M, profile, n, tol);
  const double t = require_tan_xi(xi);
  const CRange range = c_range(xi, profile.d, n);
  if (!std::isfinite(c) || c <= 0.0 || c > range.upper) {
    std::ostringstream msg;
    msg << "curvature factor c must lie in (0, " << range.upper
        << (range.upper_closed ? "]" : ")");
    throw COutOfRange(msg.str(), range.upper, range.upper_closed);
  }

  // tan(alpha/2) solves T^2 - uT - tan(xi) = 0; the root of larger magnitude
  // gives a deterministic pick, and both roots produce the same (xi, c).
  const double u = std::sqrt((1.0 + t * t) * weight / c);
  double disc = u * u + 4.0 * t;
  // At the closed upper end of the range the discriminant is exactly zero;
  // rounding may push it barely negative.
  if (disc < 0.0) {
    if (disc < -1e-9 * (u * u + 4.0 * std::abs(t)))
      throw COutOfRange("curvature factor exceeds the admissible range",
                        range.upper, range.upper_closed);
    disc = 0.0;
  }
  const double T = (u + std::sqrt(disc)) / 2.0;
  const double alpha = 2.0 * std::atan(T);
  const double beta = 2.0 * std::atan(t / T);
  return from_spectral(alpha, beta, M, tol);
}

}  // namespace qgv
