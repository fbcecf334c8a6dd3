#include "qgv/scattering.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace qgv {

namespace {

void require_momentum(double k) {
  if (!std::isfinite(k) || k <= 0.0)
    throw Error("momentum k must be finite and positive");
}

// Closed-form coefficients without the degeneracy guard; alpha = beta simply
// yields nu = 0.
MuNu mu_nu_raw(double alpha, double beta, double k) {
  const double cc = std::cos(alpha / 2.0) * std::cos(beta / 2.0);
  const double ss = std::sin(alpha / 2.0) * std::sin(beta / 2.0);
  const Complex den(k * cc - ss / k, -std::sin((alpha + beta) / 2.0));
  const Complex mu = Complex(k * cc + ss / k, 0.0) / den;
  const Complex nu = Complex(0.0, std::sin((alpha - beta) / 2.0)) / den;
  return MuNu{mu, nu};
}

}  // namespace

ScatteringResult ScatteringResult::make(double k, ComplexMatrix S,
                                        Tolerance tol) {
  require_momentum(k);
  // Construction sanity check, looser than tol itself: S was assembled from
  // validated inputs, so only genuine corruption should trip this.
  const Tolerance sanity(std::min(100.0 * tol.eps, 0.5));
  if (!is_unitary(S, sanity))
    throw NotUnitary("scattering matrix is not unitary at tolerance");

  auto [reflections, transmissions] = probabilities(S);
  const int n = S.order();
  for (int j = 0; j < n; ++j) {
    double row = reflections[j];
    for (int l = 0; l < n; ++l) row += transmissions[j][l];
    if (std::abs(row - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "probability row " << j << " sums to " << row;
      throw NotUnitary(msg.str());
    }
  }
  return ScatteringResult{k, std::move(S), std::move(reflections),
                          std::move(transmissions)};
}

ComplexMatrix scattering_matrix(const ComplexMatrix& U, double k,
                                Tolerance tol) {
  require_momentum(k);
  const int n = U.order();
  // S = [(k-1)U + (k+1)I]^{-1} [(k+1)U + (k-1)I]. The left factor has
  // eigenvalues (k-1)u + (k+1) with |u| = 1, whose moduli are at least
  // 2 min(1, k) > 0, so it is invertible for every unitary U.
  ComplexMatrix lhs(n);
  ComplexMatrix rhs(n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      lhs(j, l) = (k - 1.0) * U(j, l);
      rhs(j, l) = (k + 1.0) * U(j, l);
      if (j == l) {
        lhs(j, l) += k + 1.0;
        rhs(j, l) += k - 1.0;
      }
    }
  }
  return solve_linear(lhs, rhs, tol);
}

ScatteringResult s_matrix_direct(const VertexCoupling& coupling, double k,
                                 Tolerance tol) {
  return ScatteringResult::make(k, scattering_matrix(coupling.matrix(), k, tol),
                                tol);
}

MuNu mu_nu(const TwoEigSpectralForm& form, double k) {
  require_momentum(k);
  if (form.degenerate || form.alpha == form.beta)
    throw DegenerateForm("mu_nu: form has a single eigenvalue phase");
  return mu_nu_raw(form.alpha, form.beta, k);
}

ScatteringResult s_matrix_closed(const TwoEigSpectralForm& form, double k,
                                 Tolerance tol) {
  require_momentum(k);
  const auto [mu, nu] = mu_nu_raw(form.alpha, form.beta, k);
  const int n = form.M.order();
  ComplexMatrix S(n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      S(j, l) = nu * form.M(j, l);
      if (j == l) S(j, l) += mu;
    }
  }
  return ScatteringResult::make(k, std::move(S), tol);
}

std::pair<std::vector<double>, std::vector<std::vector<double>>> probabilities(
    const ComplexMatrix& S) {
  const int n = S.order();
  std::vector<double> reflections(n);
  std::vector<std::vector<double>> transmissions(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j) {
    reflections[j] = std::norm(S(j, j));
    for (int l = 0; l < n; ++l)
      if (l != j) transmissions[j][l] = std::norm(S(j, l));
  }
  return {std::move(reflections), std::move(transmissions)};
}

RatioProfile transmission_ratio_profile(const TwoEigSpectralForm& form,
                                        const std::vector<double>& k_grid,
                                        int ref_j, int ref_l, Tolerance tol) {
  const int n = form.M.order();
  if (ref_j < 0 || ref_j >= n || ref_l < 0 || ref_l >= n || ref_j == ref_l)
    throw Error("transmission_ratio_profile: invalid reference pair");
  if (std::abs(form.M(ref_j, ref_l)) <= tol.eps)
    throw ZeroReference(
        "transmission_ratio_profile: M vanishes at the reference pair");

  // Evaluate through the defining formula rather than the closed form, so the
  // constancy of the ratios is observed, not assumed.
  const VertexCoupling coupling =
      from_spectral(form.alpha, form.beta, form.M, tol);

  RatioProfile out;
  out.ref_j = ref_j;
  out.ref_l = ref_l;
  out.k_grid = k_grid;
  out.ratios.reserve(k_grid.size());
  for (const double k : k_grid) {
    const ComplexMatrix S = scattering_matrix(coupling.matrix(), k, tol);
    const double denom = std::abs(S(ref_j, ref_l));
    if (denom <= tol.eps) {
      std::ostringstream msg;
      msg << "transmission_ratio_profile: reference amplitude vanishes at k="
          << k;
      throw ZeroReference(msg.str());
    }
    std::vector<std::vector<double>> slice(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        if (l != j) slice[j][l] = std::abs(S(j, l)) / denom;
    out.ratios.push_back(std::move(slice));
  }
  return out;
}

std::vector<double> log_grid(double k_min, double k_max, int points) {
  if (!std::isfinite(k_min) || !std::isfinite(k_max) || k_min <= 0.0 ||
      k_min >= k_max)
    throw Error("grid requires 0 < k_min < k_max");
  if (points < 2) throw Error("grid requires at least 2 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    grid[i] = std::pow(k_min, 1.0 - t) * std::pow(k_max, t);
  }
  return grid;
}

std::vector<double> linear_grid(double k_min, double k_max, int points) {
  if (!std::isfinite(k_min) || !std::isfinite(k_max) || k_min <= 0.0 ||
      k_min >= k_max)
    throw Error("grid requires 0 < k_min < k_max");
  if (points < 2) throw Error("grid requires at least 2 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    grid[i] = k_min + t * (k_max - k_min);
  }
  return grid;
}

std::vector<double> default_k_grid() { return log_grid(0.01, 100.0, 61); }

}  // namespace qgv
