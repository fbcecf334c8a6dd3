#ifndef QGV_SCATTERING_HPP
#define QGV_SCATTERING_HPP

#include <utility>
#include <vector>

#include "qgv/coupling.hpp"
#include "qgv/errors.hpp"
#include "qgv/matrix.hpp"

namespace qgv {

// Scattering matrix at momentum k with its probability decomposition.
// reflections[j] = |S_jj|^2; transmissions[j][l] = |S_jl|^2 for j != l with
// a zero diagonal. Unitarity makes each reflection plus its row of
// transmissions sum to 1.
struct ScatteringResult {
  double k;
  ComplexMatrix S;
  std::vector<double> reflections;
  std::vector<std::vector<double>> transmissions;

  // Validates unitarity of S at tol and row sums at 1e-9; throws NotUnitary
  // when either fails.
  static ScatteringResult make(double k, ComplexMatrix S,
                               Tolerance tol = default_tolerance());
};

// Coefficients of the closed form S(k) = mu(k) I + nu(k) M. Unitarity of S
// forces |mu|^2 + |nu|^2 = 1 and Re(mu conj(nu)) = 0.
struct MuNu {
  Complex mu;
  Complex nu;
};

// S(k) by the defining relation S = [(k-1)U + (k+1)I]^{-1} [(k+1)U + (k-1)I],
// with no structural assumption on U beyond unitarity. The left factor is
// invertible for every unitary U and k > 0, so SingularMatrix here signals
// corrupt input.
ComplexMatrix scattering_matrix(const ComplexMatrix& U, double k,
                                Tolerance tol = default_tolerance());

ScatteringResult s_matrix_direct(const VertexCoupling& coupling, double k,
                                 Tolerance tol = default_tolerance());

// Closed-form coefficients for a two-eigenvalue coupling: with
// cc = cos(alpha/2) cos(beta/2), ss = sin(alpha/2) sin(beta/2) and
// D = k cc - ss/k - i sin((alpha+beta)/2),
//   mu = (k cc + ss/k) / D,   nu = i sin((alpha-beta)/2) / D.
// Throws DegenerateForm when alpha = beta (nu degenerates to 0 and S is a
// pure phase; use s_matrix_closed, which handles that case).
MuNu mu_nu(const TwoEigSpectralForm& form, double k);

// S(k) = mu I + nu M. Degenerate forms evaluate by the same formula with
// M = I, yielding the scalar matrix mu + nu times I.
ScatteringResult s_matrix_closed(const TwoEigSpectralForm& form, double k,
                                 Tolerance tol = default_tolerance());

// Probability decomposition of an arbitrary square S.
std::pair<std::vector<double>, std::vector<std::vector<double>>> probabilities(
    const ComplexMatrix& S);

// Moduli ratios |S(k)_jl| / |S(k)_ref| for every off-diagonal pair across a
// momentum grid, evaluated through the direct formula so constancy in k is
// an observed property rather than an algebraic identity of the closed form.
struct RatioProfile {
  int ref_j;
  int ref_l;
  std::vector<double> k_grid;
  // ratios[g][j][l] for grid point g; diagonal entries are 0.
  std::vector<std::vector<std::vector<double>>> ratios;
};

// Throws ZeroReference when |M_ref| <= tol.eps (the denominator would vanish
// at every k). The reference pair defaults to (0, 1).
RatioProfile transmission_ratio_profile(const TwoEigSpectralForm& form,
                                        const std::vector<double>& k_grid,
                                        int ref_j = 0, int ref_l = 1,
                                        Tolerance tol = default_tolerance());

// Momentum grids. Both require 0 < k_min < k_max and points >= 2.
std::vector<double> log_grid(double k_min, double k_max, int points);
std::vector<double> linear_grid(double k_min, double k_max, int points);

// The default evaluation grid: 61 log-spaced points on [0.01, 100],
// symmetric about k = 1.
std::vector<double> default_k_grid();

}  // namespace qgv

#endif  // QGV_SCATTERING_HPP
