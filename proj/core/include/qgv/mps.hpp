#ifndef QGV_MPS_HPP
#define QGV_MPS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qgv/coupling.hpp"
#include "qgv/errors.hpp"
#include "qgv/matrix.hpp"

namespace qgv {

// Largest order accepted by the exhaustive sign search. The space has
// 2^(n + n(n-1)/2) patterns, which is about 2 million at n = 6.
inline constexpr int kMaxSearchOrder = 6;

// Moduli profile of a modularly permutation-symmetric matrix: common
// diagonal modulus r, common off-diagonal modulus t > 0, and their
// ratio d = r/t. For a unitary matrix the row normalization forces
// r^2 + (n-1) t^2 = 1.
struct MPSProfile {
  double r;
  double t;
  double d;
};

// Outcome of testing a matrix for modular permutation symmetry. Diagonal
// matrices are flagged apart from genuine failures: they have equal
// off-diagonal moduli (all zero) but describe a decoupled vertex, for which
// the ratio d is undefined.
struct MpsCheck {
  enum class Kind { Mps, Diagonal, NotModular };
  Kind kind;
  std::optional<MPSProfile> profile;  // present iff kind == Mps
};

// Common (diagonal value, off-diagonal value) of a permutation-symmetric
// matrix, or nullopt when entries disagree at tol. Requires n >= 2.
std::optional<std::pair<Complex, Complex>> is_ps(
    const ComplexMatrix& M, Tolerance tol = default_tolerance());

MpsCheck mps_check(const ComplexMatrix& M, Tolerance tol = default_tolerance());

// Shortcut for mps_check: the profile when the matrix is non-diagonal MPS,
// nullopt otherwise.
std::optional<MPSProfile> mps_profile(const ComplexMatrix& M,
                                      Tolerance tol = default_tolerance());

// The reference Hermitian unitary MPS matrices sign * (-I + (2/n) J).
// For n > 2 they attain the maximal ratio d = n/2 - 1; at n = 2 the diagonal
// vanishes and d = 0.
ComplexMatrix standard_m(int n, int sign);

// Upper bound on d for Hermitian unitary MPS matrices of order n: n/2 - 1
// for n > 2. Returns +infinity for n = 2, where no bound holds.
double d_bound(int n);

// Sign pattern of a real symmetric candidate M with diagonal entries
// diag_signs[j] * r and off-diagonal entries offdiag_signs[j][l] * t.
// offdiag_signs is symmetric; its diagonal is fixed at +1 and ignored.
struct SignMatrix {
  int n;
  std::vector<int> diag_signs;
  std::vector<std::vector<int>> offdiag_signs;
};

// One deduplicated admissible pattern. d_free marks the n = 2 mixed-sign
// diagonal, where M^2 = I holds for every r in [0, 1) and the profile stores
// the representative d = 1.
struct SearchEntry {
  SignMatrix pattern;
  MPSProfile profile;
  bool d_free;
};

// Flat encoding used for deduplication: diagonal signs followed by the
// upper-triangle off-diagonal signs, row-major.
std::vector<int> encode_pattern(const SignMatrix& pattern);

// Lexicographically minimal encoding over all simultaneous row/column
// permutations and the global sign flip. Patterns with d = 0 realize a
// matrix with zero diagonal, so their diagonal signs carry no information;
// pass diag_matters = false to normalize them to +1 before minimizing.
SignMatrix canonical_pattern(const SignMatrix& pattern, bool diag_matters);

// The real matrix realized by a pattern at ratio d >= 0, with moduli fixed
// by r = d t, r^2 + (n-1) t^2 = 1.
ComplexMatrix realize(const SignMatrix& pattern, double d);

// Enumerate every sign pattern of order n and keep those admitting r, t >= 0
// with M^2 = I. Admissibility is decided exactly: entry (j, l) of M^2 = I
// reads s_jl (sigma_j + sigma_l) d + sum_{m != j,l} s_jm s_ml = 0, a linear
// condition on d per off-diagonal entry, and a pattern survives iff all
// conditions agree on a single d >= 0 (or constrain nothing, the d_free
// case). Results are deduplicated up to simultaneous permutation and global
// sign flip and sorted by d descending, then by canonical encoding.
// Throws OrderTooLarge for n > kMaxSearchOrder; requires n >= 2.
std::vector<SearchEntry> search_real_mps(int n,
                                         Tolerance tol = default_tolerance());

// True iff every entry respects d <= n/2 - 1 (to 1e-12) and at least one
// attains it. Meaningful for n > 2 only.
bool verify_bound(int n, const std::vector<SearchEntry>& results);

// A coupling is equally-transmitting iff the M of its spectral form is a
// non-diagonal MPS matrix; its S(k) then has equal reflection moduli and
// equal transmission moduli at every k.
bool is_equally_transmitting(const TwoEigSpectralForm& form,
                             Tolerance tol = default_tolerance());

}  // namespace qgv

#endif  // QGV_MPS_HPP
