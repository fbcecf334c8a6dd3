#include "qgv/mps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

namespace qgv {

namespace {

// Bit layout of a sign pattern: bit j (j < n) carries diag sign j, bit
// n + pair_index(j, l) carries the off-diagonal sign of the pair j < l.
// A set bit means +1. Orders up to kMaxSearchOrder fit in 21 bits.
struct PatternContext {
  int n;
  int bits;
  std::uint32_t diag_mask;
  std::uint32_t all_mask;
  std::array<std::array<int, 8>, 8> pair_bit;
  // One table per permutation p: entry [dest] is the source bit whose value
  // lands at dest under simultaneous row/column relabeling by p.
  std::vector<std::array<std::uint8_t, 32>> perm_tables;

  explicit PatternContext(int order) : n(order) {
    bits = n + n * (n - 1) / 2;
    diag_mask = (1u << n) - 1u;
    all_mask = (bits == 32) ? 0xffffffffu : ((1u << bits) - 1u);
    int next = n;
    for (int j = 0; j < n; ++j)
      for (int l = j + 1; l < n; ++l) {
        pair_bit[j][l] = next;
        pair_bit[l][j] = next;
        ++next;
      }

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::array<std::uint8_t, 32> table{};
      for (int j = 0; j < n; ++j)
        table[j] = static_cast<std::uint8_t>(perm[j]);
      for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
          table[pair_bit[j][l]] =
              static_cast<std::uint8_t>(pair_bit[perm[j]][perm[l]]);
      perm_tables.push_back(table);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
};

std::uint32_t encode_bits(const SignMatrix& pattern,
                          const PatternContext& ctx) {
  std::uint32_t enc = 0;
  for (int j = 0; j < ctx.n; ++j)
    if (pattern.diag_signs[j] > 0) enc |= 1u << j;
  for (int j = 0; j < ctx.n; ++j)
    for (int l = j + 1; l < ctx.n; ++l)
      if (pattern.offdiag_signs[j][l] > 0) enc |= 1u << ctx.pair_bit[j][l];
  return enc;
}

SignMatrix decode_bits(std::uint32_t enc, const PatternContext& ctx) {
  SignMatrix pattern;
  pattern.n = ctx.n;
  pattern.diag_signs.resize(ctx.n);
  pattern.offdiag_signs.assign(ctx.n, std::vector<int>(ctx.n, 1));
  for (int j = 0; j < ctx.n; ++j)
    pattern.diag_signs[j] = (enc >> j) & 1u ? 1 : -1;
  for (int j = 0; j < ctx.n; ++j)
    for (int l = j + 1; l < ctx.n; ++l) {
      const int s = (enc >> ctx.pair_bit[j][l]) & 1u ? 1 : -1;
      pattern.offdiag_signs[j][l] = s;
      pattern.offdiag_signs[l][j] = s;
    }
  return pattern;
}

std::uint32_t apply_perm(std::uint32_t enc,
                         const std::array<std::uint8_t, 32>& table, int bits) {
  std::uint32_t out = 0;
  for (int b = 0; b < bits; ++b)
    if ((enc >> table[b]) & 1u) out |= 1u << b;
  return out;
}

// Minimal encoding over simultaneous permutations and the global sign flip.
// When the realized diagonal vanishes (d = 0) its signs carry no
// information, so they are normalized to +1 before comparing.
std::uint32_t canonical_bits(std::uint32_t enc, const PatternContext& ctx,
                             bool diag_matters) {
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (const auto& table : ctx.perm_tables) {
    const std::uint32_t permuted = apply_perm(enc, table, ctx.bits);
    for (std::uint32_t cand : {permuted, permuted ^ ctx.all_mask}) {
      if (!diag_matters) cand |= ctx.diag_mask;
      best = std::min(best, cand);
    }
  }
  return best;
}

struct Admissible {
  double d;
  bool d_free;
};

// Exact per-pattern test of M^2 = I. Entry (j, l), j != l, of M^2 reads
// t^2 * (s_jl (sigma_j + sigma_l) d + sum_{m != j,l} s_jm s_ml) = 0, so each
// pair contributes a linear condition on d with integer coefficients; the
// diagonal entries reduce to the row normalization and hold automatically.
bool admissibility(const std::array<int, 8>& diag,
                   const std::array<std::array<int, 8>, 8>& off, int n,
                   Admissible* out) {
  bool determined = false;
  int num = 0;  // d = num / den once determined
  int den = 1;
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      int k_sum = 0;
      for (int m = 0; m < n; ++m)
        if (m != j && m != l) k_sum += off[j][m] * off[m][l];
      const int a = off[j][l] * (diag[j] + diag[l]);
      if (a == 0) {
        if (k_sum != 0) return false;
      } else if (!determined) {
        num = -k_sum;
        den = a;
        determined = true;
      } else if (num * a != -k_sum * den) {
        return false;
      }
    }
  }
  if (!determined) {
    // Only reachable at n = 2 with opposite diagonal signs: M^2 = I holds
    // for every admixture of diagonal, so d is a free parameter.
    out->d = 1.0;
    out->d_free = true;
    return true;
  }
  const double d = static_cast<double>(num) / den;
  if (d < 0.0) return false;
  out->d = d;
  out->d_free = false;
  return true;
}

void decode_into(std::uint32_t enc, const PatternContext& ctx,
                 std::array<int, 8>* diag,
                 std::array<std::array<int, 8>, 8>* off) {
  for (int j = 0; j < ctx.n; ++j) (*diag)[j] = (enc >> j) & 1u ? 1 : -1;
  for (int j = 0; j < ctx.n; ++j)
    for (int l = j + 1; l < ctx.n; ++l) {
      const int s = (enc >> ctx.pair_bit[j][l]) & 1u ? 1 : -1;
      (*off)[j][l] = s;
      (*off)[l][j] = s;
    }
}

}  // namespace

std::optional<std::pair<Complex, Complex>> is_ps(const ComplexMatrix& M,
                                                 Tolerance tol) {
  const int n = M.order();
  if (n < 2) throw DimensionMismatch("is_ps: order must be >= 2");
  const Complex diag = M(0, 0);
  const Complex off = M(0, 1);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      const Complex want = (j == l) ? diag : off;
      if (std::abs(M(j, l) - want) > tol.eps) return std::nullopt;
    }
  }
  return std::make_pair(diag, off);
}

MpsCheck mps_check(const ComplexMatrix& M, Tolerance tol) {
  const int n = M.order();
  if (n < 2) throw DimensionMismatch("mps_check: order must be >= 2");
  if (is_diagonal(M, tol)) return MpsCheck{MpsCheck::Kind::Diagonal, {}};

  const double r0 = std::abs(M(0, 0));
  const double t0 = std::abs(M(0, 1));
  double r_sum = 0.0;
  double t_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      const double mod = std::abs(M(j, l));
      if (j == l) {
        if (std::abs(mod - r0) > tol.eps)
          return MpsCheck{MpsCheck::Kind::NotModular, {}};
        r_sum += mod;
      } else {
        if (std::abs(mod - t0) > tol.eps)
          return MpsCheck{MpsCheck::Kind::NotModular, {}};
        if (l > j) t_sum += mod;
      }
    }
  }
  MPSProfile profile;
  profile.r = r_sum / n;
  profile.t = t_sum / (n * (n - 1) / 2);
  profile.d = profile.r / profile.t;
  return MpsCheck{MpsCheck::Kind::Mps, profile};
}

std::optional<MPSProfile> mps_profile(const ComplexMatrix& M, Tolerance tol) {
  const MpsCheck check = mps_check(M, tol);
  if (check.kind != MpsCheck::Kind::Mps) return std::nullopt;
  return check.profile;
}

ComplexMatrix standard_m(int n, int sign) {
  if (n < 2) throw DimensionMismatch("standard_m: order must be >= 2");
  if (sign != 1 && sign != -1) throw Error("standard_m: sign must be +1 or -1");
  ComplexMatrix M(n);
  const double off = 2.0 * sign / static_cast<double>(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) M(j, l) = (j == l) ? off - sign : off;
  return M;
}

double d_bound(int n) {
  if (n < 2) throw DimensionMismatch("d_bound: order must be >= 2");
  if (n == 2) return std::numeric_limits<double>::infinity();
  return static_cast<double>(n) / 2.0 - 1.0;
}

std::vector<int> encode_pattern(const SignMatrix& pattern) {
  std::vector<int> enc;
  enc.reserve(pattern.n + pattern.n * (pattern.n - 1) / 2);
  for (int j = 0; j < pattern.n; ++j) enc.push_back(pattern.diag_signs[j]);
  for (int j = 0; j < pattern.n; ++j)
    for (int l = j + 1; l < pattern.n; ++l)
      enc.push_back(pattern.offdiag_signs[j][l]);
  return enc;
}

SignMatrix canonical_pattern(const SignMatrix& pattern, bool diag_matters) {
  if (pattern.n < 2 || pattern.n > kMaxSearchOrder)
    throw OrderTooLarge("canonical_pattern: order outside [2, 6]");
  const PatternContext ctx(pattern.n);
  const std::uint32_t enc = encode_bits(pattern, ctx);
  return decode_bits(canonical_bits(enc, ctx, diag_matters), ctx);
}

ComplexMatrix realize(const SignMatrix& pattern, double d) {
  const int n = pattern.n;
  if (n < 2) throw DimensionMismatch("realize: order must be >= 2");
  if (!std::isfinite(d) || d < 0.0) throw Error("realize: d must be >= 0");
  const double t = 1.0 / std::sqrt(d * d + static_cast<double>(n) - 1.0);
  const double r = d * t;
  ComplexMatrix M(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      M(j, l) = (j == l) ? pattern.diag_signs[j] * r
                         : pattern.offdiag_signs[j][l] * t;
  return M;
}

std::vector<SearchEntry> search_real_mps(int n, Tolerance tol) {
  if (n < 2) throw DimensionMismatch("search_real_mps: order must be >= 2");
  if (n > kMaxSearchOrder) {
    std::ostringstream msg;
    msg << "search_real_mps: order " << n << " exceeds the supported maximum "
        << kMaxSearchOrder;
    throw OrderTooLarge(msg.str());
  }

  const PatternContext ctx(n);
  const std::uint64_t total = std::uint64_t(1) << ctx.bits;

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, 8u);
  if (total < (1u << 14)) workers = 1;

  // Each worker scans a contiguous index range and keys its finds by
  // canonical encoding, so the merged map is independent of the partition.
  std::vector<std::map<std::uint32_t, SearchEntry>> found(workers);
  auto scan = [&](unsigned w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    std::array<int, 8> diag{};
    std::array<std::array<int, 8>, 8> off{};
    Admissible adm{};
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const std::uint32_t enc = static_cast<std::uint32_t>(idx);
      decode_into(enc, ctx, &diag, &off);
      if (!admissibility(diag, off, n, &adm)) continue;
      const bool diag_matters = adm.d_free || adm.d > 0.0;
      const std::uint32_t canon = canonical_bits(enc, ctx, diag_matters);
      if (found[w].count(canon)) continue;
      SearchEntry entry;
      entry.pattern = decode_bits(canon, ctx);
      const double t_mod =
          1.0 / std::sqrt(adm.d * adm.d + static_cast<double>(n) - 1.0);
      entry.profile = MPSProfile{adm.d * t_mod, t_mod, adm.d};
      entry.d_free = adm.d_free;
      found[w].emplace(canon, std::move(entry));
    }
  };

  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(scan, w);
    for (auto& th : threads) th.join();
  }

  std::map<std::uint32_t, SearchEntry> merged;
  for (auto& partial : found)
    for (auto& [key, entry] : partial) merged.emplace(key, std::move(entry));

  std::vector<std::pair<std::uint32_t, SearchEntry>> flat;
  flat.reserve(merged.size());
  for (auto& [key, entry] : merged) {
    // Realized matrices must verify as Hermitian unitary MPS; a failure here
    // would mean the admissibility algebra is wrong.
    const ComplexMatrix M = realize(entry.pattern, entry.profile.d);
    if (!is_hermitian(M, tol) || !is_unitary(M, tol) || !mps_profile(M, tol))
      throw NumericalInconsistency(
          "search_real_mps: realized pattern failed verification");
    flat.emplace_back(key, std::move(entry));
  }
  std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) {
    if (a.second.profile.d != b.second.profile.d)
      return a.second.profile.d > b.second.profile.d;
    return a.first < b.first;
  });

  std::vector<SearchEntry> out;
  out.reserve(flat.size());
  for (auto& [key, entry] : flat) out.push_back(std::move(entry));
  return out;
}

bool verify_bound(int n, const std::vector<SearchEntry>& results) {
  if (n == 2) return true;  // no bound applies at order 2
  const double bound = d_bound(n);
  bool attained = false;
  for (const SearchEntry& entry : results) {
    if (entry.profile.d > bound + 1e-12) return false;
    if (std::abs(entry.profile.d - bound) <= 1e-12) attained = true;
  }
  return attained;
}

bool is_equally_transmitting(const TwoEigSpectralForm& form, Tolerance tol) {
  return mps_profile(form.M, tol).has_value();
}

}  // namespace qgv
