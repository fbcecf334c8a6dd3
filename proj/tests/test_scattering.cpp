#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qgv/coupling.hpp"
#include "qgv/matrix.hpp"
#include "qgv/mps.hpp"
#include "qgv/scattering.hpp"
#include "test_support.hpp"

using qgv::Complex;
using qgv::ComplexMatrix;
using namespace qgv_test;

TEST_CASE("the scattering matrix at k = 1 is the coupling itself") {
  auto rng = make_rng(2001);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = uniform_int(rng, 2, 8);
    const auto u = random_unitary(rng, n);
    CHECK(qgv::max_abs_diff(qgv::scattering_matrix(u, 1.0), u) < 1e-13);
  }
}

TEST_CASE("direct and closed-form evaluation agree on the grid") {
  auto rng = make_rng(2002);
  const auto grid = qgv::default_k_grid();
  for (int trial = 0; trial < 5; ++trial) {
    const int n = uniform_int(rng, 2, 6);
    const auto [alpha, beta] = random_phase_pair(rng);
    const auto m = random_hermitian_unitary(rng, n, uniform_int(rng, 1, n - 1));
    const auto coupling = qgv::from_spectral(alpha, beta, m);
    const auto form = qgv::decompose(coupling);
    for (const double k : grid) {
      const auto direct = qgv::s_matrix_direct(coupling, k);
      const auto closed = qgv::s_matrix_closed(form, k);
      CHECK(qgv::max_abs_diff(direct.S, closed.S) < 1e-12);
    }
  }
}

TEST_CASE("free coupling probabilities are constant in k") {
  const auto free3 = qgv::table1(qgv::Table1Kind::Free, 0.0, 3);
  for (const double k : {0.01, 0.3, 1.0, 7.0, 100.0}) {
    const auto result = qgv::s_matrix_direct(free3, k);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(result.reflections[j] - 1.0 / 9.0) < 1e-13);
      for (int l = 0; l < 3; ++l)
        if (l != j)
          CHECK(std::abs(result.transmissions[j][l] - 4.0 / 9.0) < 1e-13);
    }
  }
}

TEST_CASE("delta coupling probabilities at k = 1 match the moduli of U") {
  const auto delta = qgv::table1(qgv::Table1Kind::Delta, 3.0, 3);
  const auto result = qgv::s_matrix_direct(delta, 1.0);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(result.reflections[j] - 5.0 / 9.0) < 1e-13);
    for (int l = 0; l < 3; ++l)
      if (l != j)
        CHECK(std::abs(result.transmissions[j][l] - 2.0 / 9.0) < 1e-13);
  }
}

TEST_CASE("probability rows sum to one across the grid") {
  auto rng = make_rng(2003);
  const auto u = random_unitary(rng, 5);
  const auto coupling = qgv::VertexCoupling::from_unitary(u);
  for (const double k : qgv::default_k_grid()) {
    const auto result = qgv::s_matrix_direct(coupling, k);
    for (int j = 0; j < 5; ++j) {
      double row = result.reflections[j];
      for (int l = 0; l < 5; ++l)
        if (l != j) row += result.transmissions[j][l];
      CHECK(std::abs(row - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("ScatteringResult::make rejects a non-unitary matrix") {
  auto rng = make_rng(2004);
  const auto u = random_unitary(rng, 3);
  CHECK_THROWS_AS(qgv::ScatteringResult::make(1.0, Complex(1.2) * u),
                  qgv::NotUnitary);
}

TEST_CASE("mu and nu satisfy the unitarity identities") {
  auto rng = make_rng(2005);
  for (int trial = 0; trial < 5; ++trial) {
    const auto [alpha, beta] = random_phase_pair(rng);
    const auto m = random_hermitian_unitary(rng, 4, 2);
    const auto form = qgv::decompose(qgv::from_spectral(alpha, beta, m));
    for (const double k : qgv::default_k_grid()) {
      const auto [mu, nu] = qgv::mu_nu(form, k);
      CHECK(std::abs(std::norm(mu) + std::norm(nu) - 1.0) < 1e-12);
      CHECK(std::abs((mu * std::conj(nu)).real()) < 1e-12);
      // mu +- nu are the eigenvalues of S(k), hence unimodular.
      CHECK(std::abs(std::abs(mu + nu) - 1.0) < 1e-12);
      CHECK(std::abs(std::abs(mu - nu) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("mu_nu refuses a degenerate form but s_matrix_closed handles it") {
  const auto u = Complex(std::polar(1.0, 1.1)) * ComplexMatrix::identity(3);
  const auto form = qgv::decompose(qgv::VertexCoupling::from_unitary(u));
  REQUIRE(form.degenerate);
  CHECK_THROWS_AS(qgv::mu_nu(form, 2.0), qgv::DegenerateForm);

  for (const double k : {0.2, 1.0, 5.0}) {
    const auto closed = qgv::s_matrix_closed(form, k);
    const auto direct = qgv::scattering_matrix(u, k);
    CHECK(qgv::max_abs_diff(closed.S, direct) < 1e-13);
    CHECK(std::abs(std::abs(closed.S(0, 0)) - 1.0) < 1e-13);
    CHECK(std::abs(closed.S(0, 1)) < 1e-13);
  }
}

TEST_CASE("transmission ratios are flat for an MPS coupling") {
  auto rng = make_rng(2006);
  const auto m = scramble_mps(rng, hadamard_m4());
  const auto form = qgv::decompose(qgv::from_spectral(0.9, -2.1, m));
  const auto profile =
      qgv::transmission_ratio_profile(form, qgv::default_k_grid());
  // All moduli of M agree, so every off-diagonal ratio is constantly 1.
  for (const auto& snapshot : profile.ratios)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l)
        if (l != j) CHECK(std::abs(snapshot[j][l] - 1.0) < 1e-10);
}

TEST_CASE("transmission_ratio_profile validates its reference pair") {
  auto rng = make_rng(2007);
  const auto good = qgv::decompose(
      qgv::from_spectral(0.9, -2.1, scramble_mps(rng, hadamard_m4())));
  CHECK_THROWS_AS(
      qgv::transmission_ratio_profile(good, qgv::default_k_grid(), 1, 1),
      qgv::Error);

  // block_m4 has M(0, 2) = 0: that reference denominator vanishes at every k.
  const auto blocked =
      qgv::decompose(qgv::from_spectral(0.9, -2.1, block_m4()));
  CHECK_THROWS_AS(
      qgv::transmission_ratio_profile(blocked, qgv::default_k_grid(), 0, 2),
      qgv::ZeroReference);
}

TEST_CASE("momentum grids have the advertised shape") {
  const auto grid = qgv::log_grid(0.01, 100.0, 61);
  REQUIRE(grid.size() == 61);
  CHECK(grid.front() == 0.01);
  CHECK(grid.back() == 100.0);
  CHECK(std::abs(grid[30] - 1.0) < 1e-15);
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  // Log symmetry about the midpoint.
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(grid[i] * grid[60 - i] == doctest::Approx(1.0).epsilon(1e-12));

  const auto lin = qgv::linear_grid(1.0, 3.0, 5);
  REQUIRE(lin.size() == 5);
  CHECK(lin[0] == 1.0);
  CHECK(lin[2] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lin[4] == 3.0);

  CHECK(qgv::default_k_grid() == grid);

  CHECK_THROWS_AS(qgv::log_grid(0.0, 1.0, 5), qgv::Error);
  CHECK_THROWS_AS(qgv::log_grid(2.0, 1.0, 5), qgv::Error);
  CHECK_THROWS_AS(qgv::linear_grid(1.0, 2.0, 1), qgv::Error);
}

TEST_CASE("a generalized delta coupling reflects fully as k drops") {
  // beta = pi couplings lose all transmission in the low-momentum limit.
  const auto delta = qgv::table1(qgv::Table1Kind::Delta, 3.0, 3);
  const auto s = qgv::scattering_matrix(delta.matrix(), 1e-6);
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l)
      if (l != j) CHECK(std::abs(s(j, l)) < 1e-5);
}
