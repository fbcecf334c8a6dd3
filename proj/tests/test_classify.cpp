#include <cmath>
#include <complex>
#include <limits>

#include "doctest.h"
#include "qgv/classify.hpp"
#include "qgv/coupling.hpp"
#include "qgv/matrix.hpp"
#include "qgv/mps.hpp"
#include "qgv/scattering.hpp"
#include "test_support.hpp"

using qgv::Complex;
using qgv::ComplexMatrix;
using qgv::CouplingTag;
using namespace qgv_test;

namespace {

qgv::CouplingClass classify_coupling(const qgv::VertexCoupling& coupling) {
  const auto form = qgv::decompose(coupling);
  return qgv::classify(form, qgv::is_decoupled(coupling), coupling.degree());
}

// rho sampled from the scattering matrix itself: reflection over
// transmission at one momentum.
double sampled_rho(const qgv::VertexCoupling& coupling, double k) {
  const auto result = qgv::s_matrix_direct(coupling, k);
  return result.reflections[0] / result.transmissions[0][1];
}

}  // namespace

TEST_CASE("table1 members classify to their families with exact parameters") {
  using qgv::Table1Kind;

  const auto delta = classify_coupling(qgv::table1(Table1Kind::Delta, 3.0, 3));
  CHECK(delta.tag == CouplingTag::TypeII_GeneralizedDelta);
  REQUIRE(delta.gamma.has_value());
  CHECK(*delta.gamma == doctest::Approx(3.0).epsilon(1e-12));
  REQUIRE(delta.c.has_value());
  CHECK(*delta.c == doctest::Approx(2.25).epsilon(1e-12));
  CHECK_FALSE(delta.gamma_prime.has_value());
  CHECK_FALSE(delta.xi.has_value());

  const auto delta_p = classify_coupling(qgv::table1(Table1Kind::DeltaP, 3.0, 3));
  CHECK(delta_p.tag == CouplingTag::TypeII_GeneralizedDelta);
  REQUIRE(delta_p.gamma.has_value());
  CHECK(*delta_p.gamma == doctest::Approx(3.0).epsilon(1e-12));

  const auto dprime =
      classify_coupling(qgv::table1(Table1Kind::DeltaPrime, 2.0, 3));
  CHECK(dprime.tag == CouplingTag::TypeIII_GeneralizedDeltaPrime);
  REQUIRE(dprime.gamma_prime.has_value());
  CHECK(*dprime.gamma_prime == doctest::Approx(2.0).epsilon(1e-12));

  const auto dprime_s =
      classify_coupling(qgv::table1(Table1Kind::DeltaPrimeS, 2.0, 3));
  CHECK(dprime_s.tag == CouplingTag::TypeIII_GeneralizedDeltaPrime);
  REQUIRE(dprime_s.gamma_prime.has_value());
  CHECK(*dprime_s.gamma_prime == doctest::Approx(2.0).epsilon(1e-12));

  const auto free = classify_coupling(qgv::table1(Table1Kind::Free, 0.0, 3));
  CHECK(free.tag == CouplingTag::TypeI_ScaleInvariant);
  CHECK(free.alpha == 0.0);
  CHECK(free.beta == kPi);
  CHECK_FALSE(free.c.has_value());
}

TEST_CASE("diagonal couplings classify as decoupled regardless of phases") {
  const auto two_eig = ComplexMatrix::from_rows(
      {{1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, -1.0}});
  const auto cls =
      classify_coupling(qgv::VertexCoupling::from_unitary(two_eig));
  CHECK(cls.tag == CouplingTag::Decoupled);

  // Phases off {0, pi} would read as TypeIV, but diagonality wins.
  const auto rotated = ComplexMatrix::from_rows(
      {{std::polar(1.0, 0.4), 0.0, 0.0},
       {0.0, std::polar(1.0, 0.4), 0.0},
       {0.0, 0.0, std::polar(1.0, 2.0)}});
  const auto cls2 =
      classify_coupling(qgv::VertexCoupling::from_unitary(rotated));
  CHECK(cls2.tag == CouplingTag::Decoupled);

  // Scalar couplings land in the same bucket through the degenerate branch.
  const auto scalar =
      Complex(std::polar(1.0, 0.9)) * ComplexMatrix::identity(3);
  const auto cls3 =
      classify_coupling(qgv::VertexCoupling::from_unitary(scalar));
  CHECK(cls3.tag == CouplingTag::Decoupled);
}

TEST_CASE("Hermitian couplings classify as scale invariant") {
  auto rng = make_rng(3001);
  const auto m = scramble_mps(rng, hadamard_m4());
  const auto cls = classify_coupling(qgv::VertexCoupling::from_unitary(m));
  CHECK(cls.tag == CouplingTag::TypeI_ScaleInvariant);
  CHECK(cls.alpha == 0.0);
  CHECK(cls.beta == kPi);
}

TEST_CASE("generic phases classify as mixed with the right xi and c") {
  auto rng = make_rng(3002);
  const double alpha = 0.8;
  const double beta = -2.0;
  const auto m = scramble_mps(rng, qgv::standard_m(4, 1));
  const auto cls =
      classify_coupling(qgv::from_spectral(alpha, beta, m));
  CHECK(cls.tag == CouplingTag::TypeIV_Mixed);
  REQUIRE(cls.xi.has_value());
  CHECK(*cls.xi ==
        doctest::Approx(std::atan(std::tan(0.4) * std::tan(-1.0)))
            .epsilon(1e-12));
  REQUIRE(cls.c.has_value());

  // c gives the curvature of rho: recover it from sampled probabilities at
  // two momenta and compare.
  const auto coupling = qgv::from_spectral(alpha, beta, m);
  const auto curve = qgv::rho_curve(qgv::decompose(coupling), 4);
  for (const double k : {0.5, 1.0, 2.0, 10.0})
    CHECK(sampled_rho(coupling, k) ==
          doctest::Approx(curve.evaluate(k)).epsilon(1e-10));
  CHECK(*cls.c == doctest::Approx(curve.scale * (curve.cc * curve.cc +
                                                 curve.ss * curve.ss))
                      .epsilon(1e-12));
}

TEST_CASE("the delta coupling rho curve is 1/4 + 9/(4 k^2)") {
  const auto coupling = qgv::table1(qgv::Table1Kind::Delta, 3.0, 3);
  const auto curve = qgv::rho_curve(qgv::decompose(coupling), 3);
  for (const double k : {0.5, 1.0, 2.0, 25.0}) {
    CHECK(curve.evaluate(k) ==
          doctest::Approx(0.25 + 2.25 / (k * k)).epsilon(1e-12));
    CHECK(sampled_rho(coupling, k) ==
          doctest::Approx(curve.evaluate(k)).epsilon(1e-10));
  }
  CHECK(curve.evaluate(1.0) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("the free coupling rho curve is constant") {
  const auto coupling = qgv::table1(qgv::Table1Kind::Free, 0.0, 3);
  const auto curve = qgv::rho_curve(qgv::decompose(coupling), 3);
  CHECK(curve.evaluate(0.3) == 0.25);
  CHECK(curve.evaluate(40.0) == 0.25);
  CHECK(sampled_rho(coupling, 7.0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("rho_curve rejects unusable forms") {
  const auto non_mps = qgv::decompose(
      qgv::from_spectral(0.9, -2.1, block_m4()));
  CHECK_THROWS_AS(qgv::rho_curve(non_mps, 4), qgv::NotMPS);

  const auto scalar =
      Complex(std::polar(1.0, 0.9)) * ComplexMatrix::identity(3);
  const auto degenerate =
      qgv::decompose(qgv::VertexCoupling::from_unitary(scalar));
  CHECK_THROWS_AS(qgv::rho_curve(degenerate, 3), qgv::DegenerateForm);
}

TEST_CASE("c_range reproduces hand-computed intervals") {
  const auto open = qgv::c_range(0.3, 1.0, 4);
  CHECK(open.upper == std::numeric_limits<double>::infinity());
  CHECK_FALSE(open.upper_closed);

  // tan xi = -1, d = 1, n = 4: (d^2 + n - 1)(1 + 1)/4 = 2.
  const auto bounded = qgv::c_range(-kPi / 4.0, 1.0, 4);
  CHECK(bounded.upper == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(bounded.upper_closed);

  // tan xi = -3, d = 0, n = 2: 1 * 10 / 12 = 5/6.
  const auto small = qgv::c_range(std::atan(-3.0), 0.0, 2);
  CHECK(small.upper == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(small.upper_closed);

  CHECK_THROWS_AS(qgv::c_range(0.0, 1.0, 4), qgv::InvalidXi);
  CHECK_THROWS_AS(qgv::c_range(2.0, 1.0, 4), qgv::InvalidXi);
}

TEST_CASE("design_type_ii lands exactly on the table couplings") {
  const auto m = qgv::standard_m(3, 1);
  const auto profile = *qgv::mps_profile(m);
  const auto designed = qgv::design_type_ii(m, profile, 2.25, -1, 3);
  CHECK(qgv::max_abs_diff(designed.matrix(),
                          qgv::table1(qgv::Table1Kind::Delta, 3.0, 3).matrix()) <
        1e-12);
  const auto flipped = qgv::design_type_ii(m, profile, 2.25, 1, 3);
  CHECK(qgv::max_abs_diff(
            flipped.matrix(),
            qgv::table1(qgv::Table1Kind::Delta, -3.0, 3).matrix()) < 1e-12);
}

TEST_CASE("design_type_iii lands exactly on the table couplings") {
  // M decides where the unit eigenvalue sits: +standard_m puts it on the
  // symmetric direction, -standard_m on its complement.
  const auto m_plus = qgv::standard_m(3, 1);
  const auto designed_plus =
      qgv::design_type_iii(m_plus, *qgv::mps_profile(m_plus), 1.0, -1, 3);
  CHECK(qgv::max_abs_diff(
            designed_plus.matrix(),
            qgv::table1(qgv::Table1Kind::DeltaPrime, 2.0, 3).matrix()) <
        1e-12);

  const auto m_minus = qgv::standard_m(3, -1);
  const auto designed_minus =
      qgv::design_type_iii(m_minus, *qgv::mps_profile(m_minus), 1.0, -1, 3);
  CHECK(qgv::max_abs_diff(
            designed_minus.matrix(),
            qgv::table1(qgv::Table1Kind::DeltaPrimeS, 2.0, 3).matrix()) <
        1e-12);
}

TEST_CASE("design_type_iv round trips through classification") {
  auto rng = make_rng(3004);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = uniform_int(rng, 3, 6);
    const auto m = scramble_mps(rng, qgv::standard_m(n, 1));
    const auto profile = *qgv::mps_profile(m);
    double xi = uniform(rng, 0.15, 1.2);
    if (trial % 2 == 0) xi = -xi;
    const auto range = qgv::c_range(xi, profile.d, n);
    const double c = std::isinf(range.upper)
                         ? uniform(rng, 0.3, 10.0)
                         : uniform(rng, 0.1, 1.0) * range.upper;

    const auto designed = qgv::design_type_iv(m, profile, xi, c, n);
    const auto cls = classify_coupling(designed);
    CHECK(cls.tag == CouplingTag::TypeIV_Mixed);
    REQUIRE(cls.xi.has_value());
    REQUIRE(cls.c.has_value());
    CHECK(std::abs(*cls.xi - xi) < 1e-9);
    CHECK(std::abs(*cls.c - c) < 1e-9);
  }
}

TEST_CASE("design_type_iv accepts the boundary c and rejects beyond it") {
  const auto m = qgv::standard_m(3, 1);
  const auto profile = *qgv::mps_profile(m);
  const double xi = -kPi / 4.0;
  // (d^2 + n - 1)(1 + 1)/4 = 2.25 / 2 = 1.125 at d = 1/2, n = 3.
  const double upper = 1.125;

  const auto at_bound = qgv::design_type_iv(m, profile, xi, upper, 3);
  const auto cls = classify_coupling(at_bound);
  REQUIRE(cls.c.has_value());
  CHECK(std::abs(*cls.c - upper) < 1e-9);

  CHECK_THROWS_AS(qgv::design_type_iv(m, profile, xi, upper + 1e-6, 3),
                  qgv::COutOfRange);
  try {
    qgv::design_type_iv(m, profile, xi, upper + 1e-6, 3);
  } catch (const qgv::COutOfRange& e) {
    CHECK(e.upper() == doctest::Approx(upper).epsilon(1e-12));
    CHECK(e.upper_closed());
  }
}

TEST_CASE("designs validate their inputs") {
  auto rng = make_rng(3005);
  const auto m = qgv::standard_m(4, 1);
  const auto profile = *qgv::mps_profile(m);

  CHECK_THROWS_AS(qgv::design_type_ii(m, profile, -1.0, -1, 4),
                  qgv::COutOfRange);
  CHECK_THROWS_AS(qgv::design_type_ii(m, profile, 0.0, -1, 4),
                  qgv::COutOfRange);
  CHECK_THROWS_AS(qgv::design_type_iv(m, profile, 0.0, 1.0, 4),
                  qgv::InvalidXi);

  // A Hermitian unitary matrix that is not modularly permutation-symmetric.
  const auto bad = block_m4();
  CHECK_THROWS_AS(qgv::design_type_ii(bad, profile, 1.0, -1, 4), qgv::NotMPS);

  const auto not_hermitian = random_unitary(rng, 4);
  CHECK_THROWS_AS(qgv::design_type_iii(not_hermitian, profile, 1.0, -1, 4),
                  qgv::NotHermitianUnitary);
}
