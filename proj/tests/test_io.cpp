#include <unistd.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "coupling_file.hpp"
#include "curve_writer.hpp"
#include "doctest.h"
#include "qgv/coupling.hpp"
#include "qgv/matrix.hpp"
#include "test_support.hpp"

using qgv::Complex;
using qgv::ComplexMatrix;
using qgv_cli::Json;
using namespace qgv_test;

namespace {

const qgv::Tolerance kTol = qgv::default_tolerance();

// Temporary file scoped to one test.
class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("qgv_io_test_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++) + ".json"))
                .string();
    std::ofstream out(path_);
    out << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_CASE("matrix json round trips through both entry spellings") {
  auto rng = make_rng(5001);
  const auto m = random_unitary(rng, 3);
  const auto back = qgv_cli::matrix_from_json(qgv_cli::matrix_to_json(m), "U");
  CHECK(qgv::max_abs_diff(back, m) == 0.0);

  // Bare numbers parse as real entries.
  const Json bare = Json::parse("[[0, 1], [1, 0]]");
  const auto swap = qgv_cli::matrix_from_json(bare, "U");
  CHECK(swap(0, 1) == Complex(1.0));
  CHECK(swap(1, 1) == Complex(0.0));
}

TEST_CASE("matrix json rejects malformed shapes") {
  for (const char* text : {
           "[]",                      // empty
           "[[1, 2]]",                // not square
           "[[1, [2]], [3, 4]]",      // entry with one component
           "[[1, [2, 3, 4]], [5, 6]]" // entry with three components
       }) {
    CHECK_THROWS_AS(
        qgv_cli::matrix_from_json(Json::parse(text), "U"),
        qgv_cli::ParseError);
  }
}

TEST_CASE("parse_coupling accepts each representation once") {
  const Json u_form = {{"n", 2}, {"U", Json::parse("[[0, 1], [1, 0]]")}};
  const auto from_u = qgv_cli::parse_coupling(u_form, kTol);
  CHECK(from_u.degree() == 2);
  CHECK(from_u.matrix()(0, 1) == Complex(1.0));

  Json spectral;
  spectral["n"] = 2;
  spectral["alpha"] = 0.0;
  spectral["beta"] = kPi;
  spectral["M"] = Json::parse("[[0, 1], [1, 0]]");
  const auto from_spectral_form = qgv_cli::parse_coupling(spectral, kTol);
  // alpha = 0, beta = pi reproduces M itself.
  CHECK(qgv::max_abs_diff(from_spectral_form.matrix(), from_u.matrix()) < 1e-15);

  const Json kind_form = {{"kind", "delta"}, {"param", 3.0}, {"n", 3}};
  const auto from_kind = qgv_cli::parse_coupling(kind_form, kTol);
  CHECK(qgv::max_abs_diff(from_kind.matrix(),
                          qgv::table1(qgv::Table1Kind::Delta, 3.0, 3).matrix()) ==
        0.0);
}

TEST_CASE("parse_coupling rejects ambiguous or missing representations") {
  Json both = {{"n", 2}, {"U", Json::parse("[[0, 1], [1, 0]]")}};
  both["kind"] = "free";
  CHECK_THROWS_AS(qgv_cli::parse_coupling(both, kTol), qgv_cli::ParseError);

  const Json neither = {{"n", 2}};
  CHECK_THROWS_AS(qgv_cli::parse_coupling(neither, kTol), qgv_cli::ParseError);

  // Spectral form with a missing piece.
  Json partial;
  partial["n"] = 2;
  partial["alpha"] = 0.0;
  partial["M"] = Json::parse("[[0, 1], [1, 0]]");
  CHECK_THROWS_AS(qgv_cli::parse_coupling(partial, kTol), qgv_cli::ParseError);

  // Declared order disagreeing with the matrix.
  const Json mismatch = {{"n", 3}, {"U", Json::parse("[[0, 1], [1, 0]]")}};
  CHECK_THROWS_AS(qgv_cli::parse_coupling(mismatch, kTol),
                  qgv_cli::ParseError);

  // Unknown family name.
  const Json unknown = {{"kind", "robin"}, {"param", 1.0}, {"n", 3}};
  CHECK_THROWS_AS(qgv_cli::parse_coupling(unknown, kTol), qgv_cli::ParseError);
}

TEST_CASE("parse_coupling enforces unitarity unless disabled") {
  const Json skewed = {{"n", 2}, {"U", Json::parse("[[0, 1.001], [1, 0]]")}};
  CHECK_THROWS_AS(qgv_cli::parse_coupling(skewed, kTol), qgv::NotUnitary);
  CHECK(qgv_cli::parse_coupling(skewed, kTol, false).degree() == 2);
}

TEST_CASE("load_coupling_file reads from disk and flags bad files") {
  const TempFile good(R"({"kind": "free", "n": 3})");
  CHECK(qgv_cli::load_coupling_file(good.path(), kTol).degree() == 3);

  const TempFile broken("{\"n\": 2,");
  CHECK_THROWS_AS(qgv_cli::load_coupling_file(broken.path(), kTol),
                  qgv_cli::ParseError);
  CHECK_THROWS_AS(qgv_cli::load_coupling_file("/nonexistent/file.json", kTol),
                  qgv_cli::ParseError);
}

TEST_CASE("load_m_file wants a Hermitian unitary matrix") {
  const TempFile good(R"({"n": 2, "M": [[0, 1], [1, 0]]})");
  const auto m = qgv_cli::load_m_file(good.path(), kTol);
  CHECK(m(0, 1) == Complex(1.0));

  const TempFile skew(R"({"n": 2, "M": [[0, [0, 1]], [[0, 1], 0]]})");
  CHECK_THROWS_AS(qgv_cli::load_m_file(skew.path(), kTol),
                  qgv::NotHermitianUnitary);
}

TEST_CASE("kind names round trip") {
  using qgv::Table1Kind;
  for (const auto kind : {Table1Kind::Free, Table1Kind::Delta,
                          Table1Kind::DeltaPrimeS, Table1Kind::DeltaPrime,
                          Table1Kind::DeltaP})
    CHECK(qgv_cli::kind_from_string(qgv_cli::kind_to_string(kind)) == kind);
  CHECK_THROWS_AS(qgv_cli::kind_from_string("robin"), qgv_cli::ParseError);
}

TEST_CASE("format_number emits shortest 15-digit decimals") {
  CHECK(qgv_cli::format_number(2.5) == "2.5");
  CHECK(qgv_cli::format_number(0.1) == "0.1");
  CHECK(qgv_cli::format_number(1.0) == "1");
  CHECK(qgv_cli::format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(qgv_cli::format_number(1e-6) == "1e-06");
}

TEST_CASE("transmission labels switch style at two-digit degrees") {
  CHECK(qgv_cli::transmission_label(0, 1, 3) == "T_12");
  CHECK(qgv_cli::transmission_label(2, 0, 9) == "T_31");
  CHECK(qgv_cli::transmission_label(0, 10, 12) == "T_1_11");
}

TEST_CASE("CsvWriter joins cells with commas") {
  std::ostringstream out;
  qgv_cli::CsvWriter csv(out);
  csv.header({"k", "value"});
  csv.row({1.0, 0.5});
  csv.row({2.0, 1.0 / 3.0});
  CHECK(out.str() == "k,value\n1,0.5\n2,0.333333333333333\n");
}
