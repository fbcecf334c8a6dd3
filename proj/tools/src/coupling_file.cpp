#include "coupling_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qgv_cli {

namespace {

double number_from_json(const Json& node, const std::string& what) {
  if (!node.is_number())
    throw ParseError(what + ": expected a number");
  const double value = node.get<double>();
  if (!std::isfinite(value)) throw ParseError(what + ": non-finite number");
  return value;
}

qgv::Complex entry_from_json(const Json& node, const std::string& what) {
  if (node.is_number()) return qgv::Complex(node.get<double>(), 0.0);
  if (!node.is_array() || node.size() != 2)
    throw ParseError(what + ": expected [re, im] or a bare real number");
  return qgv::Complex(number_from_json(node[0], what + "[0]"),
                      number_from_json(node[1], what + "[1]"));
}

int order_from_json(const Json& doc) {
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("coupling file: missing integer field \"n\"");
  const int n = doc["n"].get<int>();
  if (n < 1 || n > qgv::kMaxOrder)
    throw ParseError("coupling file: \"n\" outside [1, 64]");
  return n;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(path + ": expected a JSON object");
  return doc;
}

qgv::ComplexMatrix matrix_from_json(const Json& node, const std::string& what) {
  if (!node.is_array() || node.empty())
    throw ParseError(what + ": expected a non-empty array of rows");
  const int n = static_cast<int>(node.size());
  if (n > qgv::kMaxOrder) throw ParseError(what + ": order exceeds 64");
  qgv::ComplexMatrix m(n);
  for (int j = 0; j < n; ++j) {
    const Json& row = node[j];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(what + ": rows must all have length n");
    for (int l = 0; l < n; ++l) {
      std::ostringstream cell;
      cell << what << "[" << j << "][" << l << "]";
      m(j, l) = entry_from_json(row[l], cell.str());
    }
  }
  return m;
}

Json matrix_to_json(const qgv::ComplexMatrix& m) {
  Json rows = Json::array();
  for (int j = 0; j < m.order(); ++j) {
    Json row = Json::array();
    for (int l = 0; l < m.order(); ++l)
      row.push_back(Json::array({m(j, l).real(), m(j, l).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

qgv::VertexCoupling parse_coupling(const Json& doc, qgv::Tolerance tol,
                                   bool validate) {
  const bool has_u = doc.contains("U");
  const bool has_spectral =
      doc.contains("alpha") || doc.contains("beta") || doc.contains("M");
  const bool has_kind = doc.contains("kind");
  if (has_u + has_spectral + has_kind != 1)
    throw ParseError(
        "coupling file: exactly one of the U, spectral, or kind "
        "representations must be present");

  if (has_u) {
    const int n = order_from_json(doc);
    qgv::ComplexMatrix U = matrix_from_json(doc["U"], "U");
    if (U.order() != n)
      throw ParseError("coupling file: U order disagrees with \"n\"");
    return validate ? qgv::VertexCoupling::from_unitary(std::move(U), tol)
                    : qgv::VertexCoupling::unchecked(std::move(U));
  }

  if (has_spectral) {
    if (!doc.contains("alpha") || !doc.contains("beta") || !doc.contains("M"))
      throw ParseError(
          "coupling file: spectral form needs \"alpha\", \"beta\" and \"M\"");
    const int n = order_from_json(doc);
    const double alpha = number_from_json(doc["alpha"], "alpha");
    const double beta = number_from_json(doc["beta"], "beta");
    const qgv::ComplexMatrix M = matrix_from_json(doc["M"], "M");
    if (M.order() != n)
      throw ParseError("coupling file: M order disagrees with \"n\"");
    return qgv::from_spectral(alpha, beta, M, tol);
  }

  if (!doc["kind"].is_string())
    throw ParseError("coupling file: \"kind\" must be a string");
  const qgv::Table1Kind kind = kind_from_string(doc["kind"].get<std::string>());
  const int n = order_from_json(doc);
  double param = 0.0;
  if (doc.contains("param")) param = number_from_json(doc["param"], "param");
  else if (kind != qgv::Table1Kind::Free)
    throw ParseError("coupling file: this kind requires \"param\"");
  return qgv::table1(kind, param, n);
}

qgv::VertexCoupling load_coupling_file(const std::string& path,
                                       qgv::Tolerance tol, bool validate) {
  return parse_coupling(load_json_file(path), tol, validate);
}

qgv::ComplexMatrix load_m_file(const std::string& path, qgv::Tolerance tol) {
  const Json doc = load_json_file(path);
  if (!doc.contains("M")) throw ParseError(path + ": missing field \"M\"");
  const int n = order_from_json(doc);
  qgv::ComplexMatrix M = matrix_from_json(doc["M"], "M");
  if (M.order() != n) throw ParseError(path + ": M order disagrees with n");
  if (!qgv::is_hermitian(M, tol) || !qgv::is_unitary(M, tol))
    throw qgv::NotHermitianUnitary(path + ": M must be Hermitian unitary");
  return M;
}

qgv::Table1Kind kind_from_string(const std::string& name) {
  if (name == "free") return qgv::Table1Kind::Free;
  if (name == "delta") return qgv::Table1Kind::Delta;
  if (name == "delta_prime_s") return qgv::Table1Kind::DeltaPrimeS;
  if (name == "delta_prime") return qgv::Table1Kind::DeltaPrime;
  if (name == "delta_p") return qgv::Table1Kind::DeltaP;
  throw ParseError("unknown coupling kind \"" + name +
                   "\" (expected free, delta, delta_prime_s, delta_prime or "
                   "delta_p)");
}

std::string kind_to_string(qgv::Table1Kind kind) {
  switch (kind) {
    case qgv::Table1Kind::Free: return "free";
    case qgv::Table1Kind::Delta: return "delta";
    case qgv::Table1Kind::DeltaPrimeS: return "delta_prime_s";
    case qgv::Table1Kind::DeltaPrime: return "delta_prime";
    case qgv::Table1Kind::DeltaP: return "delta_p";
  }
  throw qgv::Error("kind_to_string: unreachable");
}

}  // namespace qgv_cli
