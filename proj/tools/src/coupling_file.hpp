#ifndef QGV_TOOLS_COUPLING_FILE_HPP
#define QGV_TOOLS_COUPLING_FILE_HPP

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qgv/coupling.hpp"
#include "qgv/matrix.hpp"

namespace qgv_cli {

// ordered_json keeps object keys in insertion order, so identical inputs
// serialize byte-identically.
using Json = nlohmann::ordered_json;

// Raised for unreadable files and schema violations; the driver maps it to
// exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json load_json_file(const std::string& path);

// Matrices are stored as n x n arrays whose entries are [re, im] pairs;
// a bare number is accepted on input as a real entry.
qgv::ComplexMatrix matrix_from_json(const Json& node, const std::string& what);
Json matrix_to_json(const qgv::ComplexMatrix& m);

// A coupling file carries exactly one of three top-level representations:
//   {"n": 3, "U": [[..]]}                          the unitary itself
//   {"n": 3, "alpha": a, "beta": b, "M": [[..]]}   spectral data
//   {"kind": "delta", "param": 3.0, "n": 3}        a named family member
// validate=false skips the unitarity gate on the U form so diagnostics can
// inspect a corrupt matrix; the other forms always validate their inputs.
qgv::VertexCoupling parse_coupling(const Json& doc, qgv::Tolerance tol,
                                   bool validate = true);
qgv::VertexCoupling load_coupling_file(const std::string& path,
                                       qgv::Tolerance tol,
                                       bool validate = true);

// Standalone M file for the design command: {"n": N, "M": [[..]]}.
// The matrix must be Hermitian unitary at tol.
qgv::ComplexMatrix load_m_file(const std::string& path, qgv::Tolerance tol);

// Family names used by the "kind" representation: free, delta,
// delta_prime_s, delta_prime, delta_p.
qgv::Table1Kind kind_from_string(const std::string& name);
std::string kind_to_string(qgv::Table1Kind kind);

}  // namespace qgv_cli

#endif  // QGV_TOOLS_COUPLING_FILE_HPP
