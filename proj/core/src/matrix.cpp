#include "qgv/matrix.hpp"

#include <cmath>
#include <utility>

namespace qgv {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int j = 0; j < n; ++j) m(j, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::all_ones(int n) {
  ComplexMatrix m(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) m(j, l) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    const std::vector<std::vector<Complex>>& rows) {
  const int n = static_cast<int>(rows.size());
  ComplexMatrix m(n);
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(rows[j].size()) != n)
      throw DimensionMismatch("from_rows: ragged row lengths");
    for (int l = 0; l < n; ++l) m(j, l) = rows[j][l];
  }
  if (!m.all_finite())
    throw Error("from_rows: non-finite entry");
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

namespace {

void require_same_order(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  if (a.order() != b.order())
    throw DimensionMismatch(std::string(op) + ": orders differ");
}

}  // namespace

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a, b, "operator+");
  const int n = a.order();
  ComplexMatrix r(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) r(j, l) = a(j, l) + b(j, l);
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a, b, "operator-");
  const int n = a.order();
  ComplexMatrix r(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) r(j, l) = a(j, l) - b(j, l);
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a, b, "operator*");
  const int n = a.order();
  ComplexMatrix r(n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      const Complex ajm = a(j, m);
      if (ajm == Complex{}) continue;
      for (int l = 0; l < n; ++l) r(j, l) += ajm * b(m, l);
    }
  }
  return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  const int n = a.order();
  ComplexMatrix r(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) r(j, l) = s * a(j, l);
  return r;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  const int n = a.order();
  ComplexMatrix r(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) r(j, l) = std::conj(a(l, j));
  return r;
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a, b, "frobenius_inner");
  const int n = a.order();
  Complex acc{};
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) acc += std::conj(a(j, l)) * b(j, l);
  return acc;
}

Complex trace(const ComplexMatrix& a) {
  Complex acc{};
  for (int j = 0; j < a.order(); ++j) acc += a(j, j);
  return acc;
}

double frobenius_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (int j = 0; j < a.order(); ++j)
    for (int l = 0; l < a.order(); ++l) acc += std::norm(a(j, l));
  return std::sqrt(acc);
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (int j = 0; j < a.order(); ++j)
    for (int l = 0; l < a.order(); ++l) m = std::max(m, std::abs(a(j, l)));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a, b, "max_abs_diff");
  double m = 0.0;
  for (int j = 0; j < a.order(); ++j)
    for (int l = 0; l < a.order(); ++l)
      m = std::max(m, std::abs(a(j, l) - b(j, l)));
  return m;
}

ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b,
                           Tolerance tol) {
  require_same_order(a, b, "solve_linear");
  const int n = a.order();
  ComplexMatrix lhs = a;
  ComplexMatrix x = b;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(lhs(col, col));
    for (int row = col + 1; row < n; ++row) {
      const double cand = std::abs(lhs(row, col));
      if (cand > best) {
        best = cand;
        pivot = row;
      }
    }
    if (best <= tol.eps)
      throw SingularMatrix("solve_linear: pivot below tolerance");
    if (pivot != col) {
      for (int l = col; l < n; ++l) std::swap(lhs(col, l), lhs(pivot, l));
      for (int l = 0; l < n; ++l) std::swap(x(col, l), x(pivot, l));
    }
    const Complex inv = 1.0 / lhs(col, col);
    for (int row = col + 1; row < n; ++row) {
      const Complex factor = lhs(row, col) * inv;
      if (factor == Complex{}) continue;
      lhs(row, col) = 0.0;
      for (int l = col + 1; l < n; ++l) lhs(row, l) -= factor * lhs(col, l);
      for (int l = 0; l < n; ++l) x(row, l) -= factor * x(col, l);
    }
  }

  for (int col = n - 1; col >= 0; --col) {
    const Complex inv = 1.0 / lhs(col, col);
    for (int l = 0; l < n; ++l) x(col, l) *= inv;
    for (int row = 0; row < col; ++row) {
      const Complex factor = lhs(row, col);
      if (factor == Complex{}) continue;
      for (int l = 0; l < n; ++l) x(row, l) -= factor * x(col, l);
    }
  }
  return x;
}

bool is_unitary(const ComplexMatrix& a, Tolerance tol) {
  const int n = a.order();
  // row j . conj(row l) against identity, entry by entry
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      Complex acc{};
      for (int m = 0; m < n; ++m) acc += a(j, m) * std::conj(a(l, m));
      if (j == l) acc -= 1.0;
      if (std::abs(acc) > tol.eps) return false;
    }
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& a, Tolerance tol) {
  const int n = a.order();
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      if (std::abs(a(j, l) - std::conj(a(l, j))) > tol.eps) return false;
  return true;
}

bool is_diagonal(const ComplexMatrix& a, Tolerance tol) {
  const int n = a.order();
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      if (j != l && std::abs(a(j, l)) > tol.eps) return false;
  return true;
}

}  // namespace qgv
