#include "nklat/matrix.hpp"

namespace nklat {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw DomainError("matrix entry is not an integer");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

IntVector to_integer(const RatVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw DomainError("vector entry is not an integer");
    out[i] = v[i].get_num();
  }
  return out;
}

bool is_integral(const RatMatrix& m) {
  for (const auto& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

namespace {

// Reduces a to row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_echelon(RatMatrix& a, Rat* det_sign_scale = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      a.swap_rows(p, r);
      if (det_sign_scale) *det_sign_scale = -*det_sign_scale;
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rat k = -a(i, c) / a(r, c);
      a.add_row(i, r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rat determinant(const RatMatrix& m) {
  if (!m.square()) throw InputError("determinant of a non-square matrix");
  RatMatrix a = m;
  Rat s = 1;
  auto piv = row_echelon(a, &s);
  if (piv.size() < a.rows()) return 0;
  Rat d = s;
  for (std::size_t i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

Int determinant(const IntMatrix& m) {
  Rat d = determinant(to_rational(m));
  return d.get_num();
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return row_echelon(a).size();
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.square()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw DomainError("matrix is singular");
    a.swap_rows(p, c);
    Rat inv = 1 / a(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      a.add_row(i, c, -a(i, c));
    }
  }
  return a.submatrix(0, n, n, n);
}

RatMatrix rational_kernel(const RatMatrix& m) {
  RatMatrix a = m;
  auto piv = row_echelon(a);
  // back substitution to reduced form
  for (std::size_t r = piv.size(); r-- > 0;) {
    const std::size_t c = piv[r];
    Rat inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < r; ++i)
      if (a(i, c) != 0) a.add_row(i, r, -a(i, c));
  }
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  RatMatrix k(a.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], f) = -a(r, free[f]);
  }
  return k;
}

Rat dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat bilinear(const RatMatrix& gram, const RatVector& a, const RatVector& b) {
  if (a.size() != gram.rows() || b.size() != gram.cols()) throw InputError("vector length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) row += gram(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

Rat bilinear(const RatMatrix& gram, const IntVector& a, const IntVector& b) {
  if (a.size() != gram.rows() || b.size() != gram.cols()) throw InputError("vector length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) row += gram(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

IntVector characteristic_polynomial(const IntMatrix& m) {
  // Faddeev-LeVerrier; every division below is exact.
  if (!m.square()) throw InputError("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  IntVector c(n + 1);
  c[n] = 1;
  IntMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    IntMatrix am = m * mk;
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

IntMatrix matrix_power(const IntMatrix& m, unsigned long e) {
  IntMatrix result = IntMatrix::identity(m.rows());
  IntMatrix base = m;
  while (e) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

}  // namespace nklat
