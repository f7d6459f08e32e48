#include "nklat/normal_form.hpp"

#include <algorithm>

namespace nklat {

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto rowop = [&](std::size_t dst, std::size_t src, const Int& k) {
    a.add_row(dst, src, k);
    u.add_row(dst, src, k);
  };
  auto colop = [&](std::size_t dst, std::size_t src, const Int& k) {
    a.add_col(dst, src, k);
    v.add_col(dst, src, k);
  };
  auto rowswap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    u.swap_rows(x, y);
  };
  auto colswap = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    v.swap_cols(x, y);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    auto find_pivot = [&](std::size_t& pi, std::size_t& pj) {
      bool found = false;
      Int best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Int mag = abs(a(i, j));
          if (!found || mag < best) {
            best = mag;
            pi = i;
            pj = j;
            found = true;
          }
        }
      return found;
    };
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(pi, pj)) break;
    rowswap(t, pi);
    colswap(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        rowop(i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        colop(j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // move the smallest remainder in row/column t into the pivot
        std::size_t bi = t, bj = t;
        Int best = abs(a(t, t));
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < best) {
            best = abs(a(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < best) {
            best = abs(a(t, j));
            bi = t;
            bj = j;
          }
        rowswap(t, bi);
        colswap(t, bj);
        continue;
      }
      // divisibility condition on the trailing block
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols && !fixed; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            rowop(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  return {a, u, v};
}

IntMatrix hermite_normal_form(const IntMatrix& rows_in) {
  IntMatrix a = rows_in;
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    // gcd-combine column c below row r into row r
    for (std::size_t i = r + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(r, c).get_mpz_t(), a(i, c).get_mpz_t());
      Int x = a(r, c) / g;
      Int y = a(i, c) / g;
      for (std::size_t j = 0; j < m; ++j) {
        Int top = s * a(r, j) + t * a(i, j);
        Int bot = -y * a(r, j) + x * a(i, j);
        a(r, j) = top;
        a(i, j) = bot;
      }
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (std::size_t j = 0; j < m; ++j) a(r, j) = -a(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
      if (q != 0) a.add_row(i, r, -q);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return a.submatrix(0, 0, r, m);
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return hermite_normal_form(IntMatrix::identity(n));
  SmithForm s = smith_normal_form(m);
  const std::size_t r = s.rank();
  IntMatrix basis(n - r, n);
  for (std::size_t k = r; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(k - r, i) = s.V(i, k);
  return hermite_normal_form(basis);
}

IntMatrix saturate_rows(const IntMatrix& rows) {
  if (rows.rows() == 0) return rows;
  SmithForm s = smith_normal_form(rows);
  const std::size_t r = s.rank();
  IntMatrix vinv = unimodular_inverse(s.V);
  return hermite_normal_form(vinv.submatrix(0, 0, r, vinv.cols()));
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  RatMatrix inv = inverse(to_rational(m));
  return to_integer(inv);
}

}  // namespace nklat
