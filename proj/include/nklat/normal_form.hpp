#pragma once

#include "nklat/matrix.hpp"

namespace nklat {

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  std::vector<Int> diagonal() const;
  std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Row-style Hermite normal form: upper echelon, positive pivots, entries above
// each pivot reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& rows);

// Z-basis (as rows) of {x in Z^n : m x = 0}; the result is saturated and in HNF.
IntMatrix integer_kernel(const IntMatrix& m);

// Z-basis (as rows, HNF) of (Q-span of rows) intersected with Z^n.
IntMatrix saturate_rows(const IntMatrix& rows);

// Inverse of a unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace nklat
