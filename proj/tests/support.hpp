#pragma once

#include <random>

#include "nklat/isometry.hpp"

namespace nklat::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline IntMatrix random_int_matrix(std::size_t r, std::size_t c, long lo, long hi) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
  return m;
}

inline IntMatrix diag_matrix(std::size_t n, std::initializer_list<std::pair<std::size_t, long>> entries) {
  IntMatrix m = IntMatrix::identity(n);
  for (auto [i, v] : entries) m(i, i) = v;
  return m;
}

// Random word in reflections of E8 simple roots and the A1 generators.
inline LatticeIsometry random_reflection_word(const StandardLambdaModel& m, int length) {
  LatticeIsometry f = identity_isometry(m.lattice());
  for (int k = 0; k < length; ++k) {
    const long pick = uniform(0, 9);
    const IntVector v = pick < 8 ? m.alpha(static_cast<int>(pick) + 1).coords
                                 : m.basis(pick == 8 ? StandardLambdaModel::kHalfsum : StandardLambdaModel::kHalfdiff).coords;
    f = compose(reflection(m.lattice(), v), f);
  }
  return f;
}

}  // namespace nklat::test
