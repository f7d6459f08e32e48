#pragma once

#include <vector>

#include "nklat/lattice.hpp"

namespace nklat {

struct ShortVector {
  IntVector coords;
  Int norm;  // -x.x for a negative definite lattice, > 0
  friend bool operator==(const ShortVector&, const ShortVector&) = default;
};

enum class Exec { Serial, Parallel };

// All x != 0 in a negative definite lattice with 0 < -x.x <= bound, one per
// sign pair (first nonzero coordinate positive), sorted by norm then
// lexicographically. DomainError if the lattice is not negative definite.
std::vector<ShortVector> short_vectors_upto(const Lattice& l, const Int& bound, Exec exec = Exec::Parallel);

// Vectors with x.x == n for n < 0, same normalization and order.
std::vector<IntVector> short_vectors(const Lattice& l, const Int& n, Exec exec = Exec::Parallel);

// Coordinate-box brute force used as a test oracle: |x_i| <= floor(sqrt(bound * (A^{-1})_ii))
// with A = -gram. Exponential in the rank.
std::vector<ShortVector> short_vectors_box(const Lattice& l, const Int& bound);

}  // namespace nklat
