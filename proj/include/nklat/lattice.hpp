#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nklat/matrix.hpp"

namespace nklat {

struct Signature {
  int plus = 0;
  int minus = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Named run of consecutive basis vectors, used to keep block structure
// (e.g. "U(2)", "E8") attached to a direct sum.
struct BlockSpan {
  std::string name;
  std::size_t offset = 0;
  std::size_t size = 0;
  friend bool operator==(const BlockSpan&, const BlockSpan&) = default;
};

// Free Z-module of finite rank with a nondegenerate rational symmetric form,
// given by its Gram matrix in a fixed basis. Immutable.
class Lattice {
 public:
  explicit Lattice(RatMatrix gram, std::string name = {}, std::vector<BlockSpan> blocks = {});
  static Lattice from_integers(const IntMatrix& gram, std::string name = {});

  std::size_t rank() const { return gram_.rows(); }
  const RatMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  const std::vector<BlockSpan>& blocks() const { return blocks_; }

  bool integral() const { return integral_; }
  bool even() const { return even_; }
  Rat determinant() const { return det_; }
  // Throws DomainError for non-integral lattices.
  IntMatrix integer_gram() const;

  Lattice renamed(std::string name) const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  RatMatrix gram_;
  std::string name_;
  std::vector<BlockSpan> blocks_;
  Rat det_;
  bool integral_ = false;
  bool even_ = false;
};

using LatticePtr = std::shared_ptr<const Lattice>;

// Element of a lattice given by integer coordinates in the lattice basis.
struct LatticeVector {
  LatticePtr lattice;
  IntVector coords;

  LatticeVector(LatticePtr l, IntVector c);
  bool is_zero() const;
  LatticeVector operator+(const LatticeVector& o) const;
  LatticeVector operator-(const LatticeVector& o) const;
  LatticeVector operator-() const;
  friend LatticeVector operator*(const Int& k, const LatticeVector& v);
  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords == b.coords; }
};

// Sublattice given by a full-row-rank basis (rows) in ambient coordinates.
class Sublattice {
 public:
  Sublattice(LatticePtr ambient, IntMatrix basis, bool saturated = false);

  const LatticePtr& ambient() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rows(); }
  bool saturated() const { return saturated_; }

  // Lattice with the induced Gram matrix B G B^T.
  Lattice induced(std::string name = {}) const;
  // Ambient coordinates of the combination sum_i c_i b_i.
  IntVector to_ambient(const IntVector& c) const;
  bool contains(const IntVector& ambient_coords) const;
  // Same Q-span and same Z-span.
  bool same_span(const Sublattice& other) const;

 private:
  LatticePtr ambient_;
  IntMatrix basis_;
  bool saturated_;
};

Rat inner(const LatticeVector& x, const LatticeVector& y);
Rat square(const LatticeVector& x);
// Positive generator of x.L (integral lattices only).
Int divisibility(const Lattice& l, const IntVector& x);
Int divisibility(const LatticeVector& x);

// Exact symmetric elimination with pivoting. Throws DomainError when degenerate.
Signature signature(const RatMatrix& gram);
Signature signature(const Lattice& l);

// Rational basis (columns of `basis`) orthogonal for the form; `diagonal[i]`
// is the square of the i-th basis vector. Throws DomainError when degenerate.
struct Diagonalization {
  RatMatrix basis;
  RatVector diagonal;
};
Diagonalization diagonalize(const RatMatrix& gram);

bool is_negative_definite(const Lattice& l);
bool is_positive_definite(const Lattice& l);

Sublattice span(LatticePtr ambient, const std::vector<IntVector>& vectors);
Sublattice saturate(const Sublattice& s);
Sublattice orthogonal_complement(const Sublattice& s);
Sublattice whole(LatticePtr ambient);

Lattice direct_sum(const std::vector<Lattice>& parts, std::string name = {});
Lattice rescale(const Lattice& l, const Rat& m);
Lattice dual(const Lattice& l);

}  // namespace nklat
