#include "nklat/lattice.hpp"

#include <algorithm>

#include "nklat/normal_form.hpp"

namespace nklat {

Lattice::Lattice(RatMatrix gram, std::string name, std::vector<BlockSpan> blocks)
    : gram_(std::move(gram)), name_(std::move(name)), blocks_(std::move(blocks)) {
  if (!gram_.square()) throw InputError("Gram matrix must be square");
  if (gram_.rows() == 0) throw InputError("lattice rank must be positive");
  if (!gram_.is_symmetric()) throw InputError("Gram matrix must be symmetric");
  det_ = nklat::determinant(gram_);
  if (det_ == 0) throw DomainError("Gram matrix is degenerate");
  integral_ = is_integral(gram_);
  even_ = integral_;
  for (std::size_t i = 0; i < gram_.rows() && even_; ++i)
    if (!mpz_even_p(gram_(i, i).get_num_mpz_t())) even_ = false;
}

Lattice Lattice::from_integers(const IntMatrix& gram, std::string name) {
  return Lattice(to_rational(gram), std::move(name));
}

IntMatrix Lattice::integer_gram() const {
  if (!integral_) throw DomainError("lattice '" + name_ + "' is not integral");
  return to_integer(gram_);
}

Lattice Lattice::renamed(std::string name) const {
  Lattice copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

LatticeVector::LatticeVector(LatticePtr l, IntVector c) : lattice(std::move(l)), coords(std::move(c)) {
  if (!lattice) throw InputError("lattice vector without a lattice");
  if (coords.size() != lattice->rank()) throw InputError("coordinate length does not match lattice rank");
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Int& x) { return x == 0; });
}

namespace {
void require_same(const LatticeVector& a, const LatticeVector& b) {
  if (a.lattice != b.lattice && !(*a.lattice == *b.lattice)) throw InputError("vectors belong to different lattices");
}
}  // namespace

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
  require_same(*this, o);
  IntVector c = coords;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords[i];
  return {lattice, c};
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const {
  require_same(*this, o);
  IntVector c = coords;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords[i];
  return {lattice, c};
}

LatticeVector LatticeVector::operator-() const { return Int(-1) * *this; }

LatticeVector operator*(const Int& k, const LatticeVector& v) {
  IntVector c = v.coords;
  for (auto& x : c) x *= k;
  return {v.lattice, c};
}

Rat inner(const LatticeVector& x, const LatticeVector& y) {
  require_same(x, y);
  return bilinear(x.lattice->gram(), x.coords, y.coords);
}

Rat square(const LatticeVector& x) { return inner(x, x); }

Int divisibility(const Lattice& l, const IntVector& x) {
  if (x.size() != l.rank()) throw InputError("coordinate length does not match lattice rank");
  if (std::all_of(x.begin(), x.end(), [](const Int& c) { return c == 0; }))
    throw InputError("divisibility of the zero vector");
  const IntMatrix g = l.integer_gram();
  Int d = 0;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < l.rank(); ++j) s += g(i, j) * x[j];
    d = gcd(d, s);
  }
  return d;
}

Int divisibility(const LatticeVector& x) { return divisibility(*x.lattice, x.coords); }

Diagonalization diagonalize(const RatMatrix& gram) {
  if (!gram.is_symmetric()) throw InputError("form must be symmetric");
  const std::size_t n = gram.rows();
  RatMatrix a = gram;
  RatMatrix p = RatMatrix::identity(n);

  auto congruence_add = [&](std::size_t dst, std::size_t src, const Rat& c) {
    // basis vector dst += c * basis vector src
    a.add_row(dst, src, c);
    a.add_col(dst, src, c);
    p.add_col(dst, src, c);
  };
  auto congruence_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    a.swap_cols(i, j);
    p.swap_cols(i, j);
  };

  for (std::size_t k = 0; k < n; ++k) {
    // largest-magnitude diagonal pivot
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, i) != 0 && (best == n || abs(a(i, i)) > abs(a(best, best)))) best = i;
    if (best == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) throw DomainError("quadratic form is degenerate");
      congruence_add(pi, pj, Rat(1));
      best = pi;
    }
    congruence_swap(k, best);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(j, k) == 0) continue;
      congruence_add(j, k, -a(j, k) / a(k, k));
    }
  }
  RatVector diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  return {p, diag};
}

Signature signature(const RatMatrix& gram) {
  Signature s;
  if (gram.rows() == 0) return s;
  for (const auto& d : diagonalize(gram).diagonal) (d > 0 ? s.plus : s.minus)++;
  return s;
}

Signature signature(const Lattice& l) { return signature(l.gram()); }

bool is_negative_definite(const Lattice& l) { return signature(l).plus == 0; }
bool is_positive_definite(const Lattice& l) { return signature(l).minus == 0; }

Sublattice::Sublattice(LatticePtr ambient, IntMatrix basis, bool saturated)
    : ambient_(std::move(ambient)), basis_(std::move(basis)), saturated_(saturated) {
  if (!ambient_) throw InputError("sublattice without ambient lattice");
  if (basis_.rows() > 0 && basis_.cols() != ambient_->rank())
    throw InputError("sublattice basis has wrong number of columns");
  if (basis_.rows() == 0) basis_ = IntMatrix(0, ambient_->rank());
  if (rank() > 0 && nklat::rank(to_rational(basis_)) != rank())
    throw InputError("sublattice basis rows are linearly dependent");
}

Lattice Sublattice::induced(std::string name) const {
  if (rank() == 0) throw DomainError("the zero sublattice has no Gram matrix");
  RatMatrix b = to_rational(basis_);
  return Lattice(b * ambient_->gram() * b.transpose(), std::move(name));
}

IntVector Sublattice::to_ambient(const IntVector& c) const {
  if (c.size() != rank()) throw InputError("coefficient length does not match sublattice rank");
  IntVector out(ambient_->rank(), Int(0));
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c[i] * basis_(i, j);
  return out;
}

bool Sublattice::contains(const IntVector& x) const {
  if (x.size() != ambient_->rank()) throw InputError("coordinate length does not match lattice rank");
  if (rank() == 0) return std::all_of(x.begin(), x.end(), [](const Int& c) { return c == 0; });
  IntMatrix stacked(rank() + 1, x.size());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) stacked(i, j) = basis_(i, j);
  for (std::size_t j = 0; j < x.size(); ++j) stacked(rank(), j) = x[j];
  return hermite_normal_form(stacked) == hermite_normal_form(basis_);
}

bool Sublattice::same_span(const Sublattice& other) const {
  if (rank() != other.rank()) return false;
  if (rank() == 0) return true;
  return hermite_normal_form(basis_) == hermite_normal_form(other.basis_);
}

Sublattice span(LatticePtr ambient, const std::vector<IntVector>& vectors) {
  const std::size_t n = ambient->rank();
  IntMatrix m(vectors.size(), n);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n) throw InputError("coordinate length does not match lattice rank");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = vectors[i][j];
  }
  return Sublattice(std::move(ambient), hermite_normal_form(m), false);
}

Sublattice saturate(const Sublattice& s) {
  if (s.rank() == 0) return Sublattice(s.ambient(), s.basis(), true);
  return Sublattice(s.ambient(), saturate_rows(s.basis()), true);
}

Sublattice orthogonal_complement(const Sublattice& s) {
  const auto& amb = s.ambient();
  const std::size_t n = amb->rank();
  if (s.rank() == 0) return whole(amb);
  RatMatrix m = to_rational(s.basis()) * amb->gram();
  Int den = 1;
  for (const auto& x : m.data()) den = lcm(den, Int(x.get_den()));
  IntMatrix mi(m.rows(), n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) mi(i, j) = Rat(m(i, j) * den).get_num();
  return Sublattice(amb, integer_kernel(mi), true);
}

Sublattice whole(LatticePtr ambient) {
  const std::size_t n = ambient->rank();
  return Sublattice(std::move(ambient), IntMatrix::identity(n), true);
}

Lattice direct_sum(const std::vector<Lattice>& parts, std::string name) {
  if (parts.empty()) throw InputError("direct sum of no lattices");
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  RatMatrix g(n, n);
  std::vector<BlockSpan> blocks;
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
    if (p.blocks().empty()) {
      blocks.push_back({p.name(), off, p.rank()});
    } else {
      for (const auto& b : p.blocks()) blocks.push_back({b.name, off + b.offset, b.size});
    }
    off += p.rank();
  }
  if (name.empty()) {
    for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? " + " : "") + parts[i].name();
  }
  return Lattice(std::move(g), std::move(name), std::move(blocks));
}

Lattice rescale(const Lattice& l, const Rat& m) {
  if (m == 0) throw InputError("rescaling by zero");
  return Lattice(m * l.gram(), l.name() + "(" + to_string(m) + ")");
}

Lattice dual(const Lattice& l) { return Lattice(inverse(l.gram()), "dual(" + l.name() + ")"); }

}  // namespace nklat
