#include "nklat/isometry.hpp"

#include <numeric>

#include "nklat/cyclotomic.hpp"
#include "nklat/normal_form.hpp"

namespace nklat {

LatticeIsometry make_isometry(LatticePtr l, IntMatrix m) {
  if (!l) throw InputError("isometry without a lattice");
  if (m.rows() != l->rank() || m.cols() != l->rank()) throw InputError("matrix size does not match lattice rank");
  const RatMatrix mr = to_rational(m);
  if (!(mr.transpose() * l->gram() * mr == l->gram())) throw InputError("matrix does not preserve the Gram matrix");
  const Int d = determinant(m);
  if (d != 1 && d != -1) throw InputError("matrix is not unimodular");
  return {std::move(l), std::move(m)};
}

LatticeIsometry identity_isometry(LatticePtr l) {
  const std::size_t n = l->rank();
  return {std::move(l), IntMatrix::identity(n)};
}

LatticeIsometry reflection(LatticePtr l, const IntVector& v) {
  const Rat vv = bilinear(l->gram(), v, v);
  if (vv == 0) throw DomainError("reflection in an isotropic vector");
  const RatVector gv = l->gram() * to_rational(v);
  const std::size_t n = l->rank();
  RatMatrix r = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) -= Rat(2) * Rat(v[i]) * gv[j] / vv;
  if (!is_integral(r)) throw DomainError("reflection is not integral on the lattice");
  return make_isometry(std::move(l), to_integer(r));
}

namespace {
void require_same(const LatticeIsometry& f, const LatticeIsometry& g) {
  if (f.lattice != g.lattice && !(*f.lattice == *g.lattice)) throw InputError("isometries of different lattices");
}
}  // namespace

LatticeIsometry compose(const LatticeIsometry& f, const LatticeIsometry& g) {
  require_same(f, g);
  return make_isometry(f.lattice, f.matrix * g.matrix);
}

LatticeIsometry inverse(const LatticeIsometry& f) {
  return make_isometry(f.lattice, to_integer(inverse(to_rational(f.matrix))));
}

LatticeIsometry conjugate(const LatticeIsometry& f, const LatticeIsometry& g) {
  return compose(compose(g, f), inverse(g));
}

IntVector apply(const LatticeIsometry& f, const IntVector& x) { return f.matrix * x; }

unsigned long order_of(const LatticeIsometry& f, unsigned long cap) {
  const auto factors = cyclotomic_factors(characteristic_polynomial(f.matrix));
  if (!factors) throw DomainError("isometry has infinite order");
  unsigned long l = 1;
  for (unsigned n : *factors) {
    l = std::lcm(l, static_cast<unsigned long>(n));
    if (l > cap) throw DomainError("isometry order exceeds the cap");
  }
  if (!matrix_power(f.matrix, l).is_identity()) throw DomainError("isometry has infinite order");
  return l;
}

InvariantCoinvariant invariant_coinvariant(const LatticeIsometry& f) {
  const std::size_t n = f.lattice->rank();
  const IntMatrix k = integer_kernel(f.matrix - IntMatrix::identity(n));
  Sublattice inv(f.lattice, k, true);
  Sublattice coinv = orthogonal_complement(inv);
  return {inv, coinv};
}

std::vector<RatVector> reflection_decomposition(const LatticeIsometry& f) {
  const RatMatrix& gram = f.lattice->gram();
  const std::size_t n = f.lattice->rank();
  const Diagonalization dz = diagonalize(gram);
  RatMatrix g = to_rational(f.matrix);
  std::vector<RatVector> out;
  auto refl = [&](const RatVector& v) {
    const Rat vv = bilinear(gram, v, v);
    const RatVector gv = gram * v;
    RatMatrix r = RatMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) -= Rat(2) * v[i] * gv[j] / vv;
    return r;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const RatVector x = dz.basis.column(i);
    const RatVector gx = g * x;
    RatVector v(n), w(n);
    bool moved = false;
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = gx[k] - x[k];
      w[k] = gx[k] + x[k];
      if (v[k] != 0) moved = true;
    }
    if (!moved) continue;
    if (bilinear(gram, v, v) != 0) {
      g = refl(v) * g;
      out.push_back(v);
    } else {
      g = refl(x) * refl(w) * g;
      out.push_back(w);
      out.push_back(x);
    }
  }
  if (!g.is_identity()) throw DomainError("Cartan-Dieudonne decomposition failed");
  return out;
}

bool in_O_plus(const LatticeIsometry& f) {
  int s = 1;
  for (const auto& v : reflection_decomposition(f)) s *= -sign(bilinear(f.lattice->gram(), v, v));
  return s > 0;
}

int spinor_sign_wall(const LatticeIsometry& f) {
  const std::size_t n = f.lattice->rank();
  const RatMatrix a = RatMatrix::identity(n) - to_rational(f.matrix);
  // independent columns of 1 - f span W = im(1 - f); column c is (1 - f) e_c
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < n; ++c) {
    RatMatrix trial(n, cols.size() + 1);
    for (std::size_t k = 0; k < cols.size(); ++k)
      for (std::size_t r = 0; r < n; ++r) trial(r, k) = a(r, cols[k]);
    for (std::size_t r = 0; r < n; ++r) trial(r, cols.size()) = a(r, c);
    if (rank(trial) == cols.size() + 1) cols.push_back(c);
  }
  const std::size_t k = cols.size();
  if (k == 0) return 1;
  // Wall form B(w_i, z_j) with z_j = e_{c_j}, so the entry is (G w_i)_{c_j}
  RatMatrix wall(k, k);
  const RatMatrix ga = f.lattice->gram() * a;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) wall(i, j) = ga(cols[j], cols[i]);
  const int s = sign(determinant(wall));
  return (k % 2 ? -1 : 1) * s;
}

SymplecticStatus symplectic_status(const StandardLambdaModel& model, const LatticeIsometry& f, Exec exec) {
  if (!(*f.lattice == *model.lattice())) throw InputError("isometry is not on the standard model of Lambda");
  SymplecticStatus st;
  st.in_O_plus = in_O_plus(f);
  const auto ic = invariant_coinvariant(f);
  if (ic.coinvariant.rank() == 0) {
    st.coinv_neg_def = true;
  } else {
    st.coinv_neg_def = is_negative_definite(ic.coinvariant.induced());
  }
  if (st.coinv_neg_def) st.witnesses = sublattice_wall_scan(model, ic.coinvariant.basis(), false, exec);
  bool pex = false;
  for (const auto& w : st.witnesses) pex = pex || is_pex(w.wclass);
  st.symplectic = st.in_O_plus && st.coinv_neg_def && !pex;
  st.regular = st.symplectic && st.witnesses.empty();
  return st;
}

unsigned long disc_order(const LatticeIsometry& f) {
  const unsigned long ord = order_of(f);
  const RatMatrix ginv = inverse(f.lattice->gram());
  const std::size_t n = f.lattice->rank();
  for (unsigned long d = 1; d <= ord; ++d) {
    if (ord % d) continue;
    const RatMatrix m = to_rational(matrix_power(f.matrix, d) - IntMatrix::identity(n));
    if (is_integral(m * ginv)) return d;
  }
  return ord;
}

bool is_exceptional(const LatticeIsometry& f) {
  if (order_of(f) != 2) return false;
  const auto ic = invariant_coinvariant(f);
  if (ic.coinvariant.rank() != 1) return false;
  return ic.coinvariant.induced().determinant() == -2;
}

PrimeCheck nonsymplectic_prime_check(const LatticeIsometry& f, unsigned p) {
  if (p != 2 && p != 3 && p != 5 && p != 7) throw InputError("prime check supports p in {2,3,5,7}");
  if (order_of(f) != p) throw InputError("isometry order is not " + std::to_string(p));
  PrimeCheck pc;
  pc.p = p;
  const auto ic = invariant_coinvariant(f);
  if (ic.invariant.rank() > 0) pc.invariant_signature = signature(ic.invariant.induced());
  pc.invariant_condition = pc.invariant_signature.plus == 1;

  const RealSubfield rs = real_subfield(p);
  const std::size_t deg = rs.psi.size() - 1;
  const RatMatrix m = to_rational(f.matrix);
  const IntPoly phi = cyclotomic_polynomial(p);
  const RatMatrix kernel = rational_kernel(to_rational(poly_eval(phi, f.matrix)));
  const std::size_t dim = kernel.cols();
  const RatMatrix& gram = f.lattice->gram();
  if (dim == 0) {
    pc.eigen_signature.assign(deg, Signature{});
    return pc;
  }
  const RatMatrix t = m + inverse(m);
  const RatMatrix kt = kernel.transpose();
  const int sigma_b = [&] {
    Signature s = signature(kt * gram * kernel);
    return s.plus - s.minus;
  }();
  const int dim_j = static_cast<int>(dim / deg);
  for (std::size_t j = 0; j < deg; ++j) {
    Signature s = signature(kt * gram * poly_eval(rs.indicator[j], t) * kernel);
    const int sj = (s.plus - s.minus + sigma_b) / 2;
    Signature e;
    e.plus = (dim_j + sj) / 2;
    e.minus = dim_j - e.plus;
    pc.eigen_signature.push_back(e);
  }
  pc.holds = pc.invariant_condition && pc.eigen_signature.front().plus == 2;
  return pc;
}

}  // namespace nklat
