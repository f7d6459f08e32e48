#include "nklat/discform.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

#include "nklat/normal_form.hpp"

namespace nklat {

namespace {

Rat mod_rat(const Rat& x, const Int& m) {
  // x - m * floor(x / m), in [0, m)
  Rat t = x / Rat(m);
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return x - Rat(f * m);
}

}  // namespace

TorsionQuadModule::TorsionQuadModule(std::vector<Int> orders, RatMatrix gen_products)
    : orders_(std::move(orders)), products_(std::move(gen_products)) {
  if (products_.rows() != orders_.size() || products_.cols() != orders_.size())
    throw InputError("generator product matrix does not match the number of generators");
  if (!products_.is_symmetric()) throw InputError("generator products must be symmetric");
  for (const auto& d : orders_)
    if (d < 2) throw InputError("generator orders must be at least 2");
  if (is_2_elementary() && ngens() <= 32) {
    q2_gen_.resize(ngens());
    b2_rows_.assign(ngens(), 0);
    for (std::size_t i = 0; i < ngens(); ++i) {
      Rat t = mod_rat(2 * products_(i, i), 4);
      if (t.get_den() != 1) throw DomainError("quadratic values are not in (1/2)Z/2Z");
      q2_gen_[i] = static_cast<int>(t.get_num().get_si());
      for (std::size_t j = 0; j < ngens(); ++j) {
        Rat b = mod_rat(2 * products_(i, j), 2);
        if (b.get_den() != 1) throw DomainError("bilinear values are not in (1/2)Z/Z");
        if (b == 1) b2_rows_[i] |= 1u << j;
      }
    }
  }
}

TorsionQuadModule TorsionQuadModule::discriminant_form(const Lattice& l) {
  if (!l.integral() || !l.even()) throw DomainError("discriminant form needs an even lattice");
  const IntMatrix g = l.integer_gram();
  SmithForm s = smith_normal_form(g);
  const std::size_t n = l.rank();
  std::vector<Int> orders;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (s.D(i, i) > 1) {
      kept.push_back(i);
      orders.push_back(s.D(i, i));
    }
  const RatMatrix v = to_rational(s.V);
  RatMatrix gens(n, kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k)
    for (std::size_t r = 0; r < n; ++r) gens(r, k) = v(r, kept[k]) / Rat(orders[k]);
  RatMatrix prod = gens.transpose() * l.gram() * gens;
  TorsionQuadModule t(orders, prod);
  t.source_ = std::make_shared<const Lattice>(l);
  t.gens_ = gens;
  t.to_gens_ = inverse(v);
  t.kept_ = kept;
  return t;
}

Int TorsionQuadModule::size() const {
  Int n = 1;
  for (const auto& d : orders_) n *= d;
  return n;
}

bool TorsionQuadModule::is_2_elementary() const {
  return std::all_of(orders_.begin(), orders_.end(), [](const Int& d) { return d == 2; });
}

TorsionQuadModule::Element TorsionQuadModule::reduce(Element x) const {
  if (x.size() != ngens()) throw InputError("element length does not match module");
  for (std::size_t i = 0; i < ngens(); ++i) mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), orders_[i].get_mpz_t());
  return x;
}

TorsionQuadModule::Element TorsionQuadModule::add(const Element& x, const Element& y) const {
  Element z = x;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += y.at(i);
  return reduce(z);
}

TorsionQuadModule::Element TorsionQuadModule::scale(const Int& k, const Element& x) const {
  Element z = x;
  for (auto& c : z) c *= k;
  return reduce(z);
}

Rat TorsionQuadModule::product(const Element& x, const Element& y) const {
  if (x.size() != ngens() || y.size() != ngens()) throw InputError("element length does not match module");
  Rat s = 0;
  for (std::size_t i = 0; i < ngens(); ++i)
    for (std::size_t j = 0; j < ngens(); ++j) s += Rat(x[i] * y[j]) * products_(i, j);
  return mod_rat(s, 1);
}

Rat TorsionQuadModule::q(const Element& x) const {
  if (x.size() != ngens()) throw InputError("element length does not match module");
  Rat s = 0;
  for (std::size_t i = 0; i < ngens(); ++i)
    for (std::size_t j = 0; j < ngens(); ++j) s += Rat(x[i] * x[j]) * products_(i, j);
  return mod_rat(s, 2);
}

Rat TorsionQuadModule::b(const Element& x, const Element& y) const { return mod_rat(2 * product(x, y), 2); }

std::vector<TorsionQuadModule::Element> TorsionQuadModule::elements() const {
  std::vector<Element> out;
  Element cur = zero();
  for (;;) {
    out.push_back(cur);
    std::size_t i = ngens();
    while (i > 0) {
      --i;
      if (++cur[i] < orders_[i]) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (ngens() == 0) return out;
  }
}

const Lattice& TorsionQuadModule::source() const {
  if (!source_) throw DomainError("module has no source lattice");
  return *source_;
}

RatVector TorsionQuadModule::generator_vector(std::size_t i) const {
  source();
  return gens_.column(i);
}

RatVector TorsionQuadModule::lift(const Element& x) const {
  const Lattice& l = source();
  RatVector y(l.rank(), Rat(0));
  for (std::size_t k = 0; k < ngens(); ++k)
    for (std::size_t r = 0; r < l.rank(); ++r) y[r] += Rat(x.at(k)) * gens_(r, k);
  return y;
}

TorsionQuadModule::Element TorsionQuadModule::from_dual(const RatVector& y) const {
  const Lattice& l = source();
  if (y.size() != l.rank()) throw InputError("vector length does not match lattice rank");
  RatVector gy = l.gram() * y;
  for (const auto& c : gy)
    if (c.get_den() != 1) throw InputError("vector is not in the dual lattice");
  RatVector w = to_gens_ * y;
  Element a(ngens());
  for (std::size_t k = 0; k < ngens(); ++k) {
    Rat c = w[kept_[k]] * Rat(orders_[k]);
    if (c.get_den() != 1) throw DomainError("inconsistent Smith form coordinates");
    a[k] = c.get_num();
  }
  return reduce(a);
}

void TorsionQuadModule::require_2_elementary() const {
  if (!is_2_elementary() || ngens() > 32) throw DomainError("operation needs a 2-elementary module of rank <= 32");
}

std::uint32_t TorsionQuadModule::to_mask(const Element& x) const {
  require_2_elementary();
  Element r = reduce(x);
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < ngens(); ++i)
    if (r[i] == 1) m |= 1u << i;
  return m;
}

TorsionQuadModule::Element TorsionQuadModule::from_mask(std::uint32_t m) const {
  require_2_elementary();
  Element x = zero();
  for (std::size_t i = 0; i < ngens(); ++i) x[i] = (m >> i) & 1u;
  return x;
}

int TorsionQuadModule::q2(std::uint32_t m) const {
  require_2_elementary();
  int s = 0;
  for (std::size_t i = 0; i < ngens(); ++i) {
    if (!(m >> i & 1u)) continue;
    s += q2_gen_[i];
    const std::uint32_t above = i + 1 < 32 ? (~0u << (i + 1)) : 0u;
    s += 2 * std::popcount(b2_rows_[i] & m & above);
  }
  return s & 3;
}

int TorsionQuadModule::b2(std::uint32_t x, std::uint32_t y) const {
  require_2_elementary();
  int s = 0;
  for (std::size_t i = 0; i < ngens(); ++i)
    if (x >> i & 1u) s += std::popcount(b2_rows_[i] & y);
  return s & 1;
}

std::string TorsionQuadModule::dump() const {
  std::ostringstream os;
  os << "order " << size() << "\n";
  os << "invariants [";
  for (std::size_t i = 0; i < ngens(); ++i) os << (i ? "," : "") << orders_[i];
  os << "]\n";
  for (std::size_t i = 0; i < ngens(); ++i) {
    os << "g" << i << ": q = " << to_string(mod_rat(products_(i, i), 2)) << ", b = [";
    for (std::size_t j = 0; j < ngens(); ++j)
      os << (j ? "," : "") << to_string(mod_rat(2 * products_(i, j), 2));
    os << "]\n";
  }
  return os.str();
}

TorsionQuadModule::Element FqmIsometry::apply(const TorsionQuadModule::Element& x) const {
  TorsionQuadModule::Element y = module->zero();
  for (std::size_t j = 0; j < module->ngens(); ++j)
    for (std::size_t i = 0; i < module->ngens(); ++i) y[i] += x.at(j) * images[j][i];
  return module->reduce(y);
}

bool FqmIsometry::preserves_q() const {
  const auto& t = *module;
  for (std::size_t i = 0; i < t.ngens(); ++i) {
    TorsionQuadModule::Element gi = t.zero();
    gi[i] = 1;
    if (t.q(images[i]) != t.q(gi)) return false;
    for (std::size_t j = i + 1; j < t.ngens(); ++j) {
      TorsionQuadModule::Element gj = t.zero();
      gj[j] = 1;
      if (t.product(images[i], images[j]) != t.product(gi, gj)) return false;
    }
  }
  return true;
}

bool FqmIsometry::is_identity() const {
  for (std::size_t j = 0; j < module->ngens(); ++j)
    for (std::size_t i = 0; i < module->ngens(); ++i)
      if (images[j][i] != (i == j ? 1 : 0)) return false;
  return true;
}

F2Map FqmIsometry::to_f2() const {
  F2Map m;
  m.dim = static_cast<int>(module->ngens());
  for (std::size_t j = 0; j < module->ngens(); ++j) m.col[j] = module->to_mask(images[j]);
  return m;
}

FqmIsometry induced_disc_isometry(const std::shared_ptr<const TorsionQuadModule>& d, const IntMatrix& m) {
  const Lattice& l = d->source();
  if (m.rows() != l.rank() || m.cols() != l.rank()) throw InputError("matrix size does not match lattice rank");
  const RatMatrix mr = to_rational(m);
  if (!(mr.transpose() * l.gram() * mr == l.gram())) throw InputError("matrix is not an isometry of the lattice");
  FqmIsometry f{d, {}};
  for (std::size_t k = 0; k < d->ngens(); ++k) f.images.push_back(d->from_dual(mr * d->generator_vector(k)));
  return f;
}

std::vector<std::uint32_t> f2_span_basis(std::vector<std::uint32_t> vectors) {
  std::vector<std::uint32_t> basis;
  for (std::uint32_t v : vectors) {
    for (std::uint32_t b : basis)
      if (v & std::bit_floor(b)) v ^= b;
    if (!v) continue;
    for (auto& b : basis)
      if (b & std::bit_floor(v)) b ^= v;
    basis.push_back(v);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

KernelRadical kernel_and_radical(const TorsionQuadModule& t) {
  if (!t.is_2_elementary()) throw DomainError("kernel and radical need a 2-elementary module");
  if (t.ngens() > 24) throw DomainError("module too large for kernel and radical");
  const std::uint32_t n = 1u << t.ngens();
  KernelRadical kr;
  std::vector<std::uint32_t> kernel;
  for (std::uint32_t x = 0; x < n; ++x)
    if ((t.q2(x) & 1) == 0) kernel.push_back(x);
  kr.kernel_basis = f2_span_basis(kernel);
  std::vector<std::uint32_t> radical;
  for (std::uint32_t x : kernel) {
    bool perp = std::all_of(kr.kernel_basis.begin(), kr.kernel_basis.end(),
                            [&](std::uint32_t k) { return t.b2(x, k) == 0; });
    if (perp) radical.push_back(x);
  }
  kr.radical_basis = f2_span_basis(radical);
  for (std::uint32_t x : radical)
    if (t.q2(x) == 2) {
      kr.r = x;
      break;
    }
  kr.expected_shape = kr.radical_basis.size() == 1 && kr.r && *kr.r == kr.radical_basis.front();
  return kr;
}

Transvection transvection(const TorsionQuadModule& t, std::uint32_t u) {
  if (u == 0) throw InputError("transvection in the zero element");
  Transvection tv;
  tv.map = F2Map::identity(static_cast<int>(t.ngens()));
  for (std::size_t j = 0; j < t.ngens(); ++j)
    if (t.b2(u, 1u << j)) tv.map.col[j] ^= u;
  tv.reflection = t.q2(u) == 2;
  return tv;
}

std::vector<std::uint32_t> reflection_vectors(const TorsionQuadModule& t) {
  if (!t.is_2_elementary() || t.ngens() > 24) throw DomainError("reflection vectors need a small 2-elementary module");
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 1; x < (1u << t.ngens()); ++x)
    if (t.q2(x) == 2) out.push_back(x);
  return out;
}

FiniteIsometryGroup full_reflection_group(const TorsionQuadModule& t, FiniteIsometryGroup::Mode mode,
                                          std::size_t max_elements) {
  if (!t.is_2_elementary()) throw DomainError("reflection group needs a 2-elementary module");
  if (t.size() > Int(std::to_string(max_elements))) throw DomainError("module exceeds the configured size cap");
  std::vector<F2Map> gens;
  for (std::uint32_t u : reflection_vectors(t)) gens.push_back(transvection(t, u).map);
  return FiniteIsometryGroup(static_cast<int>(t.ngens()), gens, mode);
}

namespace {

// Basis of K starting with a basis of R, and the coordinate map K -> F_2^dim K.
struct KernelCoordinates {
  std::vector<std::uint32_t> basis;
  std::unordered_map<std::uint32_t, std::uint32_t> coords;
};

KernelCoordinates kernel_coordinates(const KernelRadical& kr) {
  KernelCoordinates kc;
  kc.basis = kr.radical_basis;
  for (std::uint32_t k : kr.kernel_basis) {
    std::vector<std::uint32_t> trial = kc.basis;
    trial.push_back(k);
    if (f2_span_basis(trial).size() == trial.size()) kc.basis.push_back(k);
  }
  const std::size_t d = kc.basis.size();
  for (std::uint32_t c = 0; c < (1u << d); ++c) {
    std::uint32_t x = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (c >> i & 1u) x ^= kc.basis[i];
    kc.coords[x] = c;
  }
  return kc;
}

}  // namespace

int kernel_quotient_dim(const KernelRadical& kr) {
  return static_cast<int>(kr.kernel_basis.size() - kr.radical_basis.size());
}

F2Map restrict_to_kernel_quotient(const TorsionQuadModule& t, const KernelRadical& kr, const F2Map& g) {
  if (g.dim != static_cast<int>(t.ngens())) throw InputError("map dimension does not match module");
  const KernelCoordinates kc = kernel_coordinates(kr);
  const std::size_t dr = kr.radical_basis.size();
  F2Map out;
  out.dim = kernel_quotient_dim(kr);
  for (int j = 0; j < out.dim; ++j) {
    auto it = kc.coords.find(g(kc.basis[dr + static_cast<std::size_t>(j)]));
    if (it == kc.coords.end()) throw DomainError("map does not preserve the kernel K");
    out.col[j] = it->second >> dr;
  }
  return out;
}

}  // namespace nklat
