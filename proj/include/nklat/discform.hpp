#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nklat/f2group.hpp"
#include "nklat/lattice.hpp"

namespace nklat {

// Finite abelian group prod Z/d_i with a quadratic form into Q/2Z.
//
// Elements are residue vectors a with 0 <= a_i < d_i; the i-th generator is
// a dual vector g_i of the source lattice when there is one. Values of q are
// reduced into [0, 2); the polar form follows b(x,y) = q(x+y) - q(x) - q(y),
// which equals 2 x.y mod 2.
class TorsionQuadModule {
 public:
  using Element = std::vector<Int>;

  // gen_products(i,j) = g_i . g_j (rational), the diagonal gives q(g_i).
  TorsionQuadModule(std::vector<Int> orders, RatMatrix gen_products);

  // D_L = L^dual / L for an even lattice; DomainError for odd lattices.
  static TorsionQuadModule discriminant_form(const Lattice& l);

  std::size_t ngens() const { return orders_.size(); }
  const std::vector<Int>& orders() const { return orders_; }
  const RatMatrix& gen_products() const { return products_; }
  Int size() const;
  bool is_2_elementary() const;

  Element zero() const { return Element(ngens(), Int(0)); }
  Element add(const Element& x, const Element& y) const;
  Element scale(const Int& k, const Element& x) const;
  Element reduce(Element x) const;

  Rat q(const Element& x) const;                       // in [0, 2)
  Rat b(const Element& x, const Element& y) const;     // in [0, 2)
  Rat product(const Element& x, const Element& y) const;  // x.y in [0, 1)

  // All elements in lexicographic order of residue tuples.
  std::vector<Element> elements() const;

  // Source-lattice data (present for discriminant_form results).
  bool has_source() const { return source_ != nullptr; }
  const Lattice& source() const;
  // Dual vector (source coordinates) representing g_i.
  RatVector generator_vector(std::size_t i) const;
  RatVector lift(const Element& x) const;
  // Class of a dual vector y (source coordinates); InputError if y is not dual.
  Element from_dual(const RatVector& y) const;

  // F_2 view of a 2-elementary module: elements are bitmasks over the
  // generators and q is stored as 2q mod 4.
  std::uint32_t to_mask(const Element& x) const;
  Element from_mask(std::uint32_t m) const;
  int q2(std::uint32_t m) const;
  int b2(std::uint32_t x, std::uint32_t y) const;  // b in {0, 1}

  std::string dump() const;

 private:
  void require_2_elementary() const;

  std::vector<Int> orders_;
  RatMatrix products_;
  // F_2 tables (2-elementary only)
  std::vector<int> q2_gen_;
  std::vector<std::uint32_t> b2_rows_;
  // source lattice data
  std::shared_ptr<const Lattice> source_;
  RatMatrix gens_;      // columns are the generator dual vectors
  RatMatrix to_gens_;   // V^{-1} from the Smith form
  std::vector<std::size_t> kept_;  // SNF positions with d_i > 1
};

// Isometry of a torsion quadratic module; column j is the image of generator j.
struct FqmIsometry {
  std::shared_ptr<const TorsionQuadModule> module;
  std::vector<TorsionQuadModule::Element> images;

  TorsionQuadModule::Element apply(const TorsionQuadModule::Element& x) const;
  bool preserves_q() const;  // exhaustive over the module
  bool is_identity() const;
  F2Map to_f2() const;       // 2-elementary modules only
};

// Action on D_L of an integer matrix f (column convention f(x) = M x) with
// M^T G M = G. InputError when M is not an isometry of the source lattice.
FqmIsometry induced_disc_isometry(const std::shared_ptr<const TorsionQuadModule>& d, const IntMatrix& m);

struct KernelRadical {
  std::vector<std::uint32_t> kernel_basis;   // K = {x : 2q(x) in 2Z}
  std::vector<std::uint32_t> radical_basis;  // R = K cap K^perp
  std::optional<std::uint32_t> r;            // element of R with q(r) = 1
  bool expected_shape = false;               // dim R == 1 and q(r) == 1
};
KernelRadical kernel_and_radical(const TorsionQuadModule& t);

// x -> x + b(u, x) u; `reflection` reports whether q(u) = 1, which is exactly
// when the map preserves q.
struct Transvection {
  F2Map map;
  bool reflection = false;
};
Transvection transvection(const TorsionQuadModule& t, std::uint32_t u);

// Gamma = {u : q(u) = 1}.
std::vector<std::uint32_t> reflection_vectors(const TorsionQuadModule& t);

FiniteIsometryGroup full_reflection_group(const TorsionQuadModule& t,
                                          FiniteIsometryGroup::Mode mode = FiniteIsometryGroup::Mode::Parallel,
                                          std::size_t max_elements = 1u << 10);

// Action of g on K/R in a fixed basis of K/R (requires the expected shape).
F2Map restrict_to_kernel_quotient(const TorsionQuadModule& t, const KernelRadical& kr, const F2Map& g);
int kernel_quotient_dim(const KernelRadical& kr);

// Span of masks; basis in reduced echelon form.
std::vector<std::uint32_t> f2_span_basis(std::vector<std::uint32_t> vectors);

}  // namespace nklat
