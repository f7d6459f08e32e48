#include "doctest.h"
#include "nklat/lattice_expr.hpp"
#include "support.hpp"

using namespace nklat;

namespace {

const StandardLambdaModel& M() { return standard_lambda(); }

LatticeIsometry iso(const IntMatrix& m) { return make_isometry(M().lattice(), m); }

LatticeIsometry exceptional() { return iso(test::diag_matrix(16, {{15, -1}})); }
LatticeIsometry minus_a1sq() { return iso(test::diag_matrix(16, {{14, -1}, {15, -1}})); }
LatticeIsometry minus_id() { return iso(-IntMatrix::identity(16)); }
LatticeIsometry refl(const LatticeVector& v) { return reflection(M().lattice(), v.coords); }

// Cyclic permutation of the three U(2) blocks.
LatticeIsometry u2_cycle() {
  IntMatrix p(16, 16);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 2; ++i) p(2 * ((k + 1) % 3) + i, 2 * k + i) = 1;
  for (std::size_t i = 6; i < 16; ++i) p(i, i) = 1;
  return iso(p);
}

LatticeIsometry coxeter(std::initializer_list<int> nodes) {
  LatticeIsometry f = identity_isometry(M().lattice());
  for (int k : nodes) f = compose(f, refl(M().alpha(k)));
  return f;
}

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(iso(IntMatrix::identity(16)));
  CHECK_NOTHROW(exceptional());
  IntMatrix bad = IntMatrix::identity(16);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(iso(bad), InputError);
  CHECK_THROWS_AS(iso(IntMatrix::identity(3)), InputError);
  CHECK_THROWS_AS(reflection(M().lattice(), M().L(0).coords), DomainError);  // isotropic
  CHECK_THROWS_AS(reflection(M().lattice(), M().e2().coords), DomainError);  // square -4, div 1
}

TEST_CASE("orders") {
  CHECK(order_of(exceptional()) == 2);
  CHECK(order_of(identity_isometry(M().lattice())) == 1);
  const LatticeIsometry r13 = compose(refl(M().alpha(1)), refl(M().alpha(3)));
  CHECK(order_of(r13) == 3);
  CHECK(matrix_power(r13.matrix, 3).is_identity());
  CHECK(order_of(coxeter({1, 3, 4, 5})) == 5);
  CHECK(order_of(coxeter({1, 3, 4, 5, 6, 7})) == 7);
  CHECK(order_of(coxeter({1, 2, 3, 4, 5, 6, 7, 8})) == 30);
  CHECK(order_of(u2_cycle()) == 3);

  const LatticePtr ua1 = std::make_shared<const Lattice>(build_named("U+A1"));
  const LatticeIsometry par = compose(reflection(ua1, {0, 0, 1}), reflection(ua1, {1, 0, 1}));
  CHECK_THROWS_AS(order_of(par), DomainError);
  CHECK_THROWS_AS(order_of(coxeter({1, 2, 3, 4, 5, 6, 7, 8}), 10), DomainError);
}

TEST_CASE("invariant and coinvariant lattices") {
  const auto e = invariant_coinvariant(exceptional());
  CHECK(e.invariant.rank() == 15);
  CHECK(render(genus_symbol(e.invariant.induced())) == "II_(3,12)2^7_7");
  CHECK(e.coinvariant.induced().gram() == RatMatrix{{-2}});

  const auto id = invariant_coinvariant(identity_isometry(M().lattice()));
  CHECK(id.invariant.rank() == 16);
  CHECK(id.coinvariant.rank() == 0);

  const auto a = invariant_coinvariant(minus_a1sq());
  CHECK(a.coinvariant.rank() == 2);
  CHECK(a.coinvariant.induced().determinant() == 4);
  CHECK(is_negative_definite(a.coinvariant.induced()));
  CHECK(a.coinvariant.contains(M().halfsum().coords));
  CHECK(a.coinvariant.contains(M().halfdiff().coords));

  for (int t = 0; t < 10; ++t) {
    const LatticeIsometry f = test::random_reflection_word(M(), 3);
    const auto ic = invariant_coinvariant(f);
    CHECK(ic.invariant.rank() + ic.coinvariant.rank() == 16);
    for (std::size_t i = 0; i < ic.invariant.rank(); ++i) {
      const IntVector v = ic.invariant.basis().row_vector(i);
      CHECK(apply(f, v) == v);
      for (std::size_t j = 0; j < ic.coinvariant.rank(); ++j)
        CHECK(bilinear(M().lattice()->gram(), v, ic.coinvariant.basis().row_vector(j)) == 0);
    }
  }
}

TEST_CASE("spinor norm") {
  CHECK(in_O_plus(refl(M().e1())));
  CHECK_FALSE(in_O_plus(minus_id()));
  CHECK(in_O_plus(identity_isometry(M().lattice())));
  CHECK_FALSE(in_O_plus(refl(M().L(1))));  // positive square
  CHECK(in_O_plus(refl(M().delta_prime())));
  CHECK(in_O_plus(exceptional()));
  CHECK(in_O_plus(u2_cycle()));
  CHECK(spinor_sign_wall(minus_id()) == -1);
  CHECK(spinor_sign_wall(refl(M().e1())) == 1);
}

TEST_CASE("spinor norm is a homomorphism and agrees with the Wall form") {
  const std::vector<LatticeVector> gens{M().e1(),      M().alpha(4),         M().delta_prime(), M().L(1),
                                        M().L(-1),     M().halfsum(),        M().sigma_prime(), M().basis(2) + M().basis(3),
                                        M().alpha(8),  M().evaluate("L(1) + e2 - halfsum")};
  for (int t = 0; t < 25; ++t) {
    LatticeIsometry f = identity_isometry(M().lattice());
    int expected = 1;
    for (long k = test::uniform(1, 6); k > 0; --k) {
      const auto& v = gens[static_cast<std::size_t>(test::uniform(0, static_cast<long>(gens.size()) - 1))];
      f = compose(refl(v), f);
      if (square(v) > 0) expected = -expected;
    }
    CHECK(in_O_plus(f) == (expected > 0));
    CHECK(spinor_sign_wall(f) == expected);
    const LatticeIsometry g = test::random_reflection_word(M(), 3);
    CHECK(in_O_plus(compose(f, g)) == (in_O_plus(f) == in_O_plus(g)));
  }
}

TEST_CASE("symplectic status") {
  const auto e = symplectic_status(M(), exceptional());
  CHECK(e.symplectic);
  CHECK(e.regular);
  CHECK(e.witnesses.empty());

  const auto r = symplectic_status(M(), refl(M().e1()));
  CHECK_FALSE(r.symplectic);
  CHECK_FALSE(r.regular);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].wclass == WallClass::PEX2);

  const auto a = symplectic_status(M(), minus_a1sq());
  CHECK_FALSE(a.symplectic);
  bool pex4 = false;
  for (const auto& w : a.witnesses) pex4 = pex4 || (w.wclass == WallClass::PEX4 && w.square == -4 && w.divisibility == 2);
  CHECK(pex4);

  const auto m = symplectic_status(M(), minus_id());
  CHECK_FALSE(m.in_O_plus);
  CHECK_FALSE(m.coinv_neg_def);
  CHECK_FALSE(m.symplectic);
}

TEST_CASE("discriminant order and exceptional involutions") {
  CHECK(disc_order(exceptional()) == 1);
  CHECK(disc_order(identity_isometry(M().lattice())) == 1);
  CHECK(disc_order(minus_a1sq()) == 1);  // -1 = +1 on (Z/2)^2
  CHECK(disc_order(refl(M().delta_prime())) == 2);
  CHECK(disc_order(refl(M().e1())) == 1);
  CHECK(disc_order(u2_cycle()) == 3);
  for (int t = 0; t < 10; ++t) {
    const LatticeIsometry f = test::random_reflection_word(M(), 4);
    const unsigned long o = order_of(f);
    CHECK(o % disc_order(f) == 0);
  }
  CHECK(is_exceptional(exceptional()));
  CHECK(is_exceptional(refl(M().e1())));  // abstract predicate only
  CHECK_FALSE(is_exceptional(minus_a1sq()));
  CHECK_FALSE(is_exceptional(identity_isometry(M().lattice())));
}

TEST_CASE("group operations") {
  const LatticeIsometry f = test::random_reflection_word(M(), 5);
  CHECK(compose(f, inverse(f)).matrix.is_identity());
  CHECK(compose(exceptional(), exceptional()).matrix.is_identity());
  const LatticeIsometry g = test::random_reflection_word(M(), 4);
  for (const auto& v : {M().e1(), M().delta_prime(), M().L(1)}) {
    const LatticeIsometry lhs = conjugate(refl(v), g);
    const LatticeIsometry rhs = reflection(M().lattice(), apply(g, v.coords));
    CHECK(lhs.matrix == rhs.matrix);
  }
  const LatticePtr other = std::make_shared<const Lattice>(build_named("A1"));
  CHECK_THROWS_AS(compose(f, identity_isometry(other)), InputError);
}

TEST_CASE("non-symplectic prime order check") {
  const PrimeCheck m = nonsymplectic_prime_check(minus_id(), 2);
  CHECK_FALSE(m.invariant_condition);
  CHECK_FALSE(m.holds);

  const PrimeCheck r = nonsymplectic_prime_check(refl(M().e1()), 2);
  CHECK(r.invariant_signature == Signature{3, 12});
  CHECK_FALSE(r.holds);

  IntMatrix d = -IntMatrix::identity(16);
  d(0, 0) = d(1, 1) = 1;
  const PrimeCheck u = nonsymplectic_prime_check(iso(d), 2);
  CHECK(u.invariant_condition);
  REQUIRE(u.eigen_signature.size() == 1);
  CHECK(u.eigen_signature[0] == Signature{2, 12});
  CHECK(u.holds);

  const PrimeCheck c = nonsymplectic_prime_check(u2_cycle(), 3);
  CHECK(c.invariant_signature == Signature{1, 11});
  REQUIRE(c.eigen_signature.size() == 1);
  CHECK(c.eigen_signature[0] == Signature{2, 2});
  CHECK(c.holds);

  const PrimeCheck five = nonsymplectic_prime_check(coxeter({1, 3, 4, 5}), 5);
  REQUIRE(five.eigen_signature.size() == 2);
  for (const auto& s : five.eigen_signature) CHECK(s == Signature{0, 2});
  CHECK_FALSE(five.holds);

  const PrimeCheck seven = nonsymplectic_prime_check(coxeter({1, 3, 4, 5, 6, 7}), 7);
  REQUIRE(seven.eigen_signature.size() == 3);
  for (const auto& s : seven.eigen_signature) CHECK(s == Signature{0, 2});

  CHECK_THROWS_AS(nonsymplectic_prime_check(exceptional(), 3), InputError);
  CHECK_THROWS_AS(nonsymplectic_prime_check(exceptional(), 11), InputError);
}
