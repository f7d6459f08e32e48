#include "doctest.h"
#include "nklat/genus.hpp"
#include "nklat/lattice_expr.hpp"
#include "support.hpp"

using namespace nklat;

namespace {

std::string g(const char* expr) { return render(genus_symbol(build_named(expr))); }

// Determinant of the symbol vs the lattice, and signature parity checks.
void check_consistent(const Lattice& l) {
  const GenusSymbol s = genus_symbol(l);
  CHECK(symbol_determinant(s) == abs(l.determinant().get_num()));
  CHECK(oddity_formula_holds(s));
  CHECK(s.signature == signature(l));
  for (const auto& loc : s.locals) {
    Int det = 1;
    int rank = 0;
    for (const auto& b : loc.blocks) {
      rank += b.rank;
      for (int k = 0; k < b.scale * b.rank; ++k) det *= loc.prime;
      if (!b.odd) CHECK(b.oddity == 0);
    }
    CHECK(rank == static_cast<int>(l.rank()));
    CHECK(valuation(Rat(det), loc.prime) == valuation(l.determinant(), loc.prime));
  }
}

}  // namespace

TEST_CASE("genus symbols of the basic lattices") {
  CHECK(g("Lambda") == "II_(3,13)2^8_6");
  CHECK(g("A1") == "II_(0,1)2^1_7");
  CHECK(g("D4(2)") == "II_(0,4)2^{-2}4^{-2}");
  CHECK(g("D10(2)") == "II_(0,10)2^84^2_6");
  CHECK(g("E8") == "II_(0,8)");
  CHECK(g("U") == "II_(1,1)");
  CHECK(g("A2") == "II_(0,2)3^1");
  CHECK(g("U(2)^3+E8+A1") == "II_(3,12)2^7_7");
}

TEST_CASE("p-adic Jordan decompositions") {
  const auto lam = padic_jordan(*standard_lambda().lattice(), 2);
  REQUIRE(lam.size() == 2);
  CHECK(lam[0].scale == 0);
  CHECK(lam[0].rank == 8);
  CHECK_FALSE(lam[0].odd);
  CHECK(lam[1].scale == 1);
  CHECK(lam[1].rank == 8);

  const auto e8 = padic_jordan(build_named("E8"), 2);
  REQUIRE(e8.size() == 1);
  CHECK(e8[0] == JordanBlock{0, 8, 1, false, 0});

  const auto a1 = padic_jordan(build_named("A1"), 2);
  REQUIRE(a1.size() == 1);
  CHECK(a1[0].scale == 1);
  CHECK(a1[0].odd);
  CHECK(a1[0].oddity == 7);

  const auto k7 = padic_jordan(build_named("K7"), 7);
  REQUIRE(k7.size() == 2);
  CHECK(k7[1].scale == 1);
  CHECK_THROWS_AS(padic_jordan(build_named("A1"), 4), InputError);
}

TEST_CASE("genus invariants on many lattices") {
  for (const char* e : {"Lambda", "A1", "D4(2)", "D6(2)+A1", "D10(2)", "U(2)^2+V(4)", "K7+H7(2)", "A1(-5)^3",
                        "V(10)+A1(-1)+A1(-5)", "U(4)+A1(-2)+A1(-4)+A1^2", "E7+A1(3)", "A2(-2)+A1(2)+A1(-2)",
                        "dual_rescale(D8,2)", "U+U(3)+U(6)+A1", "A4(3)"})
    check_consistent(build_named(e));
  // random even lattices B^T (2 I) B twisted by a root lattice
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(test::uniform(1, 5));
    IntMatrix b = test::random_int_matrix(n, n, -3, 3);
    if (determinant(b) == 0) continue;
    IntMatrix gm = b.transpose() * to_integer(root_lattice_A(static_cast<int>(n)).gram()) * b;
    check_consistent(Lattice::from_integers(gm));
  }
}

TEST_CASE("canonical form: idempotent and invariant under change of basis") {
  for (const char* e : {"U(2)^3+A1^2+A1(2)^2", "U(4)+A1(-2)+A1(-4)+A1", "U(2)+U(4)+A1(4)+A1(-2)",
                        "U(8)+A1(-1)+A1(-2)", "V(12)+A1(-1)+A1(-3)"}) {
    const Lattice l = build_named(e);
    const GenusSymbol s = genus_symbol(l);
    CHECK(canonical(s) == s);
    for (int t = 0; t < 5; ++t) {
      IntMatrix u = IntMatrix::identity(l.rank());
      for (int k = 0; k < 12; ++k) {
        const std::size_t i = static_cast<std::size_t>(test::uniform(0, static_cast<long>(l.rank()) - 1));
        const std::size_t j = static_cast<std::size_t>(test::uniform(0, static_cast<long>(l.rank()) - 1));
        if (i != j) u.add_col(i, j, Int(test::uniform(-2, 2)));
      }
      const IntMatrix gm = u.transpose() * l.integer_gram() * u;
      CHECK(render(genus_symbol(Lattice::from_integers(gm))) == render(s));
    }
  }
}

TEST_CASE("genus of different representatives agree") {
  CHECK(genus_equal(genus_symbol(build_named("U(2)^3+E8+A1")), genus_symbol(build_named("U^3+dual_rescale(D8,2)+A1"))));
  CHECK(genus_equal(genus_symbol(build_named("U+U")), genus_symbol(build_named("U+U"))));
  CHECK_FALSE(genus_equal(genus_symbol(build_named("U(2)")), genus_symbol(build_named("V(2)"))));
  CHECK(genus_equal(genus_symbol(build_named("E8+U")), genus_symbol(build_named("U+E8"))));
}

TEST_CASE("parsing genus symbols") {
  const GenusSymbol s = parse_genus("II_(3,1)2^2_67^2");
  CHECK(s.signature == Signature{3, 1});
  const LocalSymbol* two = s.local(Int(2));
  REQUIRE(two);
  bool found = false;
  for (const auto& b : two->blocks)
    if (b.scale == 1) {
      CHECK(b.rank == 2);
      CHECK(b.oddity == 6);
      CHECK(b.odd);
      found = true;
    }
  CHECK(found);
  const LocalSymbol* seven = s.local(Int(7));
  REQUIRE(seven);
  CHECK(seven->blocks.back() == JordanBlock{1, 2, 1, false, 0});

  CHECK(parse_genus("II_{(0, 12)}2^{-4}5^{-3}") == parse_genus("II_(0,12) 2^{-4} 5^{-3}"));
  CHECK(parse_genus("II_{(3,1)}2_2^28^2_2") == parse_genus("II_(3,1)2^2_28^2_2"));
  CHECK(parse_genus("\\II_{(3,13)}2^8_6") == genus_symbol(*standard_lambda().lattice()));
  CHECK(parse_genus("II_(0,10)2^{10}_2").local(Int(2))->blocks.back().rank == 10);

  CHECK_THROWS_AS(parse_genus("I_(1,1)"), InputError);
  CHECK_THROWS_AS(parse_genus("II_(3,1)6^2"), InputError);
  CHECK_THROWS_AS(parse_genus("II_(0,1)2^3_1"), InputError);
  CHECK_THROWS_AS(parse_genus("II_(3,1"), InputError);
}

TEST_CASE("render and parse round trip on canonical symbols") {
  for (const char* e : {"Lambda", "A1", "D10(2)", "K7+A1(-7)", "A1(-5)^3", "U(4)+A1(-2)+A1(-4)", "V(-6)+A1(-2)^2",
                        "U+A1(-4)^2", "A2(-2)", "E6"}) {
    const GenusSymbol s = genus_symbol(build_named(e));
    CHECK(canonical(parse_genus(render(s))) == s);
    CHECK(render(parse_genus(render(s))) == render(s));
  }
}

TEST_CASE("oddity formula rejects inconsistent symbols") {
  CHECK(oddity_formula_holds(parse_genus("II_(3,1)8^2_2")));
  CHECK_FALSE(oddity_formula_holds(parse_genus("II_(3,1)2_2^28^2_2")));
  CHECK(oddity_formula_holds(parse_genus("II_(0,12)2^{-6}_28^{-2}_2")));
  CHECK_FALSE(oddity_formula_holds(parse_genus("II_(0,12)2^{-6}8^{-2}_2")));
}
