#include <algorithm>

#include "doctest.h"
#include "nklat/enumerate.hpp"
#include "nklat/lattice_expr.hpp"
#include "nklat/lattice_io.hpp"
#include "nklat/normal_form.hpp"
#include "support.hpp"

using namespace nklat;
using nklat::test::uniform;

TEST_CASE("root lattices and small building blocks") {
  CHECK(build_named("A1").gram() == RatMatrix{{-2}});
  for (int n = 1; n <= 8; ++n) CHECK(root_lattice_A(n).determinant() == (n % 2 ? -1 : 1) * (n + 1));
  for (int n = 4; n <= 10; ++n) CHECK(abs(root_lattice_D(n).determinant()) == 4);
  CHECK(root_lattice_E(8).determinant() == 1);
  CHECK(abs(root_lattice_E(7).determinant()) == 2);
  CHECK(abs(root_lattice_E(6).determinant()) == 3);
  CHECK(signature(root_lattice_E(8)) == Signature{0, 8});
  CHECK(signature(hyperbolic_plane()) == Signature{1, 1});
  CHECK(odd_plane_V().determinant() == -1);
  CHECK(lattice_K(7).determinant() == 7);
  CHECK(lattice_H(7).determinant() == -7);
  for (int n : {4, 8}) CHECK(build_named("D" + std::to_string(n)).even());
}

TEST_CASE("lattice expressions") {
  const Lattice l = build_named("direct_sum(U(2),U(2),U(2),E8,A1,A1)");
  CHECK(l.rank() == 16);
  CHECK(abs(l.determinant()) == 256);
  CHECK(build_named("U(2)^3+E8+A1^2") == l);
  CHECK(build_named("Lambda") == l);
  CHECK(build_named("U(2)^{⊕3} ⊕ E_8 ⊕ A_1^{⊕2}") == l);

  const Lattice d = build_named("dual_rescale(D8,2)");
  CHECK(d.rank() == 8);
  CHECK(d.even());
  CHECK(abs(d.determinant()) == 64);
  CHECK(build_named("dual(D8)(2)") == d);
  CHECK(build_named("V(2)").gram() == RatMatrix{{0, 2}, {2, 2}});
  CHECK(build_named("A1(-4)").gram() == RatMatrix{{8}});

  CHECK_THROWS_AS(build_named("U(2"), InputError);
  CHECK_THROWS_AS(build_named("Q7"), InputError);
  CHECK_THROWS_AS(build_named(""), InputError);
}

TEST_CASE("standard model of Lambda") {
  const auto& m = standard_lambda();
  CHECK(*m.lattice() == build_named("Lambda"));
  CHECK(signature(*m.lattice()) == Signature{3, 13});
  CHECK(m.lattice()->determinant() == -256);
  CHECK(inner(m.delta_prime(), m.delta_prime()) == -4);
  CHECK(inner(m.sigma_prime(), m.sigma_prime()) == -4);
  CHECK(inner(m.halfsum(), m.halfdiff()) == 0);
  CHECK(inner(m.e1(), m.e1()) == -2);
  CHECK(square(m.e2()) == -4);
  CHECK(inner(m.alpha(1), m.alpha(2)) == 0);
  CHECK(inner(m.alpha(1), m.alpha(3)) == 1);
  CHECK(inner(m.alpha(2), m.alpha(4)) == 1);
  for (long i : {-3L, -1L, 1L, 2L}) {
    CHECK(square(m.L(i)) == 4 * i);
    CHECK(divisibility(*m.lattice(), m.L(i).coords) == 2);
  }
  CHECK(divisibility(m.halfsum()) == 2);
  CHECK(divisibility(m.e1()) == 1);
  CHECK(divisibility(m.delta_prime()) == 2);
  const LatticeVector x = m.evaluate("2L(1) + 2e2 - delta'");
  CHECK(square(x) == -4);
  CHECK(divisibility(x) == 2);
  CHECK(m.evaluate("L_{-1}") == m.L(-1));
  CHECK(m.evaluate("3*alpha8 - b14") == 3 * m.alpha(8) - m.basis(14));
  CHECK(m.evaluate("δ′ − Σ′") == 2 * m.halfdiff());
  CHECK_THROWS_AS(m.evaluate("delta' +"), InputError);
  CHECK_THROWS_AS(m.evaluate("alpha9"), InputError);
}

TEST_CASE("signature and diagonalization") {
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 6));
    IntMatrix a = test::random_int_matrix(n, n, -3, 3);
    IntMatrix g = a + a.transpose();
    if (determinant(g) == 0) continue;
    const RatMatrix gr = to_rational(g);
    const Diagonalization dz = diagonalize(gr);
    const RatMatrix dd = dz.basis.transpose() * gr * dz.basis;
    int plus = 0, minus = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) CHECK(dd(i, j) == 0);
      CHECK(dd(i, i) == dz.diagonal[i]);
      (dz.diagonal[i] > 0 ? plus : minus)++;
    }
    CHECK(signature(gr) == Signature{plus, minus});
    CHECK(determinant(dz.basis) != 0);
  }
  CHECK_THROWS_AS(signature(RatMatrix{{0, 0}, {0, 1}}), DomainError);
}

TEST_CASE("sublattices: complement and saturation") {
  const auto& m = standard_lambda();
  const LatticePtr lam = m.lattice();
  const Sublattice hd = span(lam, {m.halfdiff().coords});
  const Sublattice c = orthogonal_complement(hd);
  CHECK(c.rank() == 15);
  CHECK(c.contains(m.halfsum().coords));

  IntMatrix u2(6, 16);
  for (std::size_t i = 0; i < 6; ++i) u2(i, i) = 1;
  const Sublattice rest = orthogonal_complement(Sublattice(lam, u2));
  CHECK(rest.rank() == 10);
  CHECK(abs(rest.induced().determinant()) == 4);
  CHECK(rest.induced() == build_named("E8+A1^2"));

  const Sublattice e1perp = orthogonal_complement(span(lam, {m.e1().coords}));
  int inside = 0;
  for (std::size_t i = 0; i < e1perp.rank(); ++i) {
    IntVector v = e1perp.basis().row_vector(i);
    bool only_e8 = true;
    for (std::size_t j = 0; j < 16; ++j)
      if ((j < 6 || j > 13) && v[j] != 0) only_e8 = false;
    inside += only_e8;
  }
  CHECK(inside == 7);

  const Sublattice twice = span(lam, {(2 * m.e1()).coords});
  CHECK(saturate(twice).same_span(span(lam, {m.e1().coords})));
  const Sublattice ds = span(lam, {(m.delta_prime() + m.sigma_prime()).coords});
  CHECK(saturate(ds).same_span(span(lam, {m.halfsum().coords})));
  CHECK(saturate(saturate(ds)).same_span(saturate(ds)));
  CHECK_FALSE(twice.same_span(saturate(twice)));
}

TEST_CASE("orthogonal complement properties on random sublattices") {
  const auto& m = standard_lambda();
  for (int t = 0; t < 15; ++t) {
    const std::size_t k = static_cast<std::size_t>(uniform(1, 5));
    std::vector<IntVector> vs;
    for (std::size_t i = 0; i < k; ++i) {
      IntVector v(16);
      for (auto& x : v) x = uniform(-2, 2);
      vs.push_back(v);
    }
    const Sublattice s = span(m.lattice(), vs);
    const Sublattice c = orthogonal_complement(s);
    CHECK(c.rank() + s.rank() == 16);
    for (std::size_t i = 0; i < c.rank(); ++i)
      for (const auto& v : vs) CHECK(bilinear(m.lattice()->gram(), c.basis().row_vector(i), v) == 0);
    CHECK(saturate(c).same_span(c));
  }
}

TEST_CASE("dual, rescale and SNF of Gram matrices") {
  const Lattice a1 = build_named("A1");
  CHECK(dual(a1).gram() == RatMatrix{{make_rat(-1, 2)}});
  CHECK(rescale(a1, Rat(3)).gram() == RatMatrix{{-6}});
  CHECK(smith_normal_form(IntMatrix{{-2}}).diagonal()[0] == 2);
  CHECK(smith_normal_form(build_named("U(2)").integer_gram()).diagonal() == std::vector<Int>{2, 2});
  CHECK(smith_normal_form(IntMatrix::identity(4)).D == IntMatrix::identity(4));
  CHECK(dual(dual(build_named("D4"))) == build_named("D4"));
}

TEST_CASE("lattice json round trip") {
  for (const char* e : {"Lambda", "dual_rescale(D8,2)", "K7+A1(-7)"}) {
    const Lattice l = build_named(e);
    const Lattice back = lattice_from_json(lattice_to_json(l));
    CHECK(back == l);
    CHECK(back.blocks() == l.blocks());
  }
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"gram": [[1, 2], [3, 4]]})")), InputError);
}

TEST_CASE("isometry file parsing") {
  Json j = Json::parse(R"({"lattice": "A1^2", "matrix": [[0, 1], [1, 0]], "row": 4})");
  const IsometryFile f = isometry_file_from_json(j);
  CHECK(f.lattice == build_named("A1+A1"));
  CHECK(f.row == 4);
  Json r = Json::parse(R"({"lattice": "U", "matrix": [[1, 0], [1, 1]], "convention": "row"})");
  CHECK(isometry_file_from_json(r).matrix == IntMatrix{{1, 1}, {0, 1}});
  CHECK_THROWS_AS(isometry_file_from_json(Json::parse(R"({"matrix": [[1]]})")), InputError);
  CHECK_THROWS_AS(isometry_file_from_json(Json::parse(R"({"lattice": "A1", "matrix": [[1, 2]]})")), InputError);
}

TEST_CASE("short vectors: root counts and known minima") {
  CHECK(short_vectors(build_named("E8"), Int(-2)).size() == 120);
  CHECK(short_vectors(build_named("D4(2)"), Int(-2)).empty());
  CHECK(short_vectors(build_named("D4(2)"), Int(-4)).size() == 12);
  CHECK(short_vectors(build_named("A1"), Int(-2)).size() == 1);
  CHECK(short_vectors(build_named("E7"), Int(-2)).size() == 63);
  CHECK(short_vectors(build_named("A4"), Int(-2)).size() == 10);
  CHECK(short_vectors(build_named("D10(2)"), Int(-4)).size() == 90);
  CHECK_THROWS_AS(short_vectors(build_named("U"), Int(-2)), DomainError);
}

namespace {

Lattice random_negative_definite(std::size_t n) {
  while (true) {
    IntMatrix b = test::random_int_matrix(n, n, -2, 2);
    if (determinant(b) == 0) continue;
    IntMatrix g = b.transpose() * b;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = -2 * g(i, j);
    return Lattice::from_integers(g);
  }
}

}  // namespace

TEST_CASE("short vectors agree with the coordinate box oracle") {
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 4));
    const Lattice l = random_negative_definite(n);
    const Int bound = uniform(2, 24);
    const auto box = short_vectors_box(l, bound);
    const auto serial = short_vectors_upto(l, bound, Exec::Serial);
    const auto par = short_vectors_upto(l, bound, Exec::Parallel);
    CHECK(serial == box);
    CHECK(par == serial);
    for (const auto& sv : serial) {
      CHECK(-bilinear(l.gram(), sv.coords, sv.coords) == sv.norm);
      const auto nz = std::find_if(sv.coords.begin(), sv.coords.end(), [](const Int& x) { return x != 0; });
      REQUIRE(nz != sv.coords.end());
      CHECK(*nz > 0);
    }
    CHECK(std::is_sorted(serial.begin(), serial.end(), [](const ShortVector& a, const ShortVector& b) {
      return a.norm != b.norm ? a.norm < b.norm : a.coords < b.coords;
    }));
  }
  const Lattice d4 = build_named("D4");
  CHECK(short_vectors_box(d4, 4) == short_vectors_upto(d4, 4));
}
