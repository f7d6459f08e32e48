#include "doctest.h"
#include "nklat/lattice_expr.hpp"
#include "support.hpp"

using namespace nklat;

namespace {

IntMatrix rows_of(const std::vector<IntVector>& vs) {
  IntMatrix m(vs.size(), 16);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < 16; ++j) m(i, j) = vs[i][j];
  return m;
}

bool same_up_to_sign(const IntVector& a, const IntVector& b) {
  if (a == b) return true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != -b[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("wall classes of named vectors") {
  const auto& m = standard_lambda();
  const auto dp = wall_class(m, m.delta_prime().coords);
  REQUIRE(dp);
  CHECK(dp->wclass == WallClass::PEX4);
  CHECK(dp->square == -4);
  CHECK(dp->divisibility == 2);
  CHECK_FALSE(wall_class(m, m.halfsum().coords));
  const auto e1 = wall_class(m, m.e1().coords);
  REQUIRE(e1);
  CHECK(e1->wclass == WallClass::PEX2);
  CHECK_FALSE(wall_class(m, m.e2().coords));  // square -4 but div 1
  CHECK(is_pex(WallClass::PEX2));
  CHECK_FALSE(is_pex(WallClass::WALL6));
  CHECK(to_string(WallClass::WALL12) == "WALL12");
}

TEST_CASE("WALL6 and WALL12 candidates") {
  const auto& m = standard_lambda();
  const LatticeVector w6 = m.L(-1) + m.halfsum();
  CHECK(square(w6) == -6);
  CHECK(divisibility(w6) == 2);
  const auto c6 = wall_class(m, w6.coords);
  REQUIRE(c6);
  CHECK(c6->wclass == WallClass::WALL6);
  // square -24: not a wall
  CHECK_FALSE(wall_class(m, (2 * m.L(-1) + 2 * m.alpha(1)).coords));
  const LatticeVector y = 2 * m.L(-1) + m.halfsum() + m.halfdiff();  // square -16 - 4 = -20
  CHECK(square(y) == -20);
  CHECK_FALSE(wall_class(m, y.coords));
  const LatticeVector z = 2 * m.e1() + m.delta_prime();  // square -8 - 4 = -12, div 2, U(2) part zero
  CHECK(square(z) == -12);
  CHECK(divisibility(z) == 2);
  const auto cz = wall_class(m, z.coords);
  REQUIRE(cz);
  CHECK(cz->wclass == WallClass::WALL12);
  const LatticeVector u = m.L(-2) + m.delta_prime();  // square -8 - 4 = -12, odd U(2) coordinate
  CHECK(square(u) == -12);
  CHECK(divisibility(u) == 2);
  CHECK_FALSE(wall_class(m, u.coords));
}

TEST_CASE("wall scans of coinvariant lattices") {
  const auto& m = standard_lambda();
  // exceptional involution: coinvariant spanned by halfdiff
  for (bool pex : {false, true}) CHECK(sublattice_wall_scan(m, rows_of({m.halfdiff().coords}), pex).empty());
  // reflection in e1: coinvariant spanned by e1
  const auto w = sublattice_wall_scan(m, rows_of({m.e1().coords}), true);
  REQUIRE(w.size() == 1);
  CHECK(w[0].wclass == WallClass::PEX2);
  CHECK(same_up_to_sign(w[0].vector, m.e1().coords));
  // -1 on A1^2: coinvariant spanned by halfsum and halfdiff
  const auto a = sublattice_wall_scan(m, rows_of({m.halfsum().coords, m.halfdiff().coords}), false);
  bool delta = false;
  for (const auto& x : a) {
    CHECK(x.wclass == WallClass::PEX4);
    delta = delta || same_up_to_sign(x.vector, m.delta_prime().coords);
  }
  CHECK(delta);
  CHECK(a.size() == 2);  // δ' and Σ'
  CHECK_THROWS_AS(sublattice_wall_scan(m, rows_of({m.basis(0).coords, m.basis(1).coords}), false), DomainError);
  CHECK(sublattice_wall_scan(m, IntMatrix(0, 16), false).empty());
}

TEST_CASE("serial and parallel scans agree") {
  const auto& m = standard_lambda();
  std::vector<IntVector> e8;
  for (int k = 1; k <= 8; ++k) e8.push_back(m.alpha(k).coords);
  const auto s = sublattice_wall_scan(m, rows_of(e8), false, Exec::Serial);
  const auto p = sublattice_wall_scan(m, rows_of(e8), false, Exec::Parallel);
  CHECK(s == p);
  int pex2 = 0;
  for (const auto& w : s) pex2 += w.wclass == WallClass::PEX2;
  CHECK(pex2 == 120);  // every E8 root has div 1 in Λ
}
