#include "nklat/walls.hpp"

namespace nklat {

std::string to_string(WallClass c) {
  switch (c) {
    case WallClass::PEX2: return "PEX2";
    case WallClass::PEX4: return "PEX4";
    case WallClass::WALL6: return "WALL6";
    case WallClass::WALL12: return "WALL12";
  }
  return "?";
}

bool is_pex(WallClass c) { return c == WallClass::PEX2 || c == WallClass::PEX4; }

std::optional<WallWitness> wall_class(const StandardLambdaModel& model, const IntVector& x) {
  const Lattice& l = *model.lattice();
  const Int d = divisibility(l, x);  // throws on the zero vector
  const Rat sq = bilinear(l.gram(), x, x);
  const Int s = sq.get_num();
  std::optional<WallClass> c;
  if (s == -2 && d == 1) c = WallClass::PEX2;
  else if (s == -4 && d == 2) c = WallClass::PEX4;
  else if (s == -6 && d == 2) c = WallClass::WALL6;
  else if (s == -12 && d == 2) {
    bool even = true;
    for (std::size_t i = StandardLambdaModel::kU2Begin; i < StandardLambdaModel::kU2Begin + StandardLambdaModel::kU2Size; ++i)
      if (mpz_odd_p(x[i].get_mpz_t())) even = false;
    if (even) c = WallClass::WALL12;
  }
  if (!c) return std::nullopt;
  return WallWitness{x, s, d, *c};
}

std::vector<WallWitness> sublattice_wall_scan(const StandardLambdaModel& model, const IntMatrix& basis, bool pex_only,
                                              Exec exec) {
  std::vector<WallWitness> out;
  if (basis.rows() == 0) return out;
  Sublattice sub(model.lattice(), basis);
  const Lattice induced = sub.induced();
  if (!is_negative_definite(induced)) throw DomainError("sublattice is not negative definite");
  const Int bound = pex_only ? 4 : 12;
  for (const auto& sv : short_vectors_upto(induced, bound, exec)) {
    if (sv.norm != 2 && sv.norm != 4 && sv.norm != 6 && sv.norm != 12) continue;
    auto w = wall_class(model, sub.to_ambient(sv.coords));
    if (!w) continue;
    if (pex_only && !is_pex(w->wclass)) continue;
    out.push_back(*w);
  }
  return out;
}

}  // namespace nklat
