#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "nklat/lattice_expr.hpp"
#include "nklat/verify.hpp"

using namespace nklat;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Fail;
  std::string detail;
};

Outcome from_verify(const VerifyResult& r, const std::string& extra = {}) {
  if (r.skipped) return {Status::Skip, r.skip_reason};
  std::ostringstream os;
  os << (r.checks.size() - r.failures() - r.errata()) << "/" << r.checks.size() << " checks";
  if (r.errata()) os << ", " << r.errata() << " erratum";
  for (const auto& c : r.checks)
    if (!c.ok) os << "; " << (c.erratum ? "erratum " : "FAILED ") << c.name << ": " << c.detail;
  if (!extra.empty()) os << "; " << extra;
  return {r.ok() ? Status::Pass : Status::Fail, os.str()};
}

std::string expect(bool& ok, const std::string& what, bool cond) {
  ok = ok && cond;
  return cond ? std::string() : "mismatch: " + what + "; ";
}

Outcome ac1() {
  const Fixture& f = bundled_fixture();
  const VerifyResult r = verify_genus_table(f);
  int coinv = 0;
  for (const auto& c : r.checks)
    if (c.ok && c.name.find("g(Λ_f)") != std::string::npos) ++coinv;
  Outcome o = from_verify(r, std::to_string(coinv) + " explicit coinvariants match");
  if (coinv != 6 && o.status == Status::Pass) o = {Status::Fail, o.detail + "; expected 6 coinvariant checks"};
  return o;
}

Outcome ac2() { return from_verify(verify_discgroup()); }

Outcome ac3() {
  const VerifyResult orbits = verify_orbits(bundled_fixture());
  const VerifyResult mono = verify_monodromy();
  VerifyResult all = mono;
  all.checks.insert(all.checks.begin(), orbits.checks.begin(), orbits.checks.end());
  return from_verify(all);
}

Outcome ac4() {
  const auto& m = standard_lambda();
  IntMatrix d = IntMatrix::identity(16);
  d(StandardLambdaModel::kHalfdiff, StandardLambdaModel::kHalfdiff) = -1;
  const IsometryReport r = report(m, make_isometry(m.lattice(), d), &bundled_fixture());
  bool ok = true;
  std::string s;
  s += expect(ok, "order", r.order == 2);
  s += expect(ok, "ord(D_f)", r.disc_order == 1);
  s += expect(ok, "inv genus " + render(r.inv_genus), render(r.inv_genus) == "II_(3,12)2^7_7");
  s += expect(ok, "coinv genus", r.coinv_genus && render(*r.coinv_genus) == "II_(0,1)2^1_7");
  s += expect(ok, "coinv rank", r.coinv_rank == 1);
  s += expect(ok, "symplectic", r.symplectic);
  s += expect(ok, "regular", r.regular);
  s += expect(ok, "exceptional", r.exceptional);
  s += expect(ok, "fixture row", r.fixture_row == 2);
  if (ok) s = "order 2, ord(D_f) 1, " + render(r.inv_genus) + " / " + render(*r.coinv_genus) + ", row 2, type " + r.type_letter;
  return {ok ? Status::Pass : Status::Fail, s};
}

Outcome ac5() {
  const auto& m = standard_lambda();
  bool ok = true;
  std::string s;
  const auto re = symplectic_status(m, reflection(m.lattice(), m.e1().coords));
  IntVector neg = m.e1().coords;
  for (auto& x : neg) x = -x;
  bool pex2 = false;
  for (const auto& w : re.witnesses)
    pex2 = pex2 || (w.wclass == WallClass::PEX2 && (w.vector == m.e1().coords || w.vector == neg));
  s += expect(ok, "R_e1 rejected", !re.symplectic);
  s += expect(ok, "PEX2 witness ±e1", pex2);

  IntMatrix d = IntMatrix::identity(16);
  d(StandardLambdaModel::kHalfsum, StandardLambdaModel::kHalfsum) = -1;
  d(StandardLambdaModel::kHalfdiff, StandardLambdaModel::kHalfdiff) = -1;
  const auto ra = symplectic_status(m, make_isometry(m.lattice(), d));
  bool pex4 = false;
  for (const auto& w : ra.witnesses)
    pex4 = pex4 || (w.wclass == WallClass::PEX4 && w.square == -4 && w.divisibility == 2);
  s += expect(ok, "-1 on A1^2 rejected", !ra.symplectic);
  s += expect(ok, "PEX4 witness", pex4);
  if (ok) s = "R_e1: PEX2 ±e1; -1 on A1^2: " + std::to_string(ra.witnesses.size()) + " PEX4 witnesses";
  return {ok ? Status::Pass : Status::Fail, s};
}

Outcome ac6() {
  bool ok = true;
  std::string s;
  const auto e8 = short_vectors(build_named("E8"), Int(-2));
  s += expect(ok, "E8 roots " + std::to_string(e8.size()), e8.size() == 120);
  s += expect(ok, "D4(2) at -2 nonempty", short_vectors(build_named("D4(2)"), Int(-2)).empty());
  std::mt19937_64 rng(7);
  int compared = 0;
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(rng() % 4);
    IntMatrix b(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = static_cast<long>(rng() % 5) - 2;
    if (determinant(b) == 0) continue;
    const IntMatrix g = b.transpose() * to_integer(root_lattice_A(n).gram()) * b;
    const Lattice l = Lattice::from_integers(g);
    const Int bound = 8;
    const auto box = short_vectors_box(l, bound);
    const bool same = box == short_vectors_upto(l, bound, Exec::Serial) && box == short_vectors_upto(l, bound, Exec::Parallel);
    s += expect(ok, "box oracle on random rank " + std::to_string(n), same);
    ++compared;
  }
  if (ok) s = "E8: 120, D4(2): 0, box oracle agrees on " + std::to_string(compared) + " random lattices";
  return {ok ? Status::Pass : Status::Fail, s};
}

Outcome ac7() {
  const GenusSymbol a = genus_symbol(build_named("U(2)^3+E8+A1"));
  const GenusSymbol b = genus_symbol(build_named("U^3+dual_rescale(D8,2)+A1"));
  const bool ok = genus_equal(a, b) && render(a) == "II_(3,12)2^7_7" && render(b) == "II_(3,12)2^7_7";
  return {ok ? Status::Pass : Status::Fail, render(a) + " = " + render(b)};
}

Outcome ac8() {
  const char* root = std::getenv(kDatabaseEnv);
  if (!root || !*root) return {Status::Skip, std::string("external data required: ") + kDatabaseEnv + " not set"};
  return from_verify(verify_table(root, bundled_fixture()));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 genus regression", ac1},       {"AC2 discriminant group", ac2}, {"AC3 monodromy evidence", ac3},
      {"AC4 exceptional involution", ac4}, {"AC5 wall falsification", ac5}, {"AC6 enumeration oracle", ac6},
      {"AC7 genus equality", ac7},         {"AC8 database", ac8}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Skip ? "SKIP" : "FAIL";
    failed += o.status == Status::Fail;
    std::printf("%-28s %s  %7.2fs  %s\n", name, tag, secs, o.detail.c_str());
  }
  return failed ? 1 : 0;
}
