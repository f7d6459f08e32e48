#include <cstdlib>
#include <fstream>
#include <unistd.h>

#include "doctest.h"
#include "nklat/verify.hpp"
#include "support.hpp"

using namespace nklat;
namespace fs = std::filesystem;

#ifndef NKLAT_SOURCE_DIR
#error "NKLAT_SOURCE_DIR must be defined"
#endif

namespace {

const StandardLambdaModel& M() { return standard_lambda(); }
const fs::path kExamples = fs::path(NKLAT_SOURCE_DIR) / "data" / "examples";

LatticeIsometry load(const char* name) {
  return make_isometry(M().lattice(), read_isometry_file(kExamples / name).matrix);
}

fs::path scratch_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("nklat_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("bundled fixture integrity") {
  const Fixture& f = bundled_fixture();
  CHECK(fixture_integrity_problems(f).empty());
  CHECK(f.table.size() == 32);
  CHECK(f.orbits.size() == 6);
  CHECK(f.sha256.size() == 64);
  int regular = 0;
  for (const auto& r : f.table) {
    regular += r.regular;
    CHECK(r.expected_inv.has_value());
    CHECK(r.coinv_trivial == !r.coinv_genus.has_value());
  }
  CHECK(regular == 21);
  CHECK(f.table[0].coinv_trivial);
  CHECK_FALSE(f.table[29].notes.empty());  // row 30 prints invalid symbols
  CHECK_THROWS_AS(parse_fixture(Json::object()), InputError);
  CHECK_THROWS_AS(parse_fixture(Json{{"table1", Json::array({Json{{"no", 1}}})}}), InputError);

  Fixture broken = f;
  broken.table.pop_back();
  CHECK_FALSE(fixture_integrity_problems(broken).empty());
}

TEST_CASE("reports of the example isometries") {
  const Fixture& f = bundled_fixture();

  const IsometryReport id = report(M(), load("identity.json"), &f);
  CHECK(id.order == 1);
  CHECK(id.coinv_rank == 0);
  CHECK(id.symplectic);
  CHECK(id.regular);
  CHECK(id.fixture_row == 1);
  CHECK(id.type_letter == "b");

  const IsometryReport ex = report(M(), load("exceptional.json"), &f);
  CHECK(ex.order == 2);
  CHECK(ex.disc_order == 1);
  CHECK(ex.exceptional);
  CHECK(ex.exceptional_generator_div == Int(2));
  CHECK(render(ex.inv_genus) == "II_(3,12)2^7_7");
  CHECK(ex.fixture_row == 2);
  CHECK(ex.type_letter == "c");
  CHECK(row_mismatches(ex, f.table[1]).empty());
  CHECK_FALSE(row_mismatches(ex, f.table[0]).empty());
  CHECK(match_fixture_row(ex, f) == 2);

  const IsometryReport a = report(M(), load("minus_a1sq.json"), &f);
  CHECK(a.in_O_plus);
  CHECK(a.coinv_neg_def);
  CHECK_FALSE(a.symplectic);  // PEX4 witness
  CHECK(a.type_letter == "non-symplectic");
  CHECK_FALSE(a.fixture_row);

  const IsometryReport r = report(M(), load("reflection_alpha1.json"), &f);
  CHECK(r.exceptional);
  CHECK(r.exceptional_generator_div == Int(1));
  CHECK_FALSE(r.regular);

  const IsometryReport ns = report(M(), reflection(M().lattice(), M().L(1).coords), &f);
  CHECK_FALSE(ns.symplectic);
  CHECK(ns.type_letter == "non-symplectic");

  CHECK_THROWS_AS(report(M(), make_isometry(M().lattice(), -IntMatrix::identity(16)), &f), DomainError);
  CHECK_THROWS_AS(load("corrupted.json"), InputError);

  const Json j = report_to_json(ex);
  CHECK(j["type_letter"] == "c");
  CHECK(j["fixture_row"] == 2);
  CHECK(j["inv_genus"] == "II_(3,12)2^7_7");
}

TEST_CASE("serial and parallel reports agree") {
  const Fixture& f = bundled_fixture();
  for (int t = 0; t < 4; ++t) {
    const LatticeIsometry g = test::random_reflection_word(M(), 3);
    const Json s = report_to_json(report(M(), g, &f, Exec::Serial));
    const Json p = report_to_json(report(M(), g, &f, Exec::Parallel));
    CHECK(s == p);
  }
}

TEST_CASE("orbit table and genus table") {
  const Fixture& f = bundled_fixture();
  const VerifyResult o = verify_orbits(f);
  CHECK(o.ok());
  CHECK(o.checks.size() == 6);

  const VerifyResult g = verify_genus_table(f);
  CHECK(g.ok());
  CHECK(g.errata() >= 1);
  for (const auto& c : g.checks)
    if (c.erratum) CHECK(c.name.rfind("row 30 ", 0) == 0);
}

TEST_CASE("table verification over a directory of isometries") {
  const Fixture& f = bundled_fixture();
  const VerifyResult absent = verify_table("/nonexistent/nklat", f);
  CHECK(absent.skipped);
  CHECK(absent.ok());
  CHECK(absent.skip_reason.find("external data required") != std::string::npos);

  const fs::path d = scratch_dir("table");
  CHECK(verify_table(d, f).skipped);
  fs::create_directories(d / "sub");
  fs::copy_file(kExamples / "identity.json", d / "identity.json");
  fs::copy_file(kExamples / "exceptional.json", d / "sub" / "exceptional.json");

  const VerifyResult partial = verify_table(d, f, {true, Exec::Parallel});
  CHECK(partial.ok());
  CHECK(partial.data["rows_matched"] == 2);
  const VerifyResult full = verify_table(d, f);
  CHECK_FALSE(full.ok());

  // undeclared row: matched by fingerprint
  Json ex = read_json_file(kExamples / "exceptional.json");
  ex.erase("row");
  std::ofstream(d / "undeclared.json") << ex.dump();
  CHECK(verify_table(d, f, {true, Exec::Serial}).ok());

  // wrong declared row
  ex["row"] = 5;
  std::ofstream(d / "wrong.json") << ex.dump();
  CHECK_FALSE(verify_table(d, f, {true, Exec::Serial}).ok());
  fs::remove(d / "wrong.json");

  fs::copy_file(kExamples / "corrupted.json", d / "corrupted.json");
  const VerifyResult bad = verify_table(d, f, {true, Exec::Parallel});
  CHECK_FALSE(bad.ok());
  bool flagged = false;
  for (const auto& c : bad.checks) flagged = flagged || (c.name == "corrupted.json" && !c.ok);
  CHECK(flagged);
  fs::remove_all(d);
}
