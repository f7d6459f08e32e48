#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nklat/isometry.hpp"
#include "nklat/lattice_io.hpp"

namespace nklat {

struct TableRow {
  int no = 0;
  unsigned long ord_f = 0;
  unsigned long ord_Df = 0;
  std::string inv_lattice;                 // lattice expression
  std::string inv_genus;                   // as printed in the table
  std::optional<std::string> coinv_lattice;
  std::optional<std::string> coinv_marker;  // abstract lattice name (L13, L15, L29)
  std::optional<std::string> coinv_genus;
  bool regular = false;
  std::string type;                        // "K3", "K3^[2]", "(no. k)∘ι", "—" or ""

  // Genera used for matching: computed from the lattice expressions when
  // present, else parsed from the printed strings. A printed symbol that
  // fails the oddity formula is not used and a note is recorded.
  std::optional<GenusSymbol> expected_inv;
  std::optional<GenusSymbol> expected_coinv;  // nullopt with coinv_trivial for Λ_f = 0
  bool coinv_trivial = false;
  std::vector<std::string> notes;
};

struct OrbitRow {
  int label = 0;
  std::string vector;  // expression over the named model vectors
  Int square;
  Int div;
};

struct Fixture {
  std::vector<TableRow> table;
  std::vector<OrbitRow> orbits;
  std::string sha256;  // of the bundled file; empty for overrides
  std::string origin;
};

Fixture parse_fixture(const Json& j);
Fixture load_fixture(const std::filesystem::path& path);
const Fixture& bundled_fixture();
// Rows 1..32 present exactly once, 21 regular, 6 orbit rows.
std::vector<std::string> fixture_integrity_problems(const Fixture& f);

struct IsometryReport {
  unsigned long order = 0;
  unsigned long disc_order = 0;
  GenusSymbol inv_genus;
  std::optional<GenusSymbol> coinv_genus;
  Signature coinv_signature;
  int coinv_rank = 0;
  bool in_O_plus = false;
  bool coinv_neg_def = false;
  bool symplectic = false;
  bool regular = false;
  bool exceptional = false;
  std::optional<Int> exceptional_generator_div;
  std::vector<WallWitness> witnesses;
  std::string type_letter;          // a..e, "non-symplectic" or "outside table"
  std::optional<int> fixture_row;
};

IsometryReport report(const StandardLambdaModel& model, const LatticeIsometry& f, const Fixture* fixture,
                      Exec exec = Exec::Parallel);

// Row whose (ord_f, ord_Df, genera, regular) agree with the report.
std::optional<int> match_fixture_row(const IsometryReport& r, const Fixture& f);
// Differences between a report and a specific row (empty when it matches).
std::vector<std::string> row_mismatches(const IsometryReport& r, const TableRow& row);

Json report_to_json(const IsometryReport& r);
Json witness_to_json(const WallWitness& w);

}  // namespace nklat
