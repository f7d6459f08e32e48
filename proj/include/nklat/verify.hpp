#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nklat/fixtures.hpp"

namespace nklat {

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
  // Mismatch against a printed value that is itself invalid; listed, not failed.
  bool erratum = false;
};

struct VerifyResult {
  std::string title;
  std::vector<Check> checks;
  bool skipped = false;
  std::string skip_reason;
  Json data = Json::object();  // pipeline-specific payload

  bool ok() const;
  void add(std::string name, bool ok, std::string detail = {});
  int failures() const;
  int errata() const;
  Json to_json() const;
  std::string to_text() const;
};

// |D| = 256, K/R shape, r = δ'/2, reflection-generated O(D) of order
// 2903040, image 1451520 in Sp(K/R), orbits {r} and Γ \ {r}.
VerifyResult verify_discgroup(FiniteIsometryGroup::Mode mode = FiniteIsometryGroup::Mode::Parallel);

// Orbit-table vectors against their (square, divisibility) pairs.
VerifyResult verify_orbits(const Fixture& f);

// Reflections in a finite sample of Δ lie in O+, their discriminant images
// generate O(D), R_δ' induces T_r, and the lifting construction works for
// every u in Γ.
VerifyResult verify_monodromy(FiniteIsometryGroup::Mode mode = FiniteIsometryGroup::Mode::Parallel);

// Explicit lattice expressions of the table against the printed genera.
// A printed symbol that fails the oddity formula is reported as an erratum
// with both symbols.
VerifyResult verify_genus_table(const Fixture& f);

struct TableOptions {
  bool allow_partial = false;
  Exec exec = Exec::Parallel;
};
// Isometry files (*.json, recursively) under `dir`; each is matched to the
// row named in its "row" key, else by fingerprint. An absent or empty
// directory gives a skipped result.
VerifyResult verify_table(const std::filesystem::path& dir, const Fixture& f, const TableOptions& opt = {});

// Environment variable naming the database root for verify_table.
inline constexpr const char* kDatabaseEnv = "NKLAT_DATABASE";

}  // namespace nklat
