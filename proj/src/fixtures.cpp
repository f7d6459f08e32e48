#include "nklat/fixtures.hpp"

#include <algorithm>
#include <set>

#include "nklat/lattice_expr.hpp"

namespace nklat {

namespace detail {
extern const char* const kFixtureJson;
extern const char* const kFixtureSha256;
}  // namespace detail

namespace {

std::optional<std::string> opt_string(const Json& row, const char* key) {
  if (!row.contains(key) || row[key].is_null()) return std::nullopt;
  return row[key].get<std::string>();
}

GenusSymbol genus_or_parse(const std::optional<std::string>& expr, const std::string& printed, TableRow& row,
                           const char* what) {
  if (expr) {
    try {
      return genus_symbol(build_named(*expr));
    } catch (const std::exception& e) {
      row.notes.push_back(std::string(what) + " lattice '" + *expr + "' not usable: " + e.what());
    }
  }
  return canonical(parse_genus(printed));
}

void fill_expectations(TableRow& row) {
  row.expected_inv = genus_or_parse(row.inv_lattice, row.inv_genus, row, "invariant");
  const GenusSymbol printed_inv = parse_genus(row.inv_genus);
  if (!oddity_formula_holds(printed_inv))
    row.notes.push_back("printed invariant genus " + row.inv_genus + " fails the oddity formula");
  else if (!genus_equal(printed_inv, *row.expected_inv))
    row.notes.push_back("printed invariant genus " + row.inv_genus + " differs from computed " +
                        render(*row.expected_inv));

  if (!row.coinv_genus) {
    row.coinv_trivial = true;
    return;
  }
  const GenusSymbol printed = parse_genus(*row.coinv_genus);
  if (row.coinv_lattice) {
    row.expected_coinv = genus_or_parse(row.coinv_lattice, *row.coinv_genus, row, "coinvariant");
  } else if (oddity_formula_holds(printed)) {
    row.expected_coinv = canonical(printed);
  } else {
    row.notes.push_back("printed coinvariant genus " + *row.coinv_genus +
                        " fails the oddity formula; not used for matching");
  }
}

}  // namespace

Fixture parse_fixture(const Json& j) {
  if (!j.is_object() || !j.contains("table1")) throw InputError("fixture: missing 'table1'");
  Fixture f;
  try {
    for (const auto& r : j.at("table1")) {
      TableRow row;
      row.no = r.at("no").get<int>();
      row.ord_f = r.at("ord_f").get<unsigned long>();
      row.ord_Df = r.at("ord_Df").get<unsigned long>();
      row.inv_lattice = r.at("inv_lattice").get<std::string>();
      row.inv_genus = r.at("inv_genus").get<std::string>();
      row.coinv_lattice = opt_string(r, "coinv_lattice");
      row.coinv_marker = opt_string(r, "coinv_marker");
      row.coinv_genus = opt_string(r, "coinv_genus");
      row.regular = r.at("regular").get<bool>();
      row.type = r.value("type", std::string());
      fill_expectations(row);
      f.table.push_back(std::move(row));
    }
    if (j.contains("orbit_table"))
      for (const auto& r : j.at("orbit_table")) {
        OrbitRow o;
        o.label = r.at("label").get<int>();
        o.vector = r.at("vector").get<std::string>();
        o.square = Int(r.at("square").get<long>());
        o.div = Int(r.at("div").get<long>());
        f.orbits.push_back(std::move(o));
      }
  } catch (const Json::exception& e) {
    throw InputError(std::string("fixture: ") + e.what());
  }
  std::sort(f.table.begin(), f.table.end(), [](const TableRow& a, const TableRow& b) { return a.no < b.no; });
  return f;
}

Fixture load_fixture(const std::filesystem::path& path) {
  Fixture f = parse_fixture(read_json_file(path));
  f.origin = path.string();
  return f;
}

const Fixture& bundled_fixture() {
  static const Fixture f = [] {
    Fixture x = parse_fixture(Json::parse(detail::kFixtureJson));
    x.sha256 = detail::kFixtureSha256;
    x.origin = "bundled";
    return x;
  }();
  return f;
}

std::vector<std::string> fixture_integrity_problems(const Fixture& f) {
  std::vector<std::string> out;
  if (f.table.size() != 32) out.push_back("expected 32 rows, found " + std::to_string(f.table.size()));
  std::set<int> seen;
  int regular = 0;
  for (const auto& r : f.table) {
    if (r.no < 1 || r.no > 32 || !seen.insert(r.no).second) out.push_back("bad or repeated row number " + std::to_string(r.no));
    if (r.regular) ++regular;
    if (r.ord_f % r.ord_Df) out.push_back("row " + std::to_string(r.no) + ": ord(D_f) does not divide ord(f)");
  }
  if (regular != 21) out.push_back("expected 21 regular rows, found " + std::to_string(regular));
  if (f.orbits.size() != 6) out.push_back("expected 6 orbit rows, found " + std::to_string(f.orbits.size()));
  return out;
}

namespace {

GenusSymbol genus_of(const Sublattice& s) { return genus_symbol(s.induced()); }

const GenusSymbol& d10_2_genus() {
  static const GenusSymbol g = genus_symbol(build_named("D10(2)"));
  return g;
}

std::string type_letter(const IsometryReport& r, const TableRow& row) {
  if (!r.regular) return "a";
  if (r.order == 2 && r.coinv_genus && genus_equal(*r.coinv_genus, d10_2_genus())) return "e";
  if (r.order % 5 == 0) return "d";
  if (row.type == "K3" || row.type == "K3^[2]") return "b";
  if (row.type.find("∘ι") != std::string::npos) return "c";
  return "unclassified";
}

}  // namespace

std::vector<std::string> row_mismatches(const IsometryReport& r, const TableRow& row) {
  std::vector<std::string> out;
  if (r.order != row.ord_f) out.push_back("ord(f) " + std::to_string(r.order) + " != " + std::to_string(row.ord_f));
  if (r.disc_order != row.ord_Df)
    out.push_back("ord(D_f) " + std::to_string(r.disc_order) + " != " + std::to_string(row.ord_Df));
  if (row.expected_inv && !genus_equal(r.inv_genus, *row.expected_inv))
    out.push_back("g(Λ^f) " + render(r.inv_genus) + " != " + render(*row.expected_inv));
  if (row.coinv_trivial) {
    if (r.coinv_genus) out.push_back("g(Λ_f) " + render(*r.coinv_genus) + " but Λ_f = 0 expected");
  } else if (row.expected_coinv) {
    if (!r.coinv_genus)
      out.push_back("Λ_f = 0 but " + render(*row.expected_coinv) + " expected");
    else if (!genus_equal(*r.coinv_genus, *row.expected_coinv))
      out.push_back("g(Λ_f) " + render(*r.coinv_genus) + " != " + render(*row.expected_coinv));
  }
  if (r.regular != row.regular) out.push_back(std::string("regular ") + (r.regular ? "true" : "false") + " != " +
                                              (row.regular ? "true" : "false"));
  return out;
}

std::optional<int> match_fixture_row(const IsometryReport& r, const Fixture& f) {
  for (const auto& row : f.table)
    if (row_mismatches(r, row).empty()) return row.no;
  return std::nullopt;
}

IsometryReport report(const StandardLambdaModel& model, const LatticeIsometry& f, const Fixture* fixture, Exec exec) {
  IsometryReport r;
  r.order = order_of(f);
  r.disc_order = disc_order(f);
  const auto ic = invariant_coinvariant(f);
  if (ic.invariant.rank() == 0) throw DomainError("isometry has trivial invariant lattice");
  r.inv_genus = genus_of(ic.invariant);
  r.coinv_rank = static_cast<int>(ic.coinvariant.rank());
  if (r.coinv_rank > 0) {
    r.coinv_genus = genus_of(ic.coinvariant);
    r.coinv_signature = r.coinv_genus->signature;
  }
  const SymplecticStatus st = symplectic_status(model, f, exec);
  r.in_O_plus = st.in_O_plus;
  r.coinv_neg_def = st.coinv_neg_def;
  r.symplectic = st.symplectic;
  r.regular = st.regular;
  r.witnesses = st.witnesses;
  r.exceptional = is_exceptional(f);
  if (r.coinv_rank == 1) {
    IntVector v(model.lattice()->rank());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = ic.coinvariant.basis()(0, j);
    r.exceptional_generator_div = divisibility(*model.lattice(), v);
  }
  if (!r.symplectic) {
    r.type_letter = "non-symplectic";
  } else if (fixture) {
    r.fixture_row = match_fixture_row(r, *fixture);
    if (!r.fixture_row) {
      r.type_letter = "outside table";
    } else {
      const auto& row = *std::find_if(fixture->table.begin(), fixture->table.end(),
                                      [&](const TableRow& t) { return t.no == *r.fixture_row; });
      r.type_letter = type_letter(r, row);
    }
  } else {
    r.type_letter = "outside table";
  }
  return r;
}

Json witness_to_json(const WallWitness& w) {
  Json v = Json::array();
  for (const auto& x : w.vector) v.push_back(x.get_si());
  return {{"vector", v},
          {"square", w.square.get_si()},
          {"divisibility", w.divisibility.get_si()},
          {"class", to_string(w.wclass)}};
}

Json report_to_json(const IsometryReport& r) {
  Json j;
  j["order"] = r.order;
  j["disc_order"] = r.disc_order;
  j["inv_genus"] = render(r.inv_genus);
  j["coinv_genus"] = r.coinv_genus ? Json(render(*r.coinv_genus)) : Json(nullptr);
  j["coinv_rank"] = r.coinv_rank;
  j["in_O_plus"] = r.in_O_plus;
  j["coinv_neg_def"] = r.coinv_neg_def;
  j["symplectic"] = r.symplectic;
  j["regular"] = r.regular;
  j["exceptional"] = r.exceptional;
  if (r.exceptional_generator_div) j["coinv_generator_div"] = r.exceptional_generator_div->get_si();
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_to_json(w));
  j["witnesses"] = ws;
  j["type_letter"] = r.type_letter;
  j["fixture_row"] = r.fixture_row ? Json(*r.fixture_row) : Json(nullptr);
  return j;
}

}  // namespace nklat
