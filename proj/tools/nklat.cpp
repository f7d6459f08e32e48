#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "CLI11.hpp"
#include "nklat/verify.hpp"

using namespace nklat;

namespace {

struct Options {
  int threads = 0;
  std::string fixture;
  std::string format = "text";
  bool pex_only = false;
  bool allow_partial = false;
  std::string target;
};

const Fixture& fixture_for(const Options& o) {
  static Fixture override_fixture;
  if (o.fixture.empty()) return bundled_fixture();
  override_fixture = load_fixture(o.fixture);
  return override_fixture;
}

int emit(const Options& o, const VerifyResult& r) {
  if (o.format == "json")
    std::cout << r.to_json().dump() << '\n';
  else
    std::cout << r.to_text();
  return r.ok() ? 0 : 1;
}

Json genus_json(const GenusSymbol& g) {
  Json locals = Json::array();
  for (const auto& l : g.locals) {
    Json bs = Json::array();
    for (const auto& b : l.blocks) {
      Json jb{{"scale", b.scale}, {"rank", b.rank}, {"sign", b.sign}};
      if (l.prime == 2) {
        jb["odd"] = b.odd;
        jb["oddity"] = b.oddity;
      }
      bs.push_back(jb);
    }
    locals.push_back({{"prime", l.prime.get_si()}, {"blocks", bs}});
  }
  return {{"symbol", render(g)}, {"signature", {g.signature.plus, g.signature.minus}}, {"locals", locals}};
}

int cmd_info(const Options& o) {
  const Lattice l = lattice_from_file_or_expr(o.target.empty() ? "Lambda" : o.target);
  const Signature s = signature(l);
  Json j{{"name", l.name()},
         {"rank", l.rank()},
         {"signature", {s.plus, s.minus}},
         {"determinant", to_string(l.determinant())},
         {"integral", l.integral()},
         {"even", l.even()}};
  Json blocks = Json::array();
  for (const auto& b : l.blocks()) blocks.push_back({{"name", b.name}, {"offset", b.offset}, {"size", b.size}});
  j["blocks"] = blocks;
  if (l.even()) j["genus"] = render(genus_symbol(l));
  if (o.format == "json") {
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "lattice     " << l.name() << "\nrank        " << l.rank() << "\nsignature   (" << s.plus << ','
              << s.minus << ")\ndeterminant " << to_string(l.determinant()) << "\neven        "
              << (l.even() ? "yes" : "no") << '\n';
    for (const auto& b : l.blocks()) std::cout << "block       " << b.name << " at " << b.offset << " size " << b.size << '\n';
    if (l.even()) std::cout << "genus       " << j["genus"].get<std::string>() << '\n';
  }
  return 0;
}

int cmd_genus(const Options& o) {
  const Lattice l = lattice_from_file_or_expr(o.target);
  const GenusSymbol g = genus_symbol(l);
  if (o.format == "json")
    std::cout << genus_json(g).dump() << '\n';
  else
    std::cout << render(g) << '\n' << render_blocks(g) << '\n';
  return 0;
}

int cmd_disc(const Options& o) {
  const Lattice l = lattice_from_file_or_expr(o.target.empty() ? "Lambda" : o.target);
  const TorsionQuadModule d = TorsionQuadModule::discriminant_form(l);
  Json j{{"size", d.size().get_str()}, {"two_elementary", d.is_2_elementary()}};
  Json orders = Json::array();
  for (const auto& x : d.orders()) orders.push_back(x.get_str());
  j["orders"] = orders;
  if (d.is_2_elementary()) {
    const KernelRadical kr = kernel_and_radical(d);
    j["dim_K"] = kr.kernel_basis.size();
    j["dim_R"] = kr.radical_basis.size();
    j["expected_shape"] = kr.expected_shape;
    j["reflection_vectors"] = reflection_vectors(d).size();
  }
  if (o.format == "json") {
    std::cout << j.dump() << '\n';
  } else {
    std::cout << d.dump();
    for (auto it = j.begin(); it != j.end(); ++it) std::cout << it.key() << ": " << it.value().dump() << '\n';
  }
  return 0;
}

LatticeIsometry load_isometry(const std::string& path) {
  const IsometryFile f = read_isometry_file(path);
  const auto& m = standard_lambda();
  if (!(f.lattice == *m.lattice())) throw InputError(path + ": lattice differs from the standard model of Λ");
  return make_isometry(m.lattice(), f.matrix);
}

int cmd_report(const Options& o) {
  const LatticeIsometry f = load_isometry(o.target);
  const IsometryReport r = report(standard_lambda(), f, &fixture_for(o));
  if (o.format == "json") {
    std::cout << report_to_json(r).dump() << '\n';
  } else {
    std::cout << "order         " << r.order << "\nord(D_f)      " << r.disc_order << "\ng(Λ^f)        "
              << render(r.inv_genus) << "\ng(Λ_f)        " << (r.coinv_genus ? render(*r.coinv_genus) : "—")
              << "\nin O+         " << r.in_O_plus << "\nΛ_f neg. def. " << r.coinv_neg_def << "\nsymplectic    "
              << r.symplectic << "\nregular       " << r.regular << "\nexceptional   " << r.exceptional
              << "\nwitnesses     " << r.witnesses.size() << "\ntype          " << r.type_letter
              << "\ntable row     " << (r.fixture_row ? std::to_string(*r.fixture_row) : "none") << '\n';
  }
  return r.type_letter == "outside table" ? 1 : 0;
}

int cmd_walls(const Options& o) {
  const LatticeIsometry f = load_isometry(o.target);
  const auto ic = invariant_coinvariant(f);
  const auto ws = sublattice_wall_scan(standard_lambda(), ic.coinvariant.basis(), o.pex_only);
  if (o.format == "json") {
    Json a = Json::array();
    for (const auto& w : ws) a.push_back(witness_to_json(w));
    std::cout << Json{{"coinv_rank", ic.coinvariant.rank()}, {"witnesses", a}}.dump() << '\n';
  } else {
    std::cout << "coinvariant rank " << ic.coinvariant.rank() << ", " << ws.size() << " witnesses\n";
    for (const auto& w : ws) std::cout << witness_to_json(w).dump() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice computations for U(2)^3 + E8 + A1^2"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--fixture", o.fixture, "Table fixture JSON overriding the bundled one");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* info = app.add_subcommand("info", "Lattice summary (default Lambda)");
  info->add_option("lattice", o.target, "Lattice expression or JSON file");
  auto* genus = app.add_subcommand("genus", "Canonical genus symbol");
  genus->add_option("lattice", o.target, "Lattice expression or JSON file")->required();
  auto* disc = app.add_subcommand("disc", "Discriminant form (default Lambda)");
  disc->add_option("lattice", o.target, "Lattice expression or JSON file");
  auto* rep = app.add_subcommand("report", "Table fingerprint of an isometry");
  rep->add_option("isometry", o.target, "Isometry JSON file")->required();
  auto* walls = app.add_subcommand("walls", "Wall witnesses in the coinvariant lattice");
  walls->add_option("isometry", o.target, "Isometry JSON file")->required();
  walls->add_flag("--pex-only", o.pex_only, "Only PEX2 and PEX4 witnesses");
  auto* vt = app.add_subcommand("verify-table", "Check an isometry database against the table");
  vt->add_option("dir", o.target, std::string("Database directory (default $") + kDatabaseEnv + ")");
  vt->add_flag("--allow-partial", o.allow_partial, "Do not require all 32 classes");
  auto* vd = app.add_subcommand("verify-discgroup", "Structure of O(D_Λ)");
  auto* vo = app.add_subcommand("verify-orbits", "Orbit representatives table");
  auto* vm = app.add_subcommand("verify-monodromy", "Reflections, O+ and the discriminant image");
  auto* vg = app.add_subcommand("verify-genus-table", "Genus symbols of the table's lattices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    if (*info) return cmd_info(o);
    if (*genus) return cmd_genus(o);
    if (*disc) return cmd_disc(o);
    if (*rep) return cmd_report(o);
    if (*walls) return cmd_walls(o);
    if (*vt) {
      std::string dir = o.target;
      if (dir.empty())
        if (const char* env = std::getenv(kDatabaseEnv)) dir = env;
      return emit(o, verify_table(dir, fixture_for(o), {o.allow_partial, Exec::Parallel}));
    }
    if (*vd) return emit(o, verify_discgroup());
    if (*vo) return emit(o, verify_orbits(fixture_for(o)));
    if (*vm) return emit(o, verify_monodromy());
    if (*vg) return emit(o, verify_genus_table(fixture_for(o)));
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
