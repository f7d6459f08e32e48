#include "nklat/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>

#include "nklat/lattice_expr.hpp"

namespace nklat {

bool VerifyResult::ok() const { return failures() == 0; }

void VerifyResult::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail), false});
}

int VerifyResult::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.ok && !c.erratum; }));
}

int VerifyResult::errata() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.erratum; }));
}

Json VerifyResult::to_json() const {
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json j{{"name", c.name}, {"ok", c.ok}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (c.erratum) j["erratum"] = true;
    cs.push_back(j);
  }
  Json j{{"title", title}, {"ok", ok()}, {"checks", cs}, {"failures", failures()}, {"errata", errata()}};
  if (skipped) {
    j["skipped"] = true;
    j["skip_reason"] = skip_reason;
  }
  if (!data.empty()) j["data"] = data;
  return j;
}

std::string VerifyResult::to_text() const {
  std::ostringstream os;
  if (skipped) {
    os << title << ": SKIP (" << skip_reason << ")\n";
    return os.str();
  }
  for (const auto& c : checks) {
    os << (c.ok ? "  ok    " : c.erratum ? "  ERRATUM " : "  FAIL  ") << c.name;
    if (!c.detail.empty()) os << "  [" << c.detail << ']';
    os << '\n';
  }
  os << title << ": " << (ok() ? "PASS" : "FAIL") << " (" << checks.size() - failures() - errata() << '/'
     << checks.size() << " ok";
  if (errata()) os << ", " << errata() << " errata";
  os << ")\n";
  return os.str();
}

namespace {

using Mode = FiniteIsometryGroup::Mode;

std::shared_ptr<const TorsionQuadModule> lambda_disc() {
  static const auto d =
      std::make_shared<const TorsionQuadModule>(TorsionQuadModule::discriminant_form(*standard_lambda().lattice()));
  return d;
}

RatVector half(const IntVector& v) {
  RatVector r = to_rational(v);
  for (auto& x : r) x /= 2;
  return r;
}

bool in_delta(const Lattice& l, const IntVector& x) {
  const Rat s = bilinear(l.gram(), to_rational(x), to_rational(x));
  return s == -2 || (s == -4 && divisibility(l, x) == 2);
}

F2Map disc_image(const std::shared_ptr<const TorsionQuadModule>& d, const LatticeIsometry& f) {
  return induced_disc_isometry(d, f.matrix).to_f2();
}

// Lift of u in Γ to x in Δ with x^2 = -4, div 2 and x/2 + Λ = u.
IntVector lift_to_delta(const StandardLambdaModel& m, const TorsionQuadModule& d, std::uint32_t u) {
  RatVector rep = d.lift(d.from_mask(u));
  for (auto& x : rep) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    x -= fl;
  }
  const Rat s = bilinear(m.lattice()->gram(), rep, rep);
  IntVector y(m.lattice()->rank(), Int(0));
  if (s == 1) {
    y = m.e1().coords;
  } else if (s == 3) {
    y = m.e2().coords;
  } else if (s != -1) {
    throw DomainError("unexpected square of the reduced lift: " + to_string(s));
  }
  IntVector x(rep.size());
  for (std::size_t i = 0; i < rep.size(); ++i) {
    const Rat v = 2 * (rep[i] + y[i]);
    if (v.get_den() != 1) throw DomainError("lift is not integral");
    x[i] = v.get_num();
  }
  return x;
}

}  // namespace

VerifyResult verify_discgroup(Mode mode) {
  VerifyResult res;
  res.title = "verify-discgroup";
  const auto& m = standard_lambda();
  const auto d = lambda_disc();
  res.add("|D_Λ| = 256", d->size() == 256, "size " + d->size().get_str());
  res.add("D_Λ is 2-elementary", d->is_2_elementary());
  if (!d->is_2_elementary()) return res;
  const KernelRadical kr = kernel_and_radical(*d);
  res.add("dim K = 7", kr.kernel_basis.size() == 7, std::to_string(kr.kernel_basis.size()));
  res.add("dim R = 1", kr.radical_basis.size() == 1, std::to_string(kr.radical_basis.size()));
  res.add("q(r) = 1 mod 2Z", kr.r && d->q2(*kr.r) == 2);
  if (!kr.expected_shape) return res;
  const std::uint32_t r = *kr.r;
  const std::uint32_t dh = d->to_mask(d->from_dual(half(m.delta_prime().coords)));
  res.add("r = δ'/2 + Λ", dh == r);

  const auto gamma = reflection_vectors(*d);
  res.data["gamma_size"] = gamma.size();
  const FiniteIsometryGroup g = full_reflection_group(*d, mode);
  res.data["order"] = g.order();
  res.add("reflection-generated group has order 2903040", g.order() == 2903040, std::to_string(g.order()));

  std::vector<F2Map> img;
  for (const auto& s : g.generators()) img.push_back(restrict_to_kernel_quotient(*d, kr, s));
  const FiniteIsometryGroup h(kernel_quotient_dim(kr), img, mode);
  res.data["image_order"] = h.order();
  res.add("image in Sp(K/R) has order 1451520", h.order() == 1451520, std::to_string(h.order()));
  res.add("kernel of the restriction has order 2", h.order() * 2 == g.order());

  const Transvection tr = transvection(*d, r);
  res.add("T_r is central and acts trivially on K/R",
          g.contains(tr.map) && g.is_central(tr.map) && restrict_to_kernel_quotient(*d, kr, tr.map).is_identity());

  const auto orbits = g.orbits(gamma);
  std::vector<std::size_t> sizes;
  for (const auto& o : orbits) sizes.push_back(o.size());
  std::sort(sizes.begin(), sizes.end());
  Json js = Json::array();
  for (auto s : sizes) js.push_back(s);
  res.data["gamma_orbit_sizes"] = js;
  const bool two = sizes.size() == 2 && sizes[0] == 1 && sizes[1] + 1 == gamma.size();
  bool singleton_r = false;
  for (const auto& o : orbits) singleton_r = singleton_r || (o.size() == 1 && o[0] == r);
  res.add("O(D_Λ) has 2 orbits on Γ: {r} and Γ \\ {r}", two && singleton_r,
          "|Γ| = " + std::to_string(gamma.size()) + ", orbits " + js.dump());
  return res;
}

VerifyResult verify_orbits(const Fixture& f) {
  VerifyResult res;
  res.title = "verify-orbits";
  const auto& m = standard_lambda();
  for (const auto& row : f.orbits) {
    const std::string name = "(" + std::to_string(row.label) + ") " + row.vector;
    try {
      const LatticeVector v = m.evaluate(row.vector);
      const Rat s = square(v);
      const Int dv = divisibility(v);
      res.add(name, s == Rat(row.square) && dv == row.div,
              "square " + to_string(s) + ", div " + dv.get_str() + "; expected " + row.square.get_str() + ", " +
                  row.div.get_str());
    } catch (const std::exception& e) {
      res.add(name, false, e.what());
    }
  }
  if (f.orbits.size() != 6) res.add("6 orbit rows", false, std::to_string(f.orbits.size()));
  return res;
}

VerifyResult verify_monodromy(Mode mode) {
  VerifyResult res;
  res.title = "verify-monodromy";
  const auto& m = standard_lambda();
  const LatticePtr& lam = m.lattice();
  const auto d = lambda_disc();

  std::vector<std::pair<std::string, IntVector>> sample;
  for (const auto& row : bundled_fixture().orbits) sample.push_back({row.vector, m.evaluate(row.vector).coords});
  for (int k = 1; k <= 8; ++k) sample.push_back({"alpha" + std::to_string(k), m.alpha(k).coords});
  sample.push_back({"delta'", m.delta_prime().coords});
  sample.push_back({"Sigma'", m.sigma_prime().coords});
  sample.push_back({"halfsum", m.halfsum().coords});
  sample.push_back({"halfdiff", m.halfdiff().coords});
  const KernelRadical kr = kernel_and_radical(*d);
  const auto gamma = reflection_vectors(*d);
  std::vector<std::uint32_t> lifted;
  for (auto u : gamma) {
    try {
      sample.push_back({"lift of u=" + std::to_string(u), lift_to_delta(m, *d, u)});
      lifted.push_back(u);
    } catch (const std::exception& e) {
      res.add("lift of u=" + std::to_string(u), false, e.what());
    }
  }
  res.data["sample_size"] = sample.size();

  int in_delta_count = 0, oplus = 0, wall_agree = 0;
  std::vector<F2Map> images;
  std::vector<std::string> bad;
  for (const auto& [name, v] : sample) {
    if (!in_delta(*lam, v)) {
      bad.push_back(name + " not in Δ");
      continue;
    }
    ++in_delta_count;
    const LatticeIsometry r = reflection(lam, v);
    if (in_O_plus(r)) ++oplus;
    else bad.push_back(name + " reflection not in O+");
    if (spinor_sign_wall(r) == 1) ++wall_agree;
    images.push_back(disc_image(d, r));
  }
  const std::string n = std::to_string(sample.size());
  res.add("Δ-sample vectors have x^2 = -2, or x^2 = -4 and div 2", in_delta_count == static_cast<int>(sample.size()),
          std::to_string(in_delta_count) + "/" + n);
  res.add("every sample reflection lies in O+", oplus == static_cast<int>(sample.size()),
          std::to_string(oplus) + "/" + n + (bad.empty() ? "" : "; " + bad.front()));
  res.add("Wall-form spinor sign agrees", wall_agree == static_cast<int>(sample.size()),
          std::to_string(wall_agree) + "/" + n);

  const FiniteIsometryGroup g(d->ngens(), images, mode);
  res.data["generated_order"] = g.order();
  res.add("discriminant images generate a group of order 2903040", g.order() == 2903040, std::to_string(g.order()));

  if (kr.r) {
    const F2Map rd = disc_image(d, reflection(lam, m.delta_prime().coords));
    res.add("R_δ' induces T_r", rd == transvection(*d, *kr.r).map);
  } else {
    res.add("R_δ' induces T_r", false, "no r in R");
  }

  int lift_ok = 0;
  for (auto u : lifted) {
    const IntVector x = lift_to_delta(m, *d, u);
    const bool shape = bilinear(lam->gram(), to_rational(x), to_rational(x)) == -4 && divisibility(*lam, x) == 2;
    const bool cls = d->to_mask(d->from_dual(half(x))) == u;
    const bool induces = disc_image(d, reflection(lam, x)) == transvection(*d, u).map;
    if (shape && cls && induces) ++lift_ok;
  }
  res.add("every u in Γ lifts to x with x^2 = -4, div 2, x/2 + Λ = u and R_x inducing T_u",
          lift_ok == static_cast<int>(gamma.size()), std::to_string(lift_ok) + "/" + std::to_string(gamma.size()));
  return res;
}

namespace {

void genus_check(VerifyResult& res, const std::string& name, const std::string& expr, const std::string& printed) {
  try {
    const GenusSymbol computed = genus_symbol(build_named(expr));
    const GenusSymbol parsed = parse_genus(printed);
    const std::string a = render(computed), b = render(canonical(parsed));
    if (a == b) {
      res.add(name, true, a);
      return;
    }
    Check c{name, false, "computed " + a + " from " + expr + ", printed " + printed + " (canonical " + b + ")", false};
    if (!oddity_formula_holds(parsed)) {
      c.erratum = true;
      c.detail += "; the printed symbol fails the oddity formula";
    }
    res.checks.push_back(c);
  } catch (const std::exception& e) {
    res.add(name, false, e.what());
  }
}

}  // namespace

VerifyResult verify_genus_table(const Fixture& f) {
  VerifyResult res;
  res.title = "verify-genus-table";
  for (const auto& row : f.table) {
    const std::string n = "row " + std::to_string(row.no);
    genus_check(res, n + " g(Λ^f)", row.inv_lattice, row.inv_genus);
    if (row.coinv_lattice && row.coinv_genus) genus_check(res, n + " g(Λ_f)", *row.coinv_lattice, *row.coinv_genus);
    for (const auto* s : {&row.inv_genus, row.coinv_genus ? &*row.coinv_genus : nullptr}) {
      if (!s) continue;
      try {
        const GenusSymbol p = parse_genus(*s);
        if (!(parse_genus(render(p)) == p)) res.add(n + " re-render " + *s, false, render(p));
      } catch (const std::exception& e) {
        res.add(n + " parse " + *s, false, e.what());
      }
    }
  }
  return res;
}

namespace {

struct FileOutcome {
  std::string file;
  std::optional<int> declared_row;
  std::optional<int> matched_row;
  std::optional<IsometryReport> report;
  std::vector<std::string> problems;
};

std::string fingerprint(const IsometryReport& r) {
  return std::to_string(r.order) + "|" + std::to_string(r.disc_order) + "|" + render(r.inv_genus) + "|" +
         (r.coinv_genus ? render(*r.coinv_genus) : "0") + "|" + (r.regular ? "R" : "N");
}

}  // namespace

VerifyResult verify_table(const std::filesystem::path& dir, const Fixture& f, const TableOptions& opt) {
  namespace fs = std::filesystem;
  VerifyResult res;
  res.title = "verify-table";
  std::vector<fs::path> files;
  std::error_code ec;
  if (!dir.empty() && fs::is_directory(dir, ec))
    for (const auto& e : fs::recursive_directory_iterator(dir, ec))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  if (files.empty()) {
    res.skipped = true;
    res.skip_reason = "external data required: no isometry files under '" + dir.string() + "'";
    return res;
  }
  std::sort(files.begin(), files.end());
  const auto& model = standard_lambda();
  std::vector<FileOutcome> out(files.size());

#pragma omp parallel for schedule(dynamic) if (opt.exec == Exec::Parallel)
  for (std::size_t i = 0; i < files.size(); ++i) {
    FileOutcome& o = out[i];
    o.file = files[i].lexically_relative(dir).string();
    try {
      const IsometryFile iso = read_isometry_file(files[i]);
      o.declared_row = iso.row;
      if (!(iso.lattice == *model.lattice())) throw InputError("lattice differs from the standard model of Λ");
      const LatticeIsometry fi = make_isometry(model.lattice(), iso.matrix);
      IsometryReport r = report(model, fi, &f, Exec::Serial);
      if (o.declared_row) {
        auto it = std::find_if(f.table.begin(), f.table.end(), [&](const TableRow& t) { return t.no == *o.declared_row; });
        if (it == f.table.end()) {
          o.problems.push_back("declared row " + std::to_string(*o.declared_row) + " is not in the table");
        } else {
          o.problems = row_mismatches(r, *it);
          if (o.problems.empty()) o.matched_row = it->no;
        }
      } else {
        o.matched_row = r.fixture_row;
        if (!o.matched_row) o.problems.push_back("no table row matches " + fingerprint(r));
      }
      if (!r.symplectic) o.problems.push_back("not symplectic (" + r.type_letter + ")");
      o.report = std::move(r);
    } catch (const std::exception& e) {
      o.problems.push_back(e.what());
    }
  }

  std::sort(out.begin(), out.end(), [](const FileOutcome& a, const FileOutcome& b) {
    const int ra = a.matched_row.value_or(a.declared_row.value_or(1000));
    const int rb = b.matched_row.value_or(b.declared_row.value_or(1000));
    return ra != rb ? ra < rb : a.file < b.file;
  });

  Json files_json = Json::array();
  std::set<int> rows;
  std::map<std::string, std::string> by_inv;
  bool unique = true;
  for (const auto& o : out) {
    std::string detail;
    if (o.matched_row) detail = "row " + std::to_string(*o.matched_row);
    for (const auto& p : o.problems) detail += (detail.empty() ? "" : "; ") + p;
    res.add(o.file, o.problems.empty() && o.matched_row.has_value(), detail);
    Json j{{"file", o.file}, {"row", o.matched_row ? Json(*o.matched_row) : Json(nullptr)}};
    if (o.report) {
      j["report"] = report_to_json(*o.report);
      if (o.report->symplectic) {
        const std::string key = render(o.report->inv_genus), fp = fingerprint(*o.report);
        auto [it, fresh] = by_inv.emplace(key, fp);
        if (!fresh && it->second != fp) unique = false;
      }
    }
    if (!o.problems.empty()) j["problems"] = o.problems;
    files_json.push_back(j);
    if (o.matched_row) rows.insert(*o.matched_row);
  }
  res.data["files"] = files_json;

  int regular = 0;
  for (int r : rows)
    for (const auto& t : f.table)
      if (t.no == r && t.regular) ++regular;
  res.data["rows_matched"] = rows.size();
  res.data["regular_rows"] = regular;
  if (!opt.allow_partial) {
    res.add("all 32 classes represented", rows.size() == 32, std::to_string(rows.size()) + "/32");
    res.add("21 regular and 11 non-regular classes", regular == 21 && rows.size() - regular == 11,
            std::to_string(regular) + " regular");
  }
  res.add("equal invariant genus implies equal fingerprint", unique);
  return res;
}

}  // namespace nklat
