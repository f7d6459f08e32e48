#include "nklat/lattice_io.hpp"

#include <fstream>

#include "nklat/lattice_expr.hpp"

namespace nklat {

namespace {

Rat rat_from_json(const Json& v) {
  if (v.is_number_integer()) return Rat(Int(std::to_string(v.get<long long>())));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InputError("expected a rational (integer or \"p/q\" string), got " + v.dump());
}

Int int_from_json(const Json& v) {
  if (v.is_number_integer()) return Int(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    Rat r = parse_rational(v.get<std::string>());
    if (r.get_den() != 1) throw InputError("expected an integer, got " + v.dump());
    return r.get_num();
  }
  throw InputError("expected an integer, got " + v.dump());
}

}  // namespace

Json lattice_to_json(const Lattice& l) {
  Json gram = Json::array();
  for (std::size_t i = 0; i < l.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < l.rank(); ++j) row.push_back(to_string(l.gram()(i, j)));
    gram.push_back(row);
  }
  Json j = {{"name", l.name()}, {"gram", gram}};
  if (!l.blocks().empty()) {
    Json blocks = Json::array();
    for (const auto& b : l.blocks()) blocks.push_back({{"name", b.name}, {"offset", b.offset}, {"size", b.size}});
    j["blocks"] = blocks;
  }
  return j;
}

Lattice lattice_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("gram")) throw InputError("lattice object needs a \"gram\" field");
  const Json& g = j["gram"];
  if (!g.is_array() || g.empty()) throw InputError("\"gram\" must be a non-empty array of rows");
  const std::size_t n = g.size();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g[i].is_array() || g[i].size() != n) throw InputError("\"gram\" must be square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = rat_from_json(g[i][k]);
  }
  std::vector<BlockSpan> blocks;
  if (j.contains("blocks")) {
    for (const auto& b : j["blocks"]) {
      BlockSpan s{b.value("name", std::string{}), b.at("offset").get<std::size_t>(), b.at("size").get<std::size_t>()};
      if (s.offset + s.size > n) throw InputError("block '" + s.name + "' exceeds the lattice rank");
      blocks.push_back(s);
    }
  }
  return Lattice(m, j.value("name", std::string{}), blocks);
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InputError("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = int_from_json(j[i][k]);
  }
  return m;
}

Json int_matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const Int& x = m(i, k);
      if (x.fits_slong_p())
        row.push_back(x.get_si());
      else
        row.push_back(x.get_str());
    }
    out.push_back(row);
  }
  return out;
}

IsometryFile isometry_file_from_json(const Json& j, std::string source) {
  if (!j.is_object()) throw InputError("isometry file must be a JSON object");
  if (!j.contains("matrix")) throw InputError("isometry file needs a \"matrix\" field");
  const Json lat = j.value("lattice", Json("Lambda"));
  Lattice l = lat.is_string() ? build_named(lat.get<std::string>()) : lattice_from_json(lat);
  IntMatrix m = int_matrix_from_json(j["matrix"]);
  const std::string conv = j.value("convention", std::string("column"));
  if (conv == "row")
    m = m.transpose();
  else if (conv != "column")
    throw InputError("unknown matrix convention '" + conv + "'");
  if (m.rows() != l.rank() || m.cols() != l.rank()) throw InputError("matrix size does not match lattice rank");
  std::optional<int> row;
  if (j.contains("row") && !j["row"].is_null()) row = j["row"].get<int>();
  return {std::move(l), std::move(m), row, std::move(source)};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

IsometryFile read_isometry_file(const std::filesystem::path& path) {
  try {
    return isometry_file_from_json(read_json_file(path), path.string());
  } catch (const Json::exception& e) {
    throw InputError("bad isometry file '" + path.string() + "': " + e.what());
  }
}

Json isometry_file_to_json(const IsometryFile& f) {
  Json j = {{"lattice", f.lattice.name() == "Lambda" ? Json("Lambda") : lattice_to_json(f.lattice)},
            {"matrix", int_matrix_to_json(f.matrix)}};
  if (f.row) j["row"] = *f.row;
  return j;
}

Lattice lattice_from_file_or_expr(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    try {
      return lattice_from_json(read_json_file(arg));
    } catch (const Json::exception& e) {
      throw InputError("bad lattice file '" + arg + "': " + e.what());
    }
  }
  return build_named(arg);
}

}  // namespace nklat
