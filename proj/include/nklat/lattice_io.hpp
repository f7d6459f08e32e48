#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "nklat/lattice.hpp"

namespace nklat {

using Json = nlohmann::json;

// {"name": ..., "gram": [["p/q", ...], ...], "blocks": [{"name","offset","size"}]}
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

// Matrix entries may be JSON integers or decimal strings.
IntMatrix int_matrix_from_json(const Json& j);
Json int_matrix_to_json(const IntMatrix& m);

// Isometry file: {"lattice": "Lambda" | <lattice expression> | <lattice object>,
//                 "matrix": [[int]], "convention": "column" | "row", "row": k}.
// With the row convention the file stores the transpose (x -> x M acting on
// row vectors); it is converted to the column convention f(x) = M x here.
struct IsometryFile {
  Lattice lattice;
  IntMatrix matrix;
  std::optional<int> row;
  std::string source;
};
IsometryFile isometry_file_from_json(const Json& j, std::string source = {});
IsometryFile read_isometry_file(const std::filesystem::path& path);
Json isometry_file_to_json(const IsometryFile& f);

Json read_json_file(const std::filesystem::path& path);

// Lattice from a path to a lattice JSON file, or else a lattice expression.
Lattice lattice_from_file_or_expr(const std::string& arg);

}  // namespace nklat
