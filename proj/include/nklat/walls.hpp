#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nklat/enumerate.hpp"
#include "nklat/lambda_model.hpp"

namespace nklat {

enum class WallClass { PEX2, PEX4, WALL6, WALL12 };

std::string to_string(WallClass c);
bool is_pex(WallClass c);

struct WallWitness {
  IntVector vector;  // coordinates in the standard model of Lambda
  Int square;
  Int divisibility;
  WallClass wclass;
  friend bool operator==(const WallWitness&, const WallWitness&) = default;
};

// PEX2: x^2 = -2, div 1.  PEX4: x^2 = -4, div 2.  WALL6: x^2 = -6, div 2.
// WALL12: x^2 = -12, div 2, and the six U(2)^3 coordinates of x all even.
std::optional<WallWitness> wall_class(const StandardLambdaModel& model, const IntVector& x);

// Witnesses in the sublattice spanned by the rows of `basis` (Lambda
// coordinates); DomainError if that sublattice is not negative definite.
std::vector<WallWitness> sublattice_wall_scan(const StandardLambdaModel& model, const IntMatrix& basis, bool pex_only,
                                              Exec exec = Exec::Parallel);

}  // namespace nklat
