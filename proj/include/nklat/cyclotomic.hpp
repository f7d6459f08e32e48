#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nklat/matrix.hpp"

namespace nklat {

// Polynomials are coefficient vectors, lowest degree first, no trailing zeros.
using IntPoly = std::vector<Int>;
using RatPoly = std::vector<Rat>;

IntPoly cyclotomic_polynomial(unsigned n);
// Exact division; nullopt when b does not divide a over Z.
std::optional<IntPoly> poly_exact_div(const IntPoly& a, const IntPoly& b);

// Indices n (with multiplicity, ascending) such that prod Phi_n = f, or
// nullopt if f is not a product of cyclotomic polynomials.
std::optional<std::vector<unsigned>> cyclotomic_factors(const IntPoly& f);

Rat poly_eval(const RatPoly& f, const Rat& x);
RatMatrix poly_eval(const RatPoly& f, const RatMatrix& m);
IntMatrix poly_eval(const IntPoly& f, const IntMatrix& m);

// Minimal polynomial psi_p of 2cos(2 pi / p) for p in {2, 3, 5, 7}, with its
// real roots c_j = 2cos(2 pi j / p), j = 1..deg, isolated in disjoint rational
// intervals verified by exact sign changes.
struct RealSubfield {
  unsigned p = 0;
  RatPoly psi;
  std::vector<std::pair<Rat, Rat>> intervals;  // intervals[j-1] contains c_j
  // indicator[j-1] is positive at c_j and negative at every other root
  std::vector<RatPoly> indicator;
};
RealSubfield real_subfield(unsigned p);

}  // namespace nklat
