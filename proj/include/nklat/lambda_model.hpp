#pragma once

#include <string_view>

#include "nklat/lattice.hpp"

namespace nklat {

// Fixed model of Lambda = U(2)^3 + E8 + A1^2.
//
// Basis (0-based): 0..5 are the pairs (e_k, f_k) of the three U(2) blocks,
// 6..13 the E8 simple roots in Bourbaki order, 14 = halfsum, 15 = halfdiff.
//
//   L_i      = e_1 + i f_1             (square 4i, primitive)
//   e1^(1)   = alpha_1                 (square -2)
//   e2^(1)   = alpha_1 + alpha_2       (alpha_1 . alpha_2 = 0, square -4)
//   delta'   = halfsum + halfdiff,  Sigma' = halfsum - halfdiff
class StandardLambdaModel {
 public:
  static constexpr std::size_t kRank = 16;
  static constexpr std::size_t kU2Begin = 0, kU2Size = 6;
  static constexpr std::size_t kE8Begin = 6, kE8Size = 8;
  static constexpr std::size_t kHalfsum = 14, kHalfdiff = 15;

  StandardLambdaModel();

  const LatticePtr& lattice() const { return lambda_; }
  LatticeVector basis(std::size_t i) const;

  LatticeVector delta_prime() const;
  LatticeVector sigma_prime() const;
  LatticeVector halfsum() const { return basis(kHalfsum); }
  LatticeVector halfdiff() const { return basis(kHalfdiff); }
  LatticeVector L(long i) const;
  LatticeVector e1() const;
  LatticeVector e2() const;
  // E8 simple root alpha_k, k = 1..8.
  LatticeVector alpha(int k) const;

  // Integer combination of named vectors, e.g. "2L(1) + 2e2 - delta'".
  // Names: delta', Sigma', halfsum, halfdiff, e1, e2, L(i) / L_{i} / L<digits>,
  // alpha<k>, b<k> (k-th standard basis vector). Coefficients may be written
  // "3*x" or "3x". Throws InputError.
  LatticeVector evaluate(std::string_view expr) const;

 private:
  LatticePtr lambda_;
};

const StandardLambdaModel& standard_lambda();

}  // namespace nklat
