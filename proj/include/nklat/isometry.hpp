#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nklat/discform.hpp"
#include "nklat/genus.hpp"
#include "nklat/lambda_model.hpp"
#include "nklat/walls.hpp"

namespace nklat {

// f(x) = M x on coordinate columns, with M^T G M = G and det M = +-1.
struct LatticeIsometry {
  LatticePtr lattice;
  IntMatrix matrix;
};

LatticeIsometry make_isometry(LatticePtr l, IntMatrix m);
LatticeIsometry identity_isometry(LatticePtr l);
// R_v(x) = x - 2 (x.v / v.v) v; DomainError if not integral.
LatticeIsometry reflection(LatticePtr l, const IntVector& v);

LatticeIsometry compose(const LatticeIsometry& f, const LatticeIsometry& g);  // f o g
LatticeIsometry inverse(const LatticeIsometry& f);
LatticeIsometry conjugate(const LatticeIsometry& f, const LatticeIsometry& g);  // g f g^-1
IntVector apply(const LatticeIsometry& f, const IntVector& x);

// Multiplicative order via the cyclotomic factorization of the characteristic
// polynomial; DomainError when infinite or above `cap`.
unsigned long order_of(const LatticeIsometry& f, unsigned long cap = 1000000);

struct InvariantCoinvariant {
  Sublattice invariant;    // ker(f - id), saturated
  Sublattice coinvariant;  // its orthogonal complement
};
InvariantCoinvariant invariant_coinvariant(const LatticeIsometry& f);

// Real spinor norm with respect to -q from a Cartan-Dieudonne reflection
// decomposition; true means f is in O+.
bool in_O_plus(const LatticeIsometry& f);
// Reflection vectors (rational, lattice coordinates) with product f.
std::vector<RatVector> reflection_decomposition(const LatticeIsometry& f);
// Independent spinor-norm sign from the Wall form on im(1 - f).
int spinor_sign_wall(const LatticeIsometry& f);

struct SymplecticStatus {
  bool in_O_plus = false;
  bool coinv_neg_def = false;
  bool symplectic = false;
  bool regular = false;
  std::vector<WallWitness> witnesses;
};
SymplecticStatus symplectic_status(const StandardLambdaModel& model, const LatticeIsometry& f,
                                   Exec exec = Exec::Parallel);

// Order of the induced action on the discriminant group.
unsigned long disc_order(const LatticeIsometry& f);

// Exceptional: order 2 with coinvariant lattice of rank 1 and determinant -2.
bool is_exceptional(const LatticeIsometry& f);

struct PrimeCheck {
  unsigned p = 0;
  Signature invariant_signature;
  bool invariant_condition = false;      // signature of Lambda^f is (1, *)
  std::vector<Signature> eigen_signature;  // ker(f + f^-1 - 2cos(2 pi j / p)), j = 1..
  bool holds = false;                    // invariant_condition and p_plus(j = 1) == 2
};
// Requires order_of(f) == p with p in {2, 3, 5, 7}.
PrimeCheck nonsymplectic_prime_check(const LatticeIsometry& f, unsigned p);

}  // namespace nklat
