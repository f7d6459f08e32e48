#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nklat/lattice.hpp"

namespace nklat {

// Jordan constituent at scale p^scale. `odd` is the type (I when true) and
// `oddity` is the trace mod 8 of its diagonalized unit part; both only carry
// meaning at p = 2.
struct JordanBlock {
  int scale = 0;
  int rank = 0;
  int sign = 1;
  bool odd = false;
  int oddity = 0;
  friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

struct LocalSymbol {
  Int prime;
  std::vector<JordanBlock> blocks;  // ascending scale, all ranks positive
  friend bool operator==(const LocalSymbol&, const LocalSymbol&) = default;
};

// Signature plus local symbols at 2 and at every odd prime dividing det.
struct GenusSymbol {
  Signature signature;
  std::vector<LocalSymbol> locals;  // ascending primes, 2 always present
  friend bool operator==(const GenusSymbol&, const GenusSymbol&) = default;

  int rank() const { return signature.plus + signature.minus; }
  const LocalSymbol* local(const Int& p) const;
};

// Jordan splitting over Z_p (integral lattices).
std::vector<JordanBlock> padic_jordan(const Lattice& l, const Int& p);

// Oddity fusion and sign walking on a 2-adic symbol. Idempotent.
std::vector<JordanBlock> canonicalize_2adic(std::vector<JordanBlock> blocks);
GenusSymbol canonical(GenusSymbol g);

// Symbol from the Jordan splittings as found, without canonical reduction.
GenusSymbol raw_genus_symbol(const Lattice& l);
// Canonical symbol; requires an even lattice.
GenusSymbol genus_symbol(const Lattice& l);

// "II_(p,q)" then, per prime and scale, "s^r", "s^{-r}" and "_t" for odd
// 2-adic constituents. Unimodular constituents are implied and omitted.
std::string render(const GenusSymbol& g);
// Per-prime listing of every constituent, including unimodular ones.
std::string render_blocks(const GenusSymbol& g);

// Parses the rendered notation. Accepts "II_{(3,13)}", spaces, braces around
// ranks and oddities, and an oddity written before the rank ("2_2^2").
// Unimodular constituents are reconstructed from the rank and determinant.
// Throws InputError with the failing position.
GenusSymbol parse_genus(std::string_view text);

bool genus_equal(const GenusSymbol& a, const GenusSymbol& b);

// p_plus - p_minus == oddity - sum of p-excesses (mod 8).
bool oddity_formula_holds(const GenusSymbol& g);

// Absolute determinant implied by the symbol.
Int symbol_determinant(const GenusSymbol& g);

}  // namespace nklat
