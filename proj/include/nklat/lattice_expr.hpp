#pragma once

#include <string_view>

#include "nklat/lattice.hpp"

namespace nklat {

// Root lattices follow the negative definite convention: gram = -Cartan.
// Node order is Bourbaki's; for E8 the chain is 1-3-4-5-6-7-8 with 2 attached to 4.
Lattice root_lattice_A(int n);
Lattice root_lattice_D(int n);
Lattice root_lattice_E(int n);
Lattice hyperbolic_plane();              // U = [[0,1],[1,0]]
Lattice odd_plane_V();                   // V = [[0,1],[1,1]]
Lattice lattice_K(int p);                // K_p = [[(p+1)/2,-1],[-1,2]]
Lattice lattice_H(int p);                // H_p = [[(p-1)/2,1],[1,-2]]

// Builds a lattice from an expression. Grammar:
//
//   expr    := summand ('+' summand)*
//   summand := primary postfix*
//   postfix := '(' integer ')'        rescale the Gram matrix
//            | '^' integer            orthogonal power
//   primary := U | V | A<n> | D<n> | E6 | E7 | E8 | K<p> | H<p> | Lambda
//            | rescale '(' expr ',' rational ')'
//            | dual_rescale '(' expr ',' rational ')'
//            | dual '(' expr ')'
//            | direct_sum '(' expr (',' expr)* ')'
//            | '(' expr ')'
//
// '(+)', '⊕' and the LaTeX-ish forms "U^{⊕3}", "A_1", "D_8" are accepted as
// aliases. Throws InputError with the failing position on malformed input.
Lattice build_named(std::string_view expr);

}  // namespace nklat
