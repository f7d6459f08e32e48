#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nklat {

using Int = mpz_class;
using Rat = mpq_class;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

// Malformed user input (expressions, files, out-of-range arguments).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical precondition failed (degenerate form, odd lattice, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Rat make_rat(const Int& num, const Int& den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rational(std::string_view text);
std::string to_string(const Rat& r);
std::string to_string(const Int& z);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// Exponent of p in a nonzero rational.
int valuation(const Rat& x, const Int& p);
int valuation(const Int& x, const Int& p);

// Strips all factors of p from numerator and denominator.
Rat unit_part(const Rat& x, const Int& p);

bool is_prime(const Int& n);
std::vector<Int> prime_divisors(Int n);

// Legendre symbol of a p-adic unit rational (numerator and denominator prime to p).
int legendre(const Rat& u, const Int& p);
// Kronecker symbol (u|2) of a 2-adic unit: +1 for u = +-1 mod 8, -1 for u = +-3 mod 8.
int kronecker2(const Rat& u);
// Residue mod 8 of a 2-adic unit rational.
int mod8(const Rat& u);

Int floor_sqrt(const Int& n);
Int floor_div(const Rat& x);
Int ceil_div(const Rat& x);

int sign(const Rat& x);

}  // namespace nklat
