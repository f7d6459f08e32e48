#include "nklat/numeric.hpp"

#include <cctype>

namespace nklat {

Rat parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InputError("empty rational literal");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw InputError("bad rational literal '" + s + "'");
    return Rat(Int(strip_plus(s)));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-') {
    throw InputError("bad rational literal '" + s + "'");
  }
  Int d(strip_plus(den));
  if (d == 0) throw InputError("zero denominator in '" + s + "'");
  return make_rat(Int(strip_plus(num)), d);
}

std::string to_string(const Rat& r) { return r.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

int valuation(const Int& x, const Int& p) {
  if (x == 0) throw DomainError("valuation of zero");
  Int t = x;
  int v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    t /= p;
    ++v;
  }
  return v;
}

int valuation(const Rat& x, const Int& p) {
  if (x == 0) throw DomainError("valuation of zero");
  return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

Rat unit_part(const Rat& x, const Int& p) {
  Int num = x.get_num();
  Int den = x.get_den();
  while (num != 0 && mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) num /= p;
  while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) den /= p;
  return make_rat(num, den);
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::vector<Int> prime_divisors(Int n) {
  if (n < 0) n = -n;
  std::vector<Int> out;
  if (n == 0) return out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int legendre(const Rat& u, const Int& p) {
  Int a = Int(u.get_num()) * Int(u.get_den());
  Int r = a % p;
  if (r < 0) r += p;
  if (r == 0) throw DomainError("legendre symbol of a non-unit");
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

int mod8(const Rat& u) {
  // For odd b, b^-1 = b mod 8.
  Int a = Int(u.get_num()) * Int(u.get_den());
  if (mpz_even_p(a.get_mpz_t())) throw DomainError("mod8 of a non-unit");
  Int r = a % 8;
  if (r < 0) r += 8;
  return static_cast<int>(r.get_si());
}

int kronecker2(const Rat& u) {
  const int r = mod8(u);
  return (r == 1 || r == 7) ? 1 : -1;
}

Int floor_sqrt(const Int& n) {
  if (n < 0) throw DomainError("square root of a negative number");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int floor_div(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int ceil_div(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

int sign(const Rat& x) { return sgn(x); }

}  // namespace nklat
