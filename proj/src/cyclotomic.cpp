#include "nklat/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nklat {

namespace {

template <class T>
void trim(std::vector<T>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  RatPoly c(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

unsigned euler_phi(unsigned n) {
  unsigned r = n;
  for (unsigned p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

}  // namespace

std::optional<IntPoly> poly_exact_div(const IntPoly& a_in, const IntPoly& b) {
  IntPoly a = a_in;
  trim(a);
  if (b.empty() || b.back() == 0) throw InputError("division by the zero polynomial");
  if (a.size() < b.size()) {
    if (a.empty()) return IntPoly{};
    return std::nullopt;
  }
  IntPoly q(a.size() - b.size() + 1, Int(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const Int& lead = a[k + b.size() - 1];
    if (!mpz_divisible_p(lead.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    q[k] = lead / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  return q;
}

IntPoly cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw InputError("cyclotomic index must be positive");
  IntPoly f(n + 1, Int(0));
  f[0] = -1;
  f[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) f = *poly_exact_div(f, cyclotomic_polynomial(d));
  return f;
}

std::optional<std::vector<unsigned>> cyclotomic_factors(const IntPoly& f_in) {
  IntPoly f = f_in;
  trim(f);
  if (f.empty() || f.back() != 1) return std::nullopt;
  std::vector<unsigned> out;
  const std::size_t deg = f.size() - 1;
  for (unsigned n = 1; f.size() > 1; ++n) {
    // phi(n) >= sqrt(n / 2), so indices beyond 2 deg^2 cannot occur
    if (n > 2 * deg * deg + 2) return std::nullopt;
    if (euler_phi(n) > f.size() - 1) continue;
    const IntPoly c = cyclotomic_polynomial(n);
    while (auto q = poly_exact_div(f, c)) {
      f = *q;
      out.push_back(n);
    }
  }
  return out;
}

Rat poly_eval(const RatPoly& f, const Rat& x) {
  Rat acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

RatMatrix poly_eval(const RatPoly& f, const RatMatrix& m) {
  RatMatrix acc(m.rows(), m.cols());
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * m + f[i] * RatMatrix::identity(m.rows());
  return acc;
}

IntMatrix poly_eval(const IntPoly& f, const IntMatrix& m) {
  IntMatrix acc(m.rows(), m.cols());
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * m + f[i] * IntMatrix::identity(m.rows());
  return acc;
}

RealSubfield real_subfield(unsigned p) {
  RealSubfield r;
  r.p = p;
  switch (p) {
    case 2: r.psi = {Rat(2), Rat(1)}; break;
    case 3: r.psi = {Rat(1), Rat(1)}; break;
    case 5: r.psi = {Rat(-1), Rat(1), Rat(1)}; break;
    case 7: r.psi = {Rat(-1), Rat(-2), Rat(1), Rat(1)}; break;
    default: throw InputError("real subfield data only for p in {2,3,5,7}");
  }
  const std::size_t deg = r.psi.size() - 1;
  const double pi = std::numbers::pi;
  for (std::size_t j = 1; j <= deg; ++j) {
    const double c = 2.0 * std::cos(2.0 * pi * static_cast<double>(j) / p);
    const Rat a = make_rat(Int(static_cast<long>(std::floor(c * 64.0)) - 1), 64);
    const Rat b = make_rat(Int(static_cast<long>(std::ceil(c * 64.0)) + 1), 64);
    if (sign(poly_eval(r.psi, a)) * sign(poly_eval(r.psi, b)) >= 0)
      throw DomainError("root isolation failed for psi_" + std::to_string(p));
    r.intervals.push_back({a, b});
  }
  // c_1 > c_2 > ... : intervals must be strictly decreasing and disjoint
  for (std::size_t j = 1; j < deg; ++j)
    if (!(r.intervals[j].second < r.intervals[j - 1].first)) throw DomainError("root intervals overlap");
  std::vector<Rat> sep;
  for (std::size_t j = 1; j < deg; ++j) sep.push_back((r.intervals[j - 1].first + r.intervals[j].second) / 2);
  for (std::size_t j = 0; j < deg; ++j) {
    RatPoly g{Rat(1)};
    if (j > 0) g = poly_mul(g, {sep[j - 1], Rat(-1)});  // s_{j-1} - x: positive below the separator above
    if (j + 1 < deg) g = poly_mul(g, {-sep[j], Rat(1)});  // x - s_j: positive above the separator below
    r.indicator.push_back(g);
  }
  return r;
}

}  // namespace nklat
