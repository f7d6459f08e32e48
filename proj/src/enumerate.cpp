#include "nklat/enumerate.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace nklat {

namespace {

struct Cholesky {
  std::size_t n = 0;
  RatMatrix q;  // q(i,i) diagonal weights, q(i,j) for j > i the mu coefficients
};

Cholesky decompose(const RatMatrix& a) {
  Cholesky c;
  c.n = a.rows();
  c.q = a;
  RatMatrix& q = c.q;
  for (std::size_t i = 0; i < c.n; ++i) {
    if (q(i, i) <= 0) throw DomainError("lattice is not negative definite");
    for (std::size_t j = i + 1; j < c.n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) = q(i, j) / q(i, i);
    }
    for (std::size_t k = i + 1; k < c.n; ++k)
      for (std::size_t l = k; l < c.n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  return c;
}

// Largest integer h with h <= center + sqrt(r), r >= 0.
Int upper(const Rat& center, const Rat& r) {
  auto ok = [&](const Int& h) {
    Rat d = Rat(h) - center;
    return d <= 0 || d * d <= r;
  };
  Int h(static_cast<long>(std::floor(center.get_d() + std::sqrt(r.get_d()))));
  while (!ok(h)) --h;
  while (ok(h + 1)) ++h;
  return h;
}

// Smallest integer l with l >= center - sqrt(r).
Int lower(const Rat& center, const Rat& r) { return -upper(-center, r); }

bool canonical_sign(const IntVector& x) {
  for (const auto& c : x)
    if (c != 0) return c > 0;
  return false;
}

class Enumerator {
 public:
  Enumerator(const Cholesky& c, const Rat& bound) : c_(c), bound_(bound), x_(c.n, Int(0)) {}

  // Enumerate with x_{n-1} fixed to `top`.
  void run_top(const Int& top, std::vector<ShortVector>& out) {
    const std::size_t i = c_.n - 1;
    x_[i] = top;
    Rat d = Rat(top);
    Rat t = bound_ - c_.q(i, i) * d * d;
    if (t < 0) return;
    recurse(i, t, out);
  }

  std::pair<Int, Int> top_range() const {
    const std::size_t i = c_.n - 1;
    const Rat r = bound_ / c_.q(i, i);
    return {lower(Rat(0), r), upper(Rat(0), r)};
  }

 private:
  // x_i .. x_{n-1} are set; t is the remaining budget.
  void recurse(std::size_t i, const Rat& t, std::vector<ShortVector>& out) {
    if (i == 0) {
      const Rat norm = bound_ - t;
      if (norm == 0) return;
      if (!canonical_sign(x_)) return;
      if (norm.get_den() != 1) throw DomainError("non-integral norm in enumeration");
      out.push_back({x_, norm.get_num()});
      return;
    }
    const std::size_t k = i - 1;
    Rat center = 0;
    for (std::size_t j = k + 1; j < c_.n; ++j)
      if (x_[j] != 0) center -= c_.q(k, j) * Rat(x_[j]);
    const Rat r = t / c_.q(k, k);
    const Int lo = lower(center, r), hi = upper(center, r);
    for (Int v = lo; v <= hi; ++v) {
      x_[k] = v;
      Rat d = Rat(v) - center;
      recurse(k, t - c_.q(k, k) * d * d, out);
    }
    x_[k] = 0;
  }

  const Cholesky& c_;
  Rat bound_;
  IntVector x_;
};

void sort_results(std::vector<ShortVector>& v) {
  std::sort(v.begin(), v.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coords < b.coords;
  });
}

}  // namespace

std::vector<ShortVector> short_vectors_upto(const Lattice& l, const Int& bound, Exec exec) {
  if (!l.integral()) throw DomainError("enumeration needs an integral lattice");
  if (bound <= 0) throw InputError("enumeration bound must be positive");
  const Cholesky c = decompose(-l.gram());
  const Rat b(bound);
  Enumerator probe(c, b);
  const auto [lo, hi] = probe.top_range();
  const long nlo = lo.get_si(), nhi = hi.get_si();
  const long count = nhi - nlo + 1;
  std::vector<std::vector<ShortVector>> buckets(static_cast<std::size_t>(std::max(0L, count)));

  if (exec == Exec::Serial) {
    Enumerator e(c, b);
    for (long v = nlo; v <= nhi; ++v) e.run_top(Int(v), buckets[static_cast<std::size_t>(v - nlo)]);
  } else {
#pragma omp parallel
    {
      Enumerator e(c, b);
#pragma omp for schedule(dynamic, 1)
      for (long v = nlo; v <= nhi; ++v) e.run_top(Int(v), buckets[static_cast<std::size_t>(v - nlo)]);
    }
  }
  std::vector<ShortVector> out;
  for (auto& bk : buckets) out.insert(out.end(), std::make_move_iterator(bk.begin()), std::make_move_iterator(bk.end()));
  sort_results(out);
  return out;
}

std::vector<IntVector> short_vectors(const Lattice& l, const Int& n, Exec exec) {
  if (n >= 0) throw InputError("short_vectors needs a negative square");
  std::vector<IntVector> out;
  for (auto& sv : short_vectors_upto(l, -n, exec))
    if (sv.norm == -n) out.push_back(std::move(sv.coords));
  return out;
}

std::vector<ShortVector> short_vectors_box(const Lattice& l, const Int& bound) {
  if (!l.integral()) throw DomainError("enumeration needs an integral lattice");
  const RatMatrix a = -l.gram();
  decompose(a);  // definiteness check
  const RatMatrix inv = inverse(a);
  const std::size_t n = l.rank();
  std::vector<Int> radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat r = Rat(bound) * inv(i, i);
    radius[i] = floor_sqrt(floor_div(r));
  }
  std::vector<ShortVector> out;
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -radius[i];
  for (;;) {
    Rat norm = bilinear(a, x, x);
    if (norm > 0 && norm <= Rat(bound) && canonical_sign(x)) out.push_back({x, norm.get_num()});
    std::size_t i = 0;
    while (i < n) {
      if (x[i] < radius[i]) {
        ++x[i];
        break;
      }
      x[i] = -radius[i];
      ++i;
    }
    if (i == n) break;
  }
  sort_results(out);
  return out;
}

}  // namespace nklat
