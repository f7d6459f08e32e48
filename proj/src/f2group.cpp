#include "nklat/f2group.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include <omp.h>

#include "nklat/numeric.hpp"

namespace nklat {

F2Map F2Map::identity(int dim) {
  if (dim < 0 || dim > 32) throw InputError("F2Map dimension must be in 0..32");
  F2Map m;
  m.dim = dim;
  for (int j = 0; j < dim; ++j) m.col[j] = 1u << j;
  return m;
}

bool F2Map::is_identity() const {
  for (int j = 0; j < dim; ++j)
    if (col[j] != (1u << j)) return false;
  return true;
}

namespace {

// Row-reduces [cols | identity]; returns false when singular.
bool invert(const F2Map& m, F2Map* out) {
  std::array<std::uint32_t, 32> a = m.col;
  F2Map inv = F2Map::identity(m.dim);
  // Work on columns: find c with a[c] having bit r, eliminate bit r elsewhere.
  for (int r = 0; r < m.dim; ++r) {
    int piv = -1;
    for (int c = r; c < m.dim; ++c)
      if (a[c] >> r & 1u) {
        piv = c;
        break;
      }
    if (piv < 0) return false;
    std::swap(a[r], a[piv]);
    std::swap(inv.col[r], inv.col[piv]);
    for (int c = 0; c < m.dim; ++c)
      if (c != r && (a[c] >> r & 1u)) {
        a[c] ^= a[r];
        inv.col[c] ^= inv.col[r];
      }
  }
  // Column operations turned m into the identity: m * inv_ops = I, and inv
  // tracked inv_ops applied to I, so inv is the inverse of m.
  if (out) *out = inv;
  return true;
}

}  // namespace

bool F2Map::invertible() const { return invert(*this, nullptr); }

F2Map F2Map::inverse() const {
  F2Map out;
  if (!invert(*this, &out)) throw DomainError("F2 map is singular");
  return out;
}

int F2Map::order() const {
  if (!invertible()) throw DomainError("F2 map is singular");
  F2Map p = *this;
  for (int k = 1;; ++k) {
    if (p.is_identity()) return k;
    p = p * *this;
    if (k > (1 << 20)) throw DomainError("F2 map order exceeds cap");
  }
}

std::size_t F2Map::hash() const {
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(dim);
  for (int j = 0; j < dim; ++j) {
    h ^= col[j];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

FiniteIsometryGroup::FiniteIsometryGroup(int dim, std::vector<F2Map> generators, Mode mode)
    : dim_(dim), gens_(std::move(generators)) {
  if (dim < 0 || dim > 32) throw InputError("group dimension must be in 0..32");
  for (const auto& g : gens_) {
    if (g.dim != dim) throw InputError("generator dimension mismatch");
    if (!g.invertible()) throw InputError("generator is not invertible");
  }
  schreier_sims(mode);
}

void FiniteIsometryGroup::rebuild(std::size_t level) {
  Level& lv = levels_[level];
  lv.orbit.assign(1, lv.base);
  lv.index.clear();
  lv.index[lv.base] = 0;
  lv.transversal.assign(1, F2Map::identity(dim_));
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    for (const auto& s : lv.strong) {
      const std::uint32_t img = s(lv.orbit[k]);
      if (lv.index.count(img)) continue;
      lv.index[img] = static_cast<int>(lv.orbit.size());
      lv.orbit.push_back(img);
      lv.transversal.push_back(s * lv.transversal[k]);
    }
  }
  lv.transversal_inv.clear();
  lv.transversal_inv.reserve(lv.transversal.size());
  for (const auto& t : lv.transversal) lv.transversal_inv.push_back(t.inverse());
}

std::pair<F2Map, std::size_t> FiniteIsometryGroup::strip(F2Map g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    auto it = lv.index.find(g(lv.base));
    if (it == lv.index.end()) return {g, i};
    g = lv.transversal_inv[static_cast<std::size_t>(it->second)] * g;
  }
  return {g, levels_.size()};
}

bool FiniteIsometryGroup::first_failure(std::size_t level, Mode mode, F2Map& residue, std::size_t& drop) const {
  const Level& lv = levels_[level];
  const std::size_t ns = lv.strong.size();
  const std::size_t total = lv.orbit.size() * ns;
  auto candidate = [&](std::size_t idx) {
    const std::size_t k = idx / ns;
    const F2Map& s = lv.strong[idx % ns];
    const int to = lv.index.at(s(lv.orbit[k]));
    F2Map h = lv.transversal_inv[static_cast<std::size_t>(to)] * s * lv.transversal[k];
    return strip(h, level + 1);
  };
  if (mode == Mode::Serial) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      auto [r, j] = candidate(idx);
      if (j < levels_.size()) {
        residue = r;
        drop = j;
        return true;
      }
    }
    return false;
  }
  // Chunked parallel sift; the smallest failing index wins, so the result
  // equals the serial one.
  const std::size_t chunk = 1024;
  for (std::size_t lo = 0; lo < total; lo += chunk) {
    const std::size_t hi = std::min(total, lo + chunk);
    std::size_t best = std::numeric_limits<std::size_t>::max();
#pragma omp parallel for schedule(static) reduction(min : best)
    for (std::size_t idx = lo; idx < hi; ++idx) {
      if (candidate(idx).second < levels_.size()) best = std::min(best, idx);
    }
    if (best != std::numeric_limits<std::size_t>::max()) {
      auto [r, j] = candidate(best);
      residue = r;
      drop = j;
      return true;
    }
  }
  return false;
}

void FiniteIsometryGroup::schreier_sims(Mode mode) {
  levels_.assign(static_cast<std::size_t>(dim_), Level{});
  for (int i = 0; i < dim_; ++i) levels_[i].base = 1u << i;
  for (const auto& g : gens_) {
    if (g.is_identity()) continue;
    for (int i = 0; i < dim_; ++i) {
      levels_[i].strong.push_back(g);
      if (g(levels_[i].base) != levels_[i].base) break;
    }
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) rebuild(i);

  long i = static_cast<long>(dim_) - 1;
  while (i >= 0) {
    F2Map residue;
    std::size_t drop = 0;
    if (!first_failure(static_cast<std::size_t>(i), mode, residue, drop)) {
      --i;
      continue;
    }
    for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= drop; ++l) {
      levels_[l].strong.push_back(residue);
      rebuild(l);
    }
    i = static_cast<long>(drop);
  }
}

std::uint64_t FiniteIsometryGroup::order() const {
  std::uint64_t n = 1;
  for (const auto& lv : levels_) n *= lv.orbit.size();
  return n;
}

std::vector<std::size_t> FiniteIsometryGroup::orbit_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& lv : levels_) out.push_back(lv.orbit.size());
  return out;
}

bool FiniteIsometryGroup::contains(const F2Map& g) const {
  if (g.dim != dim_) return false;
  auto [r, j] = strip(g, 0);
  return j == levels_.size() && r.is_identity();
}

std::vector<std::vector<std::uint32_t>> FiniteIsometryGroup::orbits(const std::vector<std::uint32_t>& points) const {
  std::vector<std::uint32_t> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::unordered_set<std::uint32_t> seen;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t p : sorted) {
    if (seen.count(p)) continue;
    std::vector<std::uint32_t> orb{p};
    seen.insert(p);
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (const auto& g : gens_) {
        const std::uint32_t y = g(orb[k]);
        if (seen.insert(y).second) orb.push_back(y);
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool FiniteIsometryGroup::is_central(const F2Map& g) const {
  if (!contains(g)) return false;
  return std::all_of(gens_.begin(), gens_.end(), [&](const F2Map& s) { return s * g == g * s; });
}

std::uint64_t closure_order(int dim, const std::vector<F2Map>& gens, std::uint64_t cap) {
  std::unordered_set<F2Map, F2MapHash> seen;
  std::vector<F2Map> frontier{F2Map::identity(dim)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<F2Map> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        F2Map y = g * x;
        if (seen.insert(y).second) {
          if (seen.size() > cap) return 0;
          next.push_back(y);
        }
      }
    frontier.swap(next);
  }
  return seen.size();
}

}  // namespace nklat
