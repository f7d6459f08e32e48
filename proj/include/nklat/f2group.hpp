#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace nklat {

// Linear map of F_2^dim (dim <= 32); vectors are bitmasks, col[j] is the
// image of the j-th basis vector.
struct F2Map {
  int dim = 0;
  std::array<std::uint32_t, 32> col{};

  static F2Map identity(int dim);

  std::uint32_t operator()(std::uint32_t x) const {
    std::uint32_t y = 0;
    for (int j = 0; x; ++j, x >>= 1)
      if (x & 1u) y ^= col[j];
    return y;
  }
  // (a * b)(x) = a(b(x))
  friend F2Map operator*(const F2Map& a, const F2Map& b) {
    F2Map c;
    c.dim = a.dim;
    for (int j = 0; j < a.dim; ++j) c.col[j] = a(b.col[j]);
    return c;
  }
  friend bool operator==(const F2Map& a, const F2Map& b) {
    if (a.dim != b.dim) return false;
    for (int j = 0; j < a.dim; ++j)
      if (a.col[j] != b.col[j]) return false;
    return true;
  }
  bool is_identity() const;
  bool invertible() const;
  F2Map inverse() const;
  int order() const;
  std::size_t hash() const;
};

struct F2MapHash {
  std::size_t operator()(const F2Map& m) const { return m.hash(); }
};

// Permutation group of F_2^dim given by invertible linear generators, with a
// stabilizer chain over the base e_0, ..., e_{dim-1} (a linear map fixing every
// basis vector is the identity, so the base is complete).
class FiniteIsometryGroup {
 public:
  enum class Mode { Serial, Parallel };

  FiniteIsometryGroup(int dim, std::vector<F2Map> generators, Mode mode = Mode::Parallel);

  int dim() const { return dim_; }
  const std::vector<F2Map>& generators() const { return gens_; }
  std::uint64_t order() const;
  std::vector<std::size_t> orbit_sizes() const;
  bool contains(const F2Map& g) const;
  // Orbits of the group on `points` (assumed invariant); each orbit sorted,
  // orbits sorted by their smallest element.
  std::vector<std::vector<std::uint32_t>> orbits(const std::vector<std::uint32_t>& points) const;
  bool is_central(const F2Map& g) const;

 private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<F2Map> strong;
    std::vector<std::uint32_t> orbit;  // orbit[0] == base
    std::unordered_map<std::uint32_t, int> index;  // point -> position in orbit
    std::vector<F2Map> transversal;  // transversal[k](base) == orbit[k]
    std::vector<F2Map> transversal_inv;
  };

  void rebuild(std::size_t level);
  // Sifts g through levels [from, dim); returns the residue and the level at
  // which it dropped out (dim when it sifted to the end).
  std::pair<F2Map, std::size_t> strip(F2Map g, std::size_t from) const;
  void schreier_sims(Mode mode);
  // First Schreier generator of `level` (in a fixed order) that does not sift.
  bool first_failure(std::size_t level, Mode mode, F2Map& residue, std::size_t& drop) const;

  int dim_;
  std::vector<F2Map> gens_;
  std::vector<Level> levels_;
};

// Size of the group generated by `gens`, by breadth-first closure over whole
// maps. Exponential in practice; a test oracle only. Returns 0 if the closure
// exceeds `cap`.
std::uint64_t closure_order(int dim, const std::vector<F2Map>& gens, std::uint64_t cap);

}  // namespace nklat
