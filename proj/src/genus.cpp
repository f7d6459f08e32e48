#include "nklat/genus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace nklat {

const LocalSymbol* GenusSymbol::local(const Int& p) const {
  for (const auto& l : locals)
    if (l.prime == p) return &l;
  return nullptr;
}

namespace {

struct Piece {
  int scale;
  int size;     // 1 or 2
  Rat unit;     // unit part of the 1x1 entry, or of the 2x2 determinant
};

int local_character(const Rat& unit, const Int& p) { return p == 2 ? kronecker2(unit) : legendre(unit, p); }

}  // namespace

std::vector<JordanBlock> padic_jordan(const Lattice& l, const Int& p) {
  if (!is_prime(p)) throw InputError("padic_jordan: " + to_string(p) + " is not prime");
  if (!l.integral()) throw DomainError("padic_jordan needs an integral lattice");
  const std::size_t n = l.rank();
  RatMatrix a = l.gram();

  auto swap_basis = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    a.swap_cols(i, j);
  };
  auto add_basis = [&](std::size_t dst, std::size_t src, const Rat& c) {
    a.add_row(dst, src, c);
    a.add_col(dst, src, c);
  };
  auto val = [&](const Rat& x) { return valuation(x, p); };

  std::vector<Piece> pieces;
  std::size_t k = 0;
  while (k < n) {
    int vmin = 0;
    bool found = false;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (a(i, j) != 0 && (!found || val(a(i, j)) < vmin)) {
          vmin = val(a(i, j));
          found = true;
        }
    if (!found) throw DomainError("degenerate form in padic_jordan");

    std::size_t diag = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, i) != 0 && val(a(i, i)) == vmin) {
        diag = i;
        break;
      }
    if (diag < n) {
      swap_basis(k, diag);
      for (std::size_t j = k + 1; j < n; ++j)
        if (a(j, k) != 0) add_basis(j, k, -a(j, k) / a(k, k));
      pieces.push_back({vmin, 1, unit_part(a(k, k), p)});
      ++k;
      continue;
    }
    std::size_t oi = n, oj = n;
    for (std::size_t i = k; i < n && oi == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (a(i, j) != 0 && val(a(i, j)) == vmin) {
          oi = i;
          oj = j;
          break;
        }
    if (p != 2) {
      // e_i + e_j has square a_ii + 2 a_ij + a_jj of valuation vmin
      add_basis(oi, oj, Rat(1));
      continue;
    }
    swap_basis(k, oi);
    swap_basis(k + 1, oj == k ? oi : oj);
    const Rat b00 = a(k, k), b01 = a(k, k + 1), b11 = a(k + 1, k + 1);
    const Rat det = b00 * b11 - b01 * b01;
    for (std::size_t m = k + 2; m < n; ++m) {
      const Rat x = a(m, k), y = a(m, k + 1);
      if (x == 0 && y == 0) continue;
      // (c0, c1) = (x, y) B^{-1}
      const Rat c0 = (x * b11 - y * b01) / det;
      const Rat c1 = (y * b00 - x * b01) / det;
      add_basis(m, k, -c0);
      add_basis(m, k + 1, -c1);
    }
    pieces.push_back({vmin, 2, unit_part(det, p)});
    k += 2;
  }

  std::map<int, JordanBlock> by_scale;
  std::map<int, Rat> unit_det;
  for (const auto& pc : pieces) {
    JordanBlock& b = by_scale[pc.scale];
    b.scale = pc.scale;
    b.rank += pc.size;
    auto it = unit_det.find(pc.scale);
    if (it == unit_det.end())
      unit_det[pc.scale] = pc.unit;
    else
      it->second *= pc.unit;
    if (p == 2 && pc.size == 1) {
      b.odd = true;
      b.oddity = (b.oddity + mod8(pc.unit)) % 8;
    }
  }
  std::vector<JordanBlock> out;
  for (auto& [s, b] : by_scale) {
    b.sign = local_character(unit_det[s], p);
    out.push_back(b);
  }
  return out;
}

std::vector<JordanBlock> canonicalize_2adic(std::vector<JordanBlock> sym) {
  std::sort(sym.begin(), sym.end(), [](const JordanBlock& x, const JordanBlock& y) { return x.scale < y.scale; });
  sym.erase(std::remove_if(sym.begin(), sym.end(), [](const JordanBlock& b) { return b.rank == 0; }), sym.end());
  for (auto& b : sym)
    if (!b.odd) b.oddity = 0;
  const std::size_t r = sym.size();

  // compartments: maximal runs of odd constituents at consecutive scales
  std::vector<std::vector<std::size_t>> compartments;
  for (std::size_t i = 0; i < r;) {
    if (!sym[i].odd) {
      ++i;
      continue;
    }
    std::vector<std::size_t> c{i};
    int v = sym[i].scale;
    ++i;
    while (i < r && sym[i].odd && sym[i].scale == v + 1) {
      c.push_back(i);
      ++v;
      ++i;
    }
    compartments.push_back(c);
  }
  // trains: missing scales count as even zero-dimensional constituents
  std::vector<std::vector<std::size_t>> trains;
  if (r > 0) {
    std::vector<std::size_t> cur{0};
    for (std::size_t i = 1; i < r; ++i) {
      const JordanBlock& prev = sym[i - 1];
      const JordanBlock& now = sym[i];
      const int gap = now.scale - prev.scale;
      const bool split = gap > 2 || (gap == 2 && !(prev.odd && now.odd)) || (!prev.odd && !now.odd);
      if (split) {
        trains.push_back(cur);
        cur = {i};
      } else {
        cur.push_back(i);
      }
    }
    trains.push_back(cur);
  }

  for (const auto& c : compartments) {
    int total = 0;
    for (std::size_t i : c) {
      total += sym[i].oddity;
      sym[i].oddity = 0;
    }
    sym[c.front()].oddity = total % 8;
  }
  for (const auto& t : trains) {
    for (std::size_t k = t.size() - 1; k >= 1; --k) {
      const std::size_t i = t[k];
      if (sym[i].sign != -1) continue;
      sym[i].sign = 1;
      sym[i - 1].sign = -sym[i - 1].sign;
      for (const auto& c : compartments) {
        const bool touches = std::find(c.begin(), c.end(), i) != c.end() ||
                             std::find(c.begin(), c.end(), i - 1) != c.end();
        if (touches) sym[c.front()].oddity = (sym[c.front()].oddity + 4) % 8;
      }
    }
  }
  return sym;
}

GenusSymbol canonical(GenusSymbol g) {
  for (auto& l : g.locals)
    if (l.prime == 2) l.blocks = canonicalize_2adic(l.blocks);
  return g;
}

GenusSymbol raw_genus_symbol(const Lattice& l) {
  if (!l.integral()) throw DomainError("genus symbol needs an integral lattice");
  GenusSymbol g;
  g.signature = signature(l);
  Int det = abs(l.determinant().get_num());
  std::vector<Int> primes = prime_divisors(2 * det);
  for (const auto& p : primes) g.locals.push_back({p, padic_jordan(l, p)});
  return g;
}

GenusSymbol genus_symbol(const Lattice& l) {
  if (!l.integral() || !l.even()) throw DomainError("genus symbol needs an even lattice");
  return canonical(raw_genus_symbol(l));
}

namespace {

std::string power_string(const Int& p, int e) {
  Int q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  return q.get_str();
}

void render_block(std::ostringstream& os, const Int& p, const JordanBlock& b) {
  os << power_string(p, b.scale) << '^';
  if (b.sign < 0)
    os << "{-" << b.rank << '}';
  else if (b.rank >= 10)
    os << '{' << b.rank << '}';
  else
    os << b.rank;
  if (p == 2 && b.odd) os << '_' << b.oddity;
}

}  // namespace

std::string render(const GenusSymbol& g) {
  std::ostringstream os;
  os << "II_(" << g.signature.plus << ',' << g.signature.minus << ')';
  for (const auto& l : g.locals)
    for (const auto& b : l.blocks)
      if (b.scale > 0) render_block(os, l.prime, b);
  return os.str();
}

std::string render_blocks(const GenusSymbol& g) {
  std::ostringstream os;
  os << "signature (" << g.signature.plus << ',' << g.signature.minus << ')';
  for (const auto& l : g.locals) {
    os << "\n  p=" << l.prime << ':';
    for (const auto& b : l.blocks) {
      os << " [scale " << power_string(l.prime, b.scale) << ", rank " << b.rank << ", sign " << (b.sign > 0 ? '+' : '-');
      if (l.prime == 2) os << ", type " << (b.odd ? "I" : "II") << ", oddity " << b.oddity;
      os << ']';
    }
  }
  return os.str();
}

namespace {

class GenusParser {
 public:
  explicit GenusParser(std::string_view t) : s_(t) {}

  GenusSymbol parse() {
    skip();
    if (eat_word("II")) {
    } else if (eat_word("I")) {
      fail("odd genus symbols are not supported");
    } else {
      fail("expected 'II'");
    }
    skip();
    expect('_');
    skip();
    const bool brace = eat('{');
    skip();
    expect('(');
    GenusSymbol g;
    g.signature.plus = static_cast<int>(number());
    skip();
    expect(',');
    g.signature.minus = static_cast<int>(number());
    skip();
    expect(')');
    skip();
    if (brace) expect('}');

    std::map<Int, std::vector<JordanBlock>> blocks;
    skip();
    while (pos_ < s_.size()) {
      const std::size_t at = pos_;
      Int scale(number_string());
      Int p;
      int e = 0;
      if (!prime_power(scale, p, e)) {
        pos_ = at;
        fail("scale " + scale.get_str() + " is not a nontrivial prime power");
      }
      JordanBlock b;
      b.scale = e;
      bool have_oddity = false;
      skip();
      if (eat('_')) {
        b.oddity = oddity();
        have_oddity = true;
        skip();
      }
      expect('^');
      skip();
      if (eat('{')) {
        skip();
        b.sign = signum();
        b.rank = static_cast<int>(number());
        skip();
        expect('}');
      } else {
        b.sign = signum();
        if (!digit()) fail("expected a rank");
        b.rank = s_[pos_++] - '0';
      }
      skip();
      if (!have_oddity && eat('_')) {
        b.oddity = oddity();
        have_oddity = true;
      }
      if (have_oddity && p != 2) fail("oddity given at an odd prime");
      b.odd = have_oddity;
      if (b.rank <= 0) fail("rank must be positive");
      auto& list = blocks[p];
      for (const auto& x : list)
        if (x.scale == b.scale) fail("repeated scale");
      list.push_back(b);
      skip();
    }
    return assemble(g, blocks);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("genus symbol: " + what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '\\')) ++pos_;
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    if (s_.substr(pos_).starts_with(w)) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }
  std::string number_string() {
    if (!digit()) fail("expected a number");
    const std::size_t start = pos_;
    while (digit()) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  long number() {
    skip();
    const std::string t = number_string();
    if (t.size() > 6) fail("number too large");
    return std::stol(t);
  }
  int signum() {
    if (eat('-')) return -1;
    eat('+');
    return 1;
  }
  int oddity() {
    skip();
    int v = 0;
    if (eat('{')) {
      v = static_cast<int>(number());
      skip();
      expect('}');
    } else {
      if (!digit()) fail("expected an oddity");
      v = s_[pos_++] - '0';
    }
    if (v > 7) fail("oddity must be in 0..7");
    return v;
  }
  static bool prime_power(const Int& q, Int& p, int& e) {
    if (q < 2) return false;
    auto ps = prime_divisors(q);
    if (ps.size() != 1) return false;
    p = ps.front();
    e = valuation(q, p);
    return true;
  }

  GenusSymbol assemble(GenusSymbol g, std::map<Int, std::vector<JordanBlock>>& blocks) {
    const int n = g.rank();
    if (n <= 0) fail("signature must have positive rank");
    blocks[Int(2)];  // 2 is always listed
    // |det| = prod p^(scale * rank)
    Int absdet = 1;
    for (const auto& [p, list] : blocks)
      for (const auto& b : list)
        for (int i = 0; i < b.scale * b.rank; ++i) absdet *= p;
    for (auto& [p, list] : blocks) {
      int used = 0;
      int sign = 1;
      for (const auto& b : list) {
        used += b.rank;
        sign *= b.sign;
      }
      if (used > n) fail("constituent ranks exceed the total rank");
      // unit part of det at p: (-1)^p_minus times the other primes' contributions
      Rat unit = unit_part(Rat(g.signature.minus % 2 ? -absdet : absdet), p);
      const int expected = p == 2 ? kronecker2(unit) : legendre(unit, p);
      if (used < n) {
        list.push_back({0, n - used, expected * sign, false, 0});
      } else if (expected != sign) {
        fail("sign of the " + p.get_str() + "-adic symbol is inconsistent with the determinant");
      }
      std::sort(list.begin(), list.end(), [](const JordanBlock& x, const JordanBlock& y) { return x.scale < y.scale; });
      g.locals.push_back({p, list});
    }
    return g;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GenusSymbol parse_genus(std::string_view text) { return GenusParser(text).parse(); }

bool genus_equal(const GenusSymbol& a, const GenusSymbol& b) { return canonical(a) == canonical(b); }

bool oddity_formula_holds(const GenusSymbol& g) {
  long rhs = 0;
  for (const auto& l : g.locals) {
    if (l.prime == 2) {
      for (const auto& b : l.blocks) {
        rhs += b.odd ? b.oddity : 0;
        if (b.scale % 2 == 1 && b.sign < 0) rhs += 4;
      }
    } else {
      long excess = 0;
      for (const auto& b : l.blocks) {
        Int q = 1;
        for (int i = 0; i < b.scale; ++i) q *= l.prime;
        Int t = Int(b.rank) * (q - 1);
        excess += mpz_fdiv_ui(t.get_mpz_t(), 8);
        if (b.scale % 2 == 1 && b.sign < 0) excess += 4;
      }
      rhs -= excess;
    }
  }
  const long lhs = g.signature.plus - g.signature.minus;
  return ((lhs - rhs) % 8 + 8) % 8 == 0;
}

Int symbol_determinant(const GenusSymbol& g) {
  Int d = 1;
  for (const auto& l : g.locals)
    for (const auto& b : l.blocks)
      for (int i = 0; i < b.scale * b.rank; ++i) d *= l.prime;
  return d;
}

}  // namespace nklat
