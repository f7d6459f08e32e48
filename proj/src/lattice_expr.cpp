#include "nklat/lattice_expr.hpp"

#include <cctype>
#include <string>

namespace nklat {

namespace {

IntMatrix negated_cartan(int n, const std::vector<std::pair<int, int>>& edges) {
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = -2;
  for (auto [a, b] : edges) {
    g(a, b) = 1;
    g(b, a) = 1;
  }
  return g;
}

}  // namespace

Lattice root_lattice_A(int n) {
  if (n < 1) throw InputError("A_n needs n >= 1");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Lattice::from_integers(negated_cartan(n, e), "A" + std::to_string(n));
}

Lattice root_lattice_D(int n) {
  if (n < 3) throw InputError("D_n needs n >= 3");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 2 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(n - 3, n - 1);
  return Lattice::from_integers(negated_cartan(n, e), "D" + std::to_string(n));
}

Lattice root_lattice_E(int n) {
  if (n < 6 || n > 8) throw InputError("E_n needs n in {6,7,8}");
  // Bourbaki: 1-3, 3-4, 4-5, 5-6, 6-7, 7-8 and 2-4 (0-based below)
  std::vector<std::pair<int, int>> e = {{0, 2}, {2, 3}, {3, 4}, {1, 3}};
  for (int i = 4; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Lattice::from_integers(negated_cartan(n, e), "E" + std::to_string(n));
}

Lattice hyperbolic_plane() { return Lattice::from_integers(IntMatrix{{0, 1}, {1, 0}}, "U"); }

Lattice odd_plane_V() { return Lattice::from_integers(IntMatrix{{0, 1}, {1, 1}}, "V"); }

Lattice lattice_K(int p) {
  if (!is_prime(p) || p == 2) throw InputError("K_p needs an odd prime p, got " + std::to_string(p));
  return Lattice::from_integers(IntMatrix{{(p + 1) / 2, -1}, {-1, 2}}, "K" + std::to_string(p));
}

Lattice lattice_H(int p) {
  if (!is_prime(p) || p == 2) throw InputError("H_p needs an odd prime p, got " + std::to_string(p));
  return Lattice::from_integers(IntMatrix{{(p - 1) / 2, 1}, {1, -2}}, "H" + std::to_string(p));
}

namespace {

std::string normalize(std::string_view in) {
  std::string out;
  for (std::size_t i = 0; i < in.size();) {
    const std::string_view rest = in.substr(i);
    if (rest.starts_with("\xE2\x8A\x95")) {  // ⊕
      out += '+';
      i += 3;
    } else if (rest.starts_with("\xE2\x88\x92")) {  // − (minus sign)
      out += '-';
      i += 3;
    } else if (rest.starts_with("\xE2\x88\xA8")) {  // ∨
      out += '\'';
      i += 3;
    } else if (rest.starts_with("(+)")) {
      out += '+';
      i += 3;
    } else if (in[i] == '{' || in[i] == '}' || std::isspace(static_cast<unsigned char>(in[i]))) {
      ++i;
    } else {
      out += in[i++];
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  Lattice parse() {
    Lattice l = expr();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return l;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("lattice expression: " + what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  Lattice expr() {
    std::vector<Lattice> parts{summand()};
    while (eat('+')) parts.push_back(summand());
    if (parts.size() == 1) return parts.front();
    return direct_sum(parts);
  }

  Rat number() {
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/') ++pos_;
    if (start == pos_) fail("expected a number");
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const InputError&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  int small_integer() {
    Rat r = number();
    if (r.get_den() != 1 || !r.get_num().fits_sint_p()) fail("expected an integer");
    return static_cast<int>(r.get_num().get_si());
  }

  Lattice summand() {
    Lattice l = primary();
    for (;;) {
      if (peek() == '(') {
        ++pos_;
        Rat m = number();
        expect(')');
        if (m == 0) fail("rescale by zero");
        const std::string nm = l.name();
        l = rescale(l, m).renamed(nm + "(" + to_string(m) + ")");
      } else if (peek() == '^') {
        ++pos_;
        eat('+');
        const std::size_t at = pos_;
        int k = small_integer();
        if (k < 1) {
          pos_ = at;
          fail("power must be positive");
        }
        std::vector<Lattice> copies(static_cast<std::size_t>(k), l);
        l = k == 1 ? l : direct_sum(copies);
      } else if (peek() == '\'') {
        ++pos_;
        l = dual(l);
      } else {
        return l;
      }
    }
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Lattice primary() {
    if (eat('(')) {
      Lattice l = expr();
      expect(')');
      return l;
    }
    const std::size_t start = pos_;
    std::string id = identifier();
    if (id.empty()) fail("expected a lattice name");
    if (id == "rescale" || id == "dual_rescale") {
      expect('(');
      Lattice inner = expr();
      expect(',');
      Rat m = number();
      expect(')');
      if (m == 0) fail("rescale by zero");
      const std::string nm = inner.name();
      if (id == "rescale") return rescale(inner, m).renamed(nm + "(" + to_string(m) + ")");
      return rescale(dual(inner), m).renamed("dual(" + nm + ")(" + to_string(m) + ")");
    }
    if (id == "dual") {
      expect('(');
      Lattice inner = expr();
      expect(')');
      return dual(inner);
    }
    if (id == "direct_sum") {
      expect('(');
      std::vector<Lattice> parts{expr()};
      while (eat(',')) parts.push_back(expr());
      expect(')');
      return direct_sum(parts);
    }
    if (id == "U") return hyperbolic_plane();
    if (id == "V") return odd_plane_V();
    if (id == "Lambda") {
      Lattice u2 = rescale(hyperbolic_plane(), 2).renamed("U(2)");
      Lattice a1 = root_lattice_A(1);
      return direct_sum({u2, u2, u2, root_lattice_E(8), a1, a1}, "Lambda");
    }
    std::string base = id;
    if (!base.empty() && base.back() == '_') base.pop_back();
    if (base.size() == 1 && std::string("ADEKH").find(base[0]) != std::string::npos) {
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an index after '" + base + "'");
      const std::size_t at = pos_;
      int n = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) n = n * 10 + (s_[pos_++] - '0');
      try {
        switch (base[0]) {
          case 'A': return root_lattice_A(n);
          case 'D': return root_lattice_D(n);
          case 'E': return root_lattice_E(n);
          case 'K': return lattice_K(n);
          default: return lattice_H(n);
        }
      } catch (const InputError& e) {
        pos_ = at;
        fail(e.what());
      }
    }
    pos_ = start;
    fail("unknown lattice name '" + id + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Lattice build_named(std::string_view expr) { return Parser(normalize(expr)).parse(); }

}  // namespace nklat
