#include "nklat/lambda_model.hpp"

#include <cctype>
#include <string>
#include <utility>

#include "nklat/lattice_expr.hpp"

namespace nklat {

StandardLambdaModel::StandardLambdaModel()
    : lambda_(std::make_shared<const Lattice>(build_named("Lambda"))) {}

LatticeVector StandardLambdaModel::basis(std::size_t i) const {
  if (i >= kRank) throw InputError("basis index out of range: " + std::to_string(i));
  IntVector c(kRank, Int(0));
  c[i] = 1;
  return {lambda_, c};
}

LatticeVector StandardLambdaModel::delta_prime() const { return halfsum() + halfdiff(); }
LatticeVector StandardLambdaModel::sigma_prime() const { return halfsum() - halfdiff(); }

LatticeVector StandardLambdaModel::L(long i) const { return basis(0) + Int(i) * basis(1); }

LatticeVector StandardLambdaModel::alpha(int k) const {
  if (k < 1 || k > 8) throw InputError("E8 root index must be in 1..8");
  return basis(kE8Begin + static_cast<std::size_t>(k - 1));
}

LatticeVector StandardLambdaModel::e1() const { return alpha(1); }
LatticeVector StandardLambdaModel::e2() const { return alpha(1) + alpha(2); }

namespace {

class VectorParser {
 public:
  VectorParser(const StandardLambdaModel& m, std::string text) : m_(m), s_(std::move(text)) {}

  LatticeVector parse() {
    skip();
    if (pos_ == s_.size()) fail("empty vector expression");
    IntVector zero(StandardLambdaModel::kRank, Int(0));
    LatticeVector acc(m_.lattice(), zero);
    bool first = true;
    while (pos_ < s_.size()) {
      Int sgn = 1;
      skip();
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sgn = -1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      skip();
      acc = acc + sgn * term();
      skip();
      first = false;
    }
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("vector expression: " + what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool digit() const { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  long integer() {
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = s_[pos_++] == '-';
    if (!digit()) fail("expected an integer");
    long v = 0;
    while (digit()) v = v * 10 + (s_[pos_++] - '0');
    return neg ? -v : v;
  }

  LatticeVector term() {
    Int coef = 1;
    if (digit()) {
      coef = Int(integer());
      skip();
      if (peek() == '*') ++pos_;
      skip();
    }
    return coef * name();
  }

  LatticeVector name() {
    const std::size_t start = pos_;
    std::string id;
    while (std::isalpha(static_cast<unsigned char>(peek()))) id += s_[pos_++];
    if (peek() == '\'') {
      id += '\'';
      ++pos_;
    }
    if (id == "delta'") return m_.delta_prime();
    if (id == "Sigma'") return m_.sigma_prime();
    if (id == "halfsum") return m_.halfsum();
    if (id == "halfdiff") return m_.halfdiff();
    if (id == "L") {
      long i = 0;
      if (peek() == '(' || peek() == '[') {
        const char close = peek() == '(' ? ')' : ']';
        ++pos_;
        i = integer();
        if (peek() != close) fail(std::string("expected '") + close + "'");
        ++pos_;
      } else if (peek() == '_') {
        ++pos_;
        const bool brace = peek() == '{';
        if (brace) ++pos_;
        i = integer();
        if (brace) {
          if (peek() != '}') fail("expected '}'");
          ++pos_;
        }
      } else {
        i = integer();
      }
      return m_.L(i);
    }
    if (id == "e" || id == "alpha" || id == "b") {
      if (!digit()) fail("expected an index after '" + id + "'");
      const long k = integer();
      if (id == "e") {
        if (k == 1) return m_.e1();
        if (k == 2) return m_.e2();
        fail("only e1 and e2 are named");
      }
      if (id == "alpha") {
        if (k < 1 || k > 8) fail("alpha index must be in 1..8");
        return m_.alpha(static_cast<int>(k));
      }
      if (k < 0 || k >= static_cast<long>(StandardLambdaModel::kRank)) fail("basis index out of range");
      return m_.basis(static_cast<std::size_t>(k));
    }
    pos_ = start;
    fail("unknown vector name '" + id + "'");
  }

  const StandardLambdaModel& m_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

LatticeVector StandardLambdaModel::evaluate(std::string_view expr) const {
  static const std::pair<std::string_view, std::string_view> aliases[] = {
      {"\xE2\x88\x92", "-"},      // unicode minus
      {"\xE2\x80\xB2", "'"},      // prime mark
      {"\xCE\xB4", "delta"},       // δ
      {"\xCE\xA3", "Sigma"},       // Σ
      {"\xCE\xB1", "alpha"}};      // α
  std::string s;
  for (std::size_t i = 0; i < expr.size();) {
    bool hit = false;
    for (const auto& [from, to] : aliases)
      if (expr.substr(i).starts_with(from)) {
        s += to;
        i += from.size();
        hit = true;
        break;
      }
    if (!hit) s += expr[i++];
  }
  return VectorParser(*this, s).parse();
}

const StandardLambdaModel& standard_lambda() {
  static const StandardLambdaModel model;
  return model;
}

}  // namespace nklat
