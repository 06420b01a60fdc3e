#include <cctype>
#include <sstream>

#include "torofree/poly.hpp"

namespace torofree {

namespace {

std::string monomial_text(const Exponents& e, Ranks r) {
  std::string out;
  for (int k = 0; k < r.vars(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += k < r.l ? "H" + std::to_string(k + 1) : "d" + std::to_string(k - r.l + 1);
    if (e[k] > 1) out += "^" + std::to_string(e[k]);
  }
  return out;
}

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := atom ['^' digits]
// atom   := digits | 'H' digits | 'd' digits | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, Ranks ranks) : text_(text), ranks_(ranks) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial literal '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Poly expr() {
    Poly acc(ranks_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Poly t = term();
    acc += negate ? -t : t;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        Poly f = factor();
        if (!f.is_constant() || f.is_zero()) fail("division by a non-constant or zero factor");
        acc *= Rational(1) / f.constant_term();
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly base = atom();
    if (accept('^')) {
      unsigned long e = std::stoul(digits());
      if (e > 64) fail("exponent too large");
      Poly r = Poly::constant(ranks_, 1);
      for (unsigned long k = 0; k < e; ++k) r *= base;
      return r;
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == 'H' || c == 'd') {
      ++pos_;
      int idx = std::stoi(digits());
      VarId v = c == 'H' ? VarId::H(idx) : VarId::d(idx);
      int bound = c == 'H' ? ranks_.l : ranks_.n;
      if (idx < 1 || idx > bound) fail(std::string("variable ") + c + std::to_string(idx) + " outside declared ranks");
      return Poly::variable(ranks_, v);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class z(digits(), 10);
      return Poly::constant(ranks_, Rational(z));
    }
    fail("unexpected character");
  }

  std::string_view text_;
  Ranks ranks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = t.coeff < 0;
    Rational mag = negative ? Rational(-t.coeff) : t.coeff;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono = monomial_text(t.exp, p.ranks());
    if (mono.empty()) {
      os << to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << to_string(mag) << '*' << mono;
    }
  }
  return os.str();
}

Poly parse_poly(std::string_view text, Ranks ranks) {
  if (ranks.l < 0 || ranks.n < 0 || ranks.vars() > kMaxVars) throw StructuralError("unsupported ranks");
  return Parser(text, ranks).parse();
}

}  // namespace torofree
