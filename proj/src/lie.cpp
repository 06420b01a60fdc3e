#include "torofree/lie.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "torofree/poly.hpp"

namespace torofree {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Finite: return "finite";
    case Variant::Toroidal: return "toroidal";
    case Variant::Witt: return "witt";
    case Variant::Full: return "full";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  if (text == "finite") return Variant::Finite;
  if (text == "toroidal") return Variant::Toroidal;
  if (text == "witt") return Variant::Witt;
  if (text == "full") return Variant::Full;
  throw ParseError("unknown variant '" + std::string(text) + "'");
}

void AlgebraDesc::validate() const {
  if (family == Family::A && rank < 1) throw StructuralError("type A requires rank l >= 1");
  if (family == Family::C && rank < 2) throw StructuralError("type C requires rank l >= 2");
  if (rank > kMaxRank) throw StructuralError("rank above supported maximum " + std::to_string(kMaxRank));
  if (loop_vars < 0) throw StructuralError("loop_vars must be non-negative");
  if (variant != Variant::Finite && loop_vars < 1)
    throw StructuralError("variant " + to_string(variant) + " requires loop_vars n >= 1");
  if (rank + loop_vars > kMaxVars) throw StructuralError("l + n exceeds the supported variable count");
  if (variant != Variant::Full && (c1 != 0 || c2 != 0))
    throw StructuralError("cocycle coefficients are only meaningful for the full variant");
}

namespace {

int first_nonzero(const Degree& r) {
  for (std::size_t k = 0; k < r.size(); ++k)
    if (r[k] != 0) return static_cast<int>(k);
  return -1;
}

Degree add_deg(const Degree& a, const Degree& b) {
  Degree c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] + b[k];
  return c;
}

bool is_zero_deg(const Degree& r) { return first_nonzero(r) < 0; }

// sum_p r_p K_p(deg)
LieElt central_sum(const Degree& r, const Degree& deg, const Rational& scale) {
  LieElt out;
  if (scale == 0) return out;
  for (std::size_t p = 0; p < r.size(); ++p)
    if (r[p] != 0) out.add(Symbol::central(static_cast<int>(p) + 1, deg), scale * r[p]);
  return out;
}

}  // namespace

LieElt LieElt::of(const Symbol& s, const Rational& c) {
  LieElt e;
  e.add(s, c);
  return e;
}

void LieElt::add(const Symbol& s, const Rational& c) {
  if (c == 0) return;
  if (s.kind == Symbol::Kind::Central) {
    int jstar = first_nonzero(s.degree);
    if (jstar >= 0 && s.index == jstar + 1) {
      // K_{j*}(r) = -(1/r_{j*}) sum_{p != j*} r_p K_p(r)
      Rational f = -c / s.degree[jstar];
      for (std::size_t p = 0; p < s.degree.size(); ++p) {
        if (static_cast<int>(p) == jstar || s.degree[p] == 0) continue;
        add(Symbol::central(static_cast<int>(p) + 1, s.degree), f * s.degree[p]);
      }
      return;
    }
  }
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational LieElt::coeff(const Symbol& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

LieElt& LieElt::operator+=(const LieElt& o) {
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

LieElt& LieElt::operator-=(const LieElt& o) {
  for (const auto& [s, c] : o.terms_) add(s, -c);
  return *this;
}

LieElt& LieElt::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, v] : terms_) v *= c;
  return *this;
}

LieElt LieElt::operator-() const {
  LieElt e = *this;
  e *= Rational(-1);
  return e;
}

LieElt derivation(std::span<const Rational> u, const Degree& r) {
  if (u.size() != r.size()) throw StructuralError("D(u, r): u and r have different lengths");
  LieElt e;
  for (std::size_t i = 0; i < u.size(); ++i) e.add(Symbol::deriv(static_cast<int>(i) + 1, r), u[i]);
  return e;
}

LieElt coroot(const AlgebraDesc& A, int i, const Degree& r) {
  if (!A.has_finite_part()) throw DomainError("no finite part in the Witt variant");
  if (i < 1 || i > A.rank) throw StructuralError("coroot index out of range");
  LieElt e;
  const auto& h = A.fin().coroot(i);
  for (int j = 1; j <= A.rank; ++j) e.add(Symbol::fin(A.fin().cartan(j), r), h[j - 1]);
  return e;
}

void check_symbol(const AlgebraDesc& A, const Symbol& s) {
  const int len = A.degree_len();
  if (static_cast<int>(s.degree.size()) != len)
    throw StructuralError("loop degree of length " + std::to_string(s.degree.size()) + " but the algebra has " +
                          std::to_string(len) + " loop variables");
  switch (s.kind) {
    case Symbol::Kind::Fin:
      if (!A.has_finite_part()) throw DomainError("finite-part symbol in the Witt variant");
      if (s.index < 0 || s.index >= A.fin().dim()) throw StructuralError("finite basis index out of range");
      return;
    case Symbol::Kind::Central:
      if (!A.has_center()) throw DomainError("central symbol K_j(r) not present in the " + to_string(A.variant) + " variant");
      if (s.index < 1 || s.index > A.loop_vars) throw StructuralError("central index out of range");
      return;
    case Symbol::Kind::Deriv:
      if (s.index < 1 || s.index > A.loop_vars) throw StructuralError("derivation index out of range");
      if (A.variant == Variant::Toroidal && !is_zero_deg(s.degree))
        throw DomainError("t^r d_i with r != 0 is not in the toroidal variant");
      return;
  }
}

void check_element(const AlgebraDesc& A, const LieElt& X) {
  for (const auto& [s, c] : X.terms()) check_symbol(A, s);
}

Rational invariant_form(const AlgebraDesc& A, int m1, int m2) { return A.fin().form(m1, m2); }

namespace {

// phi1(t^r d_i, t^s d_j) = -s_i r_j sum_p r_p K_p(r+s)
// phi2(t^r d_i, t^s d_j) =  r_i s_j sum_p r_p K_p(r+s)
LieElt cocycle_symbols(const Rational& c1, const Rational& c2, const Symbol& a, const Symbol& b) {
  const Degree& r = a.degree;
  const Degree& s = b.degree;
  const int i = a.index - 1, j = b.index - 1;
  Rational coef = c1 * Rational(-s[i] * r[j]) + c2 * Rational(r[i] * s[j]);
  return central_sum(r, add_deg(r, s), coef);
}

LieElt witt_symbols(const Symbol& a, const Symbol& b) {
  const Degree& r = a.degree;
  const Degree& s = b.degree;
  Degree rs = add_deg(r, s);
  LieElt out;
  out.add(Symbol::deriv(b.index, rs), Rational(s[a.index - 1]));
  out.add(Symbol::deriv(a.index, rs), Rational(-r[b.index - 1]));
  return out;
}

// t^r d_i (t^s K_j) = s_i K_j(r+s) + delta_ij sum_p r_p K_p(r+s)
LieElt der_center_symbols(const Symbol& d, const Symbol& k) {
  Degree rs = add_deg(d.degree, k.degree);
  LieElt out;
  out.add(Symbol::central(k.index, rs), Rational(k.degree[d.index - 1]));
  if (d.index == k.index) out += central_sum(d.degree, rs, 1);
  return out;
}

LieElt bracket_ordered(const AlgebraDesc& A, const Symbol& a, const Symbol& b);

}  // namespace

LieElt bracket(const AlgebraDesc& A, const Symbol& a, const Symbol& b) {
  check_symbol(A, a);
  check_symbol(A, b);
  // Order so that derivations come first, then finite-part symbols.
  auto rank_of = [](const Symbol& s) {
    return s.kind == Symbol::Kind::Deriv ? 0 : s.kind == Symbol::Kind::Fin ? 1 : 2;
  };
  if (rank_of(a) > rank_of(b)) return -bracket_ordered(A, b, a);
  return bracket_ordered(A, a, b);
}

namespace {

LieElt bracket_ordered(const AlgebraDesc& A, const Symbol& a, const Symbol& b) {
  using K = Symbol::Kind;
  LieElt out;
  if (a.kind == K::Central || b.kind == K::Central) {
    if (a.kind == K::Deriv) return der_center_symbols(a, b);
    return out;
  }
  if (a.kind == K::Fin && b.kind == K::Fin) {
    const auto& fin = A.fin();
    Degree rs = add_deg(a.degree, b.degree);
    for (const auto& [k, c] : fin.bracket(a.index, b.index)) out.add(Symbol::fin(k, rs), c);
    if (A.has_center()) out += central_sum(a.degree, rs, fin.form(a.index, b.index));
    return out;
  }
  if (A.variant == Variant::Finite) return out;  // Z is central
  if (a.kind == K::Deriv && b.kind == K::Fin) {
    Degree rs = add_deg(a.degree, b.degree);
    out.add(Symbol::fin(b.index, rs), Rational(b.degree[a.index - 1]));
    return out;
  }
  // Deriv, Deriv
  out = witt_symbols(a, b);
  if (A.variant == Variant::Full) out += cocycle_symbols(A.c1, A.c2, a, b);
  return out;
}

}  // namespace

LieElt bracket(const AlgebraDesc& A, const LieElt& X, const LieElt& Y) {
  LieElt out;
  for (const auto& [a, ca] : X.terms()) {
    for (const auto& [b, cb] : Y.terms()) {
      LieElt t = bracket(A, a, b);
      t *= ca * cb;
      out += t;
    }
  }
  return out;
}

namespace {

void require_derivations(const LieElt& X) {
  for (const auto& [s, c] : X.terms())
    if (s.kind != Symbol::Kind::Deriv) throw DomainError("expected a derivation element");
}

}  // namespace

LieElt cocycle(const Rational& c1, const Rational& c2, const LieElt& X, const LieElt& Y) {
  require_derivations(X);
  require_derivations(Y);
  LieElt out;
  for (const auto& [a, ca] : X.terms())
    for (const auto& [b, cb] : Y.terms()) {
      LieElt t = cocycle_symbols(c1, c2, a, b);
      t *= ca * cb;
      out += t;
    }
  return out;
}

LieElt witt_bracket(const LieElt& X, const LieElt& Y) {
  require_derivations(X);
  require_derivations(Y);
  LieElt out;
  for (const auto& [a, ca] : X.terms())
    for (const auto& [b, cb] : Y.terms()) {
      LieElt t = witt_symbols(a, b);
      t *= ca * cb;
      out += t;
    }
  return out;
}

LieElt der_on_center(const LieElt& D, const LieElt& Kc) {
  require_derivations(D);
  LieElt out;
  for (const auto& [a, ca] : D.terms())
    for (const auto& [b, cb] : Kc.terms()) {
      if (b.kind != Symbol::Kind::Central) throw DomainError("expected a central element");
      LieElt t = der_center_symbols(a, b);
      t *= ca * cb;
      out += t;
    }
  return out;
}

std::vector<Degree> degrees_in(int n, DegreeWindow w) {
  std::vector<Degree> out;
  if (w.hi < w.lo) return out;
  Degree cur(n, w.lo);
  for (;;) {
    out.push_back(cur);
    int k = n - 1;
    while (k >= 0 && cur[k] == w.hi) {
      cur[k] = w.lo;
      --k;
    }
    if (k < 0) break;
    ++cur[k];
  }
  return out;
}

std::vector<Symbol> basis_of(const AlgebraDesc& A, DegreeWindow w) {
  A.validate();
  std::vector<Symbol> out;
  const int n = A.loop_vars;
  if (A.variant == Variant::Finite) {
    for (int m = 0; m < A.fin().dim(); ++m) out.push_back(Symbol::fin(m, {}));
    for (int j = 1; j <= n; ++j) out.push_back(Symbol::deriv(j, {}));
    return out;
  }
  for (const auto& r : degrees_in(n, w)) {
    if (A.has_finite_part())
      for (int m = 0; m < A.fin().dim(); ++m) out.push_back(Symbol::fin(m, r));
    if (A.has_center()) {
      int jstar = first_nonzero(r);
      for (int j = 1; j <= n; ++j)
        if (j != jstar + 1) out.push_back(Symbol::central(j, r));
    }
    if (A.variant != Variant::Toroidal || is_zero_deg(r))
      for (int i = 1; i <= n; ++i) out.push_back(Symbol::deriv(i, r));
  }
  return out;
}

const GeneratorWord& generator_word(const AlgebraDesc& A, int m) {
  if (!A.has_finite_part()) throw DomainError("no finite part in the Witt variant");
  return A.fin().word(m);
}

std::string degree_text(const Degree& r) {
  std::string out = "(";
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(r[k]);
  }
  return out + ")";
}

std::string to_string(const AlgebraDesc& A, const Symbol& s) {
  switch (s.kind) {
    case Symbol::Kind::Fin: {
      std::string name = A.fin().name(s.index);
      return A.variant == Variant::Finite ? name : name + degree_text(s.degree);
    }
    case Symbol::Kind::Central:
      return "K" + std::to_string(s.index) + degree_text(s.degree);
    case Symbol::Kind::Deriv: {
      if (A.variant == Variant::Finite || A.variant == Variant::Toroidal) return "d" + std::to_string(s.index);
      std::string u = "[";
      for (int i = 1; i <= A.loop_vars; ++i) {
        if (i > 1) u += ",";
        u += i == s.index ? "1" : "0";
      }
      return "D(" + u + "]," + degree_text(s.degree) + ")";
    }
  }
  return "?";
}

std::string to_string(const AlgebraDesc& A, const LieElt& X) {
  if (X.is_zero()) return "0";
  const bool group_d = A.variant == Variant::Witt || A.variant == Variant::Full;
  std::vector<std::pair<std::string, Rational>> items;
  std::map<Degree, std::vector<Rational>> dgroups;
  for (const auto& [s, c] : X.terms()) {
    if (group_d && s.kind == Symbol::Kind::Deriv) {
      auto& u = dgroups[s.degree];
      if (u.empty()) u.assign(A.loop_vars, Rational(0));
      u[s.index - 1] = c;
      continue;
    }
    items.emplace_back(to_string(A, s), c);
  }
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const std::string& atom, const Rational& c) {
    const bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << to_string(mag) << '*';
    os << atom;
  };
  for (const auto& [atom, c] : items) emit(atom, c);
  for (const auto& [r, u] : dgroups) {
    std::string text = "D([";
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i) text += ",";
      text += to_string(u[i]);
    }
    text += "]," + degree_text(r) + ")";
    emit(text, 1);
  }
  return os.str();
}

namespace {

class ElementParser {
 public:
  ElementParser(const AlgebraDesc& A, std::string_view text) : A_(A), text_(text) {}

  LieElt parse() {
    LieElt out;
    skip();
    if (done()) fail("empty element");
    bool first = true;
    while (!done()) {
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Rational coef = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coef = number();
        skip();
        if (peek() == '*') {
          ++pos_;
          skip();
        } else if (done() || peek() == '+' || peek() == '-') {
          fail("bare scalar is not a Lie algebra element");
        }
      }
      LieElt atom = this->atom();
      atom *= sign * coef;
      out += atom;
      skip();
    }
    check_element(A_, out);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("element literal '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  void skip() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
    skip();
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string tok(text_.substr(start, pos_ - start));
    if (tok.empty() || tok == "-" || tok == "+") fail("expected integer");
    return std::stol(tok);
  }

  Rational number() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/') ++pos_;
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      fail("malformed number");
    }
  }

  Degree degree_list() {
    expect('(');
    Degree r;
    if (peek() != ')') {
      for (;;) {
        r.push_back(static_cast<int>(integer()));
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(')');
    const int len = A_.degree_len();
    if (r.size() == 1 && r[0] == 0 && len != 1) r.assign(len, 0);  // "(0)" shorthand
    if (static_cast<int>(r.size()) != len)
      fail("loop degree must have " + std::to_string(len) + " entries");
    return r;
  }

  Degree optional_degree() {
    skip();
    if (peek() == '(') return degree_list();
    return Degree(A_.degree_len(), 0);
  }

  std::string identifier() {
    std::size_t start = pos_;
    if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected generator name");
    ++pos_;
    if (peek() == '[') {
      while (!done() && peek() != ']') ++pos_;
      if (done()) fail("unterminated '['");
      ++pos_;
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    std::string id(text_.substr(start, pos_ - start));
    id.erase(std::remove_if(id.begin(), id.end(), [](unsigned char c) { return std::isspace(c); }), id.end());
    return id;
  }

  LieElt atom() {
    skip();
    if (peek() == 'D' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '(') {
      pos_ += 2;
      expect('[');
      std::vector<Rational> u;
      for (;;) {
        u.push_back(number());
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
      expect(']');
      expect(',');
      Degree r = degree_list();
      expect(')');
      if (static_cast<int>(u.size()) != A_.loop_vars) fail("derivation vector has the wrong length");
      return derivation(u, r);
    }
    std::string id = identifier();
    const int n = A_.loop_vars;
    auto index_of = [&](const std::string& name, int hi) {
      if (name.size() < 2) fail("missing index");
      int idx = std::stoi(name.substr(1));
      if (idx < 1 || idx > hi) fail("index out of range in '" + name + "'");
      return idx;
    };
    if (id[0] == 'K') return LieElt::of(Symbol::central(index_of(id, n), optional_degree()));
    if (id[0] == 'd') return LieElt::of(Symbol::deriv(index_of(id, n), optional_degree()));
    if (!A_.has_finite_part()) fail("finite-part generator in the Witt variant");
    if (id[0] == 'h') return coroot(A_, index_of(id, A_.rank), optional_degree());
    auto m = A_.fin().find(id);
    if (!m) fail("unknown generator '" + id + "'");
    return LieElt::of(Symbol::fin(*m, optional_degree()));
  }

  const AlgebraDesc& A_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LieElt parse_element(const AlgebraDesc& A, std::string_view text) { return ElementParser(A, text).parse(); }

}  // namespace torofree
