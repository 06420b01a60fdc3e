#include "torofree/poly.hpp"

#include <algorithm>
#include <cctype>

namespace torofree {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw ParseError("empty rational");
  if (s.front() == '+') s.erase(s.begin());
  auto valid = [](const std::string& part) {
    std::size_t start = (!part.empty() && part[0] == '-') ? 1 : 0;
    if (part.size() == start) return false;
    return std::all_of(part.begin() + static_cast<long>(start), part.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-') throw ParseError("malformed rational '" + std::string(text) + "'");
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw DomainError("zero raised to a negative power");
    Rational inv = 1 / q;
    return pow(inv, -e);
  }
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

bool grlex_greater(const Exponents& a, const Exponents& b, int vars) {
  int da = 0, db = 0;
  for (int k = 0; k < vars; ++k) {
    da += a[k];
    db += b[k];
  }
  if (da != db) return da > db;
  for (int k = 0; k < vars; ++k) {
    if (a[k] != b[k]) return a[k] > b[k];
  }
  return false;
}

namespace {

void canonicalize(std::vector<Term>& terms, int vars) {
  std::sort(terms.begin(), terms.end(),
            [vars](const Term& x, const Term& y) { return grlex_greater(x.exp, y.exp, vars); });
  std::size_t out = 0;
  for (std::size_t k = 0; k < terms.size();) {
    std::size_t j = k + 1;
    Rational acc = std::move(terms[k].coeff);
    while (j < terms.size() && terms[j].exp == terms[k].exp) {
      acc += terms[j].coeff;
      ++j;
    }
    if (acc != 0) {
      terms[out].exp = terms[k].exp;
      terms[out].coeff = std::move(acc);
      ++out;
    }
    k = j;
  }
  terms.resize(out);
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

Poly Poly::constant(Ranks ranks, const Rational& c) {
  Poly p(ranks);
  if (c != 0) p.terms_.push_back({Exponents{}, c});
  return p;
}

Poly Poly::variable(Ranks ranks, VarId v) {
  Poly p(ranks);
  Term t;
  t.exp[p.slot(v)] = 1;
  t.coeff = 1;
  p.terms_.push_back(std::move(t));
  return p;
}

Poly Poly::monomial(Ranks ranks, const Exponents& exp, const Rational& c) {
  Poly p(ranks);
  if (c != 0) p.terms_.push_back({exp, c});
  return p;
}

Poly Poly::from_terms(Ranks ranks, std::vector<Term> terms) {
  Poly p(ranks);
  canonicalize(terms, ranks.vars());
  p.terms_ = std::move(terms);
  return p;
}

int Poly::slot(VarId v) const {
  if (v.kind == VarId::Kind::H) {
    if (v.index < 1 || v.index > ranks_.l) throw StructuralError("H index " + std::to_string(v.index) + " out of range");
    return v.index - 1;
  }
  if (v.index < 1 || v.index > ranks_.n) throw StructuralError("d index " + std::to_string(v.index) + " out of range");
  return ranks_.l + v.index - 1;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == Exponents{});
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().exp == Exponents{}) return terms_.back().coeff;
  return 0;
}

Rational Poly::coeff(const Exponents& exp) const {
  for (const auto& t : terms_)
    if (t.exp == exp) return t.coeff;
  return 0;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (int k = 0; k < ranks_.vars(); ++k) d += terms_.front().exp[k];
  return d;
}

int Poly::deg_in(VarId v) const {
  if (terms_.empty()) return -1;
  int s = slot(v);
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.exp[s]);
  return d;
}

int Poly::h_degree() const {
  if (terms_.empty()) return -1;
  int best = 0;
  for (const auto& t : terms_) {
    int d = 0;
    for (int k = 0; k < ranks_.l; ++k) d += t.exp[k];
    best = std::max(best, d);
  }
  return best;
}

bool Poly::h_free() const {
  for (const auto& t : terms_)
    for (int k = 0; k < ranks_.l; ++k)
      if (t.exp[k] != 0) return false;
  return true;
}

bool Poly::d_free() const {
  for (const auto& t : terms_)
    for (int k = ranks_.l; k < ranks_.vars(); ++k)
      if (t.exp[k] != 0) return false;
  return true;
}

void Poly::check_ranks(const Poly& o) const {
  if (!(ranks_ == o.ranks_)) {
    throw StructuralError("rank mismatch: (" + std::to_string(ranks_.l) + "," + std::to_string(ranks_.n) + ") vs (" +
                          std::to_string(o.ranks_.l) + "," + std::to_string(o.ranks_.n) + ")");
  }
}

Poly& Poly::operator+=(const Poly& o) {
  check_ranks(o);
  if (o.terms_.empty()) return *this;
  const int vars = ranks_.vars();
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && grlex_greater(terms_[i].exp, o.terms_[j].exp, vars))) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || grlex_greater(o.terms_[j].exp, terms_[i].exp, vars)) {
      merged.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].coeff + o.terms_[j].coeff;
      if (c != 0) merged.push_back({terms_[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_ranks(b);
  if (a.terms_.empty() || b.terms_.empty()) return Poly(a.ranks_);
  const int vars = a.ranks_.vars();
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Term t;
      for (int k = 0; k < vars; ++k) t.exp[k] = static_cast<std::uint16_t>(x.exp[k] + y.exp[k]);
      t.coeff = x.coeff * y.coeff;
      out.push_back(std::move(t));
    }
  }
  return Poly::from_terms(a.ranks_, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
  if (!(a.ranks_ == b.ranks_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].exp != b.terms_[k].exp || a.terms_[k].coeff != b.terms_[k].coeff) return false;
  }
  return true;
}

Poly poly_arith(PolyOp op, const Poly& p, const Poly& q) {
  switch (op) {
    case PolyOp::Add: return p + q;
    case PolyOp::Sub: return p - q;
    case PolyOp::Mul: return p * q;
  }
  return p;
}

Poly poly_scale(const Rational& c, const Poly& p) { return c * p; }

Poly shift_vars(const Poly& p, std::span<const long> shift) {
  const Ranks ranks = p.ranks();
  const int vars = ranks.vars();
  if (static_cast<int>(shift.size()) != vars) throw StructuralError("shift vector length does not match variable count");
  if (std::all_of(shift.begin(), shift.end(), [](long s) { return s == 0; })) return p;

  std::vector<Term> out;
  std::vector<Term> partial, next;
  for (const auto& t : p.terms()) {
    partial.clear();
    Term base;
    base.coeff = t.coeff;
    for (int k = 0; k < vars; ++k)
      if (shift[k] == 0) base.exp[k] = t.exp[k];
    partial.push_back(std::move(base));
    for (int k = 0; k < vars; ++k) {
      if (shift[k] == 0 || t.exp[k] == 0) continue;
      const unsigned e = t.exp[k];
      // (v - s)^e = sum_j C(e,j) (-s)^(e-j) v^j
      const Rational minus_s = Rational(-shift[k]);
      next.clear();
      next.reserve(partial.size() * (e + 1));
      for (unsigned j = 0; j <= e; ++j) {
        Rational c = Rational(binomial(e, j)) * pow(minus_s, static_cast<long>(e - j));
        for (const auto& q : partial) {
          Term u = q;
          u.exp[k] = static_cast<std::uint16_t>(j);
          u.coeff *= c;
          next.push_back(std::move(u));
        }
      }
      partial.swap(next);
    }
    for (auto& q : partial) out.push_back(std::move(q));
  }
  return Poly::from_terms(ranks, std::move(out));
}

Poly shift_sigma(int i, long k, const Poly& p) {
  const Ranks r = p.ranks();
  if (i < 1 || i > r.l) throw StructuralError("sigma index " + std::to_string(i) + " out of range");
  std::vector<long> s(r.vars(), 0);
  s[i - 1] = k;
  return shift_vars(p, s);
}

Poly shift_tau(std::span<const int> a, const Poly& p) {
  const Ranks r = p.ranks();
  if (static_cast<int>(a.size()) != r.n) throw StructuralError("tau shift length does not match n");
  std::vector<long> s(r.vars(), 0);
  for (int j = 0; j < r.n; ++j) s[r.l + j] = a[j];
  return shift_vars(p, s);
}

int deg_in(VarId v, const Poly& p) { return p.deg_in(v); }

Poly shift_difference(DifferenceMode mode, long k, int i, const Poly& p) {
  if (mode == DifferenceMode::PowerMinusId) {
    if (k == 0) throw DomainError("(sigma^k - Id) requires k != 0");
    return shift_sigma(i, k, p) - p;
  }
  if (k < 0) throw DomainError("(sigma - Id)^k requires k >= 0");
  Poly q = p;
  for (long step = 0; step < k && !q.is_zero(); ++step) q = shift_sigma(i, 1, q) - q;
  return q;
}

Poly evaluate_h(const Poly& p, std::span<const Rational> point) {
  const Ranks r = p.ranks();
  if (static_cast<int>(point.size()) != r.l) throw StructuralError("evaluation point has wrong length");
  std::vector<Term> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    Term u;
    u.coeff = t.coeff;
    for (int k = 0; k < r.l; ++k)
      if (t.exp[k] != 0) u.coeff *= pow(point[k], t.exp[k]);
    for (int k = r.l; k < r.vars(); ++k) u.exp[k] = t.exp[k];
    out.push_back(std::move(u));
  }
  return Poly::from_terms(r, std::move(out));
}

Poly remainder_mod_monic_h1(const Poly& p, const Poly& divisor) {
  const Ranks r = p.ranks();
  if (divisor.is_zero()) throw DomainError("division by zero polynomial");
  const int m = divisor.total_degree();
  bool univariate = true;
  for (const auto& t : divisor.terms())
    for (int k = 1; k < r.vars(); ++k)
      if (t.exp[k] != 0) univariate = false;
  if (!univariate || divisor.leading().coeff != 1) {
    throw DomainError("divisor must be monic and univariate in H1");
  }
  Poly rem = p;
  for (;;) {
    const Term* pick = nullptr;
    for (const auto& t : rem.terms())
      if (t.exp[0] >= m && (!pick || t.exp[0] > pick->exp[0])) pick = &t;
    if (!pick) return rem;
    Exponents e = pick->exp;
    e[0] = static_cast<std::uint16_t>(e[0] - m);
    Poly q = Poly::monomial(r, e, pick->coeff);
    rem -= q * divisor;
  }
}

}  // namespace torofree
