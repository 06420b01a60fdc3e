#include "torofree/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace torofree {

namespace {

Degree zero_degree(const AlgebraDesc& A) { return Degree(A.degree_len(), 0); }

Poly one(Ranks r) { return Poly::constant(r, 1); }

bool is_nonneg_integer(const Rational& q) { return is_integer(q) && sgn(q) >= 0; }

Rational scalar_b(const ModuleSpec& spec) {
  if (!spec.base_b.d_free() || !spec.base_b.h_free())
    throw DomainError("simplicity prediction needs a scalar b, got " + to_string(spec.base_b));
  return spec.base_b.constant_term();
}

}  // namespace

SimplicityVerdict simplicity_predict(const ModuleSpec& spec) {
  spec.validate();
  if (spec.algebra.variant == Variant::Witt)
    throw DomainError("simplicity prediction is defined for the finite, toroidal and full variants");
  SimplicityVerdict v;
  if (spec.algebra.family == Family::C) {
    v.rule = "C-family always simple";
    return v;
  }
  const Rational b = scalar_b(spec);
  const int l = spec.algebra.rank;
  const int size = static_cast<int>(spec.S.size());
  const Rational lb = (l + 1) * b;
  v.printed_rule_simple = !is_nonneg_integer(lb) || (size >= 1 && size <= l);
  if (size >= 1 && size <= l) {
    v.rule = "1 <= |S| <= l";
  } else if (size == l + 1) {
    v.simple = !is_nonneg_integer(lb);
    v.rule = "S full: simple iff (l+1)b is not a non-negative integer";
  } else {
    v.simple = !is_nonneg_integer(-(l + 1) * (b + 1));
    v.rule = "S empty: simple iff -(l+1)(b+1) is not a non-negative integer";
  }
  return v;
}

// ---------------------------------------------------------------- witnesses

namespace {

struct Linear {
  std::vector<Rational> coef;  // per H variable
  Rational constant;
};

// Linear factor in H only; nullopt if it involves d or is not of degree 1.
std::optional<Linear> as_linear(const Poly& f) {
  if (!f.d_free() || f.total_degree() != 1) return std::nullopt;
  const Ranks r = f.ranks();
  Linear L{std::vector<Rational>(r.l, 0), f.constant_term()};
  for (int i = 1; i <= r.l; ++i) {
    Exponents e{};
    e[f.slot(VarId::H(i))] = 1;
    L.coef[i - 1] = f.coeff(e);
  }
  return L;
}

enum class Solve { Unique, Singular, Inconsistent };

// Solves coef . z = -constant for every row.
Solve solve_linear(std::vector<Linear> rows, int l, Point& out) {
  const int m = static_cast<int>(rows.size());
  std::vector<int> pivcol;
  int row = 0;
  for (int c = 0; c < l && row < m; ++c) {
    int p = row;
    while (p < m && sgn(rows[p].coef[c]) == 0) ++p;
    if (p == m) continue;
    std::swap(rows[p], rows[row]);
    const Rational inv = 1 / rows[row].coef[c];
    for (auto& x : rows[row].coef) x *= inv;
    rows[row].constant *= inv;
    for (int q = 0; q < m; ++q) {
      if (q == row || sgn(rows[q].coef[c]) == 0) continue;
      const Rational f = rows[q].coef[c];
      for (int k = 0; k < l; ++k) rows[q].coef[k] -= f * rows[row].coef[k];
      rows[q].constant -= f * rows[row].constant;
    }
    pivcol.push_back(c);
    ++row;
  }
  for (int q = row; q < m; ++q)
    if (sgn(rows[q].constant) != 0) return Solve::Inconsistent;
  if (row < l) return Solve::Singular;
  out.assign(l, 0);
  for (int k = 0; k < row; ++k) out[pivcol[k]] = -rows[k].constant;
  return Solve::Unique;
}

bool vanishes_at(const Poly& p, const Point& z) { return value_at(p, z).is_zero(); }

// Smallest set containing the seed with: X_i(z) != 0 => z - e_i in Z and
// Y_i(z) != 0 => z + e_i in Z. Empty result when the budget is exceeded.
std::vector<Point> closure(const Module& M, const Point& seed, std::size_t budget) {
  const int l = M.ranks().l;
  std::set<Point> seen{seed};
  std::vector<Point> queue{seed};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Point z = queue[head];
    for (int i = 1; i <= l; ++i) {
      for (int dir : {-1, 1}) {
        const Poly& f = dir < 0 ? M.x_one(i).value : M.y_one(i).value;
        if (vanishes_at(f, z)) continue;
        Point w = z;
        w[i - 1] += dir;
        if (seen.insert(w).second) {
          if (seen.size() > budget) return {};
          queue.push_back(std::move(w));
        }
      }
    }
  }
  return {seen.begin(), seen.end()};
}

int max_degree(const std::vector<Poly>& g) {
  int d = 0;
  for (const auto& p : g) d = std::max(d, p.total_degree());
  return d;
}

}  // namespace

WitnessReport submodule_witness_search(const ModuleSpec& spec, int maxdeg, DegreeWindow window) {
  spec.validate();
  if (spec.algebra.variant == Variant::Witt)
    throw DomainError("witness search needs a finite part (variant finite, toroidal or full)");
  WitnessReport rep;
  rep.checked_degree_bound = maxdeg;
  rep.checked_loop_window = window;
  if (maxdeg < 1) return rep;

  const Module M(spec);
  const int l = M.ranks().l;
  // A zero-dimensional ideal with generators of degree <= maxdeg has at most
  // maxdeg^l common zeros.
  std::size_t budget = 1;
  for (int i = 0; i < l; ++i) budget = std::min<std::size_t>(budget * maxdeg, 1u << 20);

  std::vector<std::vector<Linear>> choices(l);
  for (int i = 1; i <= l; ++i)
    for (const auto& f : M.y_one(i).factors)
      if (auto L = as_linear(f)) choices[i - 1].push_back(*L);
  for (const auto& c : choices)
    if (c.empty()) return rep;  // some Y_i never vanishes identically: no finite invariant set

  std::set<Point> seeds_done;
  std::vector<std::size_t> pick(l, 0);
  while (true) {
    std::vector<Linear> rows;
    for (int i = 0; i < l; ++i) rows.push_back(choices[i][pick[i]]);
    Point z;
    const Solve s = solve_linear(rows, l, z);
    if (s == Solve::Singular) ++rep.degenerate_seeds;
    if (s == Solve::Unique && seeds_done.insert(z).second) {
      ++rep.seeds_tried;
      auto pts = closure(M, z, budget);
      if (!pts.empty()) {
        auto G = vanishing_ideal(M.ranks(), pts);
        const int deg = max_degree(G);
        const bool better = !rep.found || deg < rep.witness_degree ||
                            (deg == rep.witness_degree && pts.size() < rep.points.size());
        if (deg <= maxdeg && better && witness_verify(spec, G, window)) {
          rep.found = true;
          rep.generators = std::move(G);
          rep.points = std::move(pts);
          rep.witness_degree = deg;
        }
      }
    }
    int k = 0;
    while (k < l && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == l) break;
  }
  if (rep.found && rep.generators.size() == 1) rep.witness = rep.generators.front();
  return rep;
}

bool witness_verify(const ModuleSpec& spec, const std::vector<Poly>& G, DegreeWindow window) {
  if (G.empty()) throw DomainError("witness has no generators");
  for (const auto& g : G) {
    if (g.ranks() != spec.ranks()) throw DomainError("witness ranks do not match the module");
    if (!g.d_free()) throw DomainError("witness must involve H variables only: " + to_string(g));
    if (g.total_degree() < 1) throw DomainError("witness must have degree >= 1: " + to_string(g));
    if (g.leading().coeff != 1) throw DomainError("witness must be monic: " + to_string(g));
  }
  if (!is_groebner(G)) throw DomainError("witness generators are not a Groebner basis");
  const Module M(spec);
  for (const auto& X : generator_symbols(spec.algebra, window))
    for (const auto& g : G)
      if (!normal_form(M.act(X, g), G).is_zero()) return false;
  return true;
}

bool witness_verify(const ModuleSpec& spec, const Poly& p, DegreeWindow window) {
  return witness_verify(spec, std::vector<Poly>{p}, window);
}

// ---------------------------------------------------------------- cyclicity

namespace {

// Row-echelon span keyed by leading monomial.
class Span {
 public:
  // Returns the reduced remainder (zero if already in the span).
  Poly insert(Poly p) {
    while (!p.is_zero()) {
      auto it = rows_.find(p.leading().exp);
      if (it == rows_.end()) break;
      const Rational c = p.leading().coeff / it->second.leading().coeff;
      p -= c * it->second;
    }
    if (!p.is_zero()) rows_.emplace(p.leading().exp, p);
    return p;
  }
  bool has_constant() const { return rows_.count(Exponents{}) != 0; }
  int size() const { return static_cast<int>(rows_.size()); }

 private:
  std::map<Exponents, Poly> rows_;
};

}  // namespace

CyclicityResult cyclicity_run(const ModuleSpec& spec, const Poly& w0, int max_word_len, int degbound,
                              DegreeWindow window) {
  (void)window;
  spec.validate();
  if (w0.is_zero()) throw DomainError("cyclicity check needs a nonzero start vector");
  const AlgebraDesc& A = spec.algebra;
  if (A.variant == Variant::Witt) throw DomainError("cyclicity check needs a finite part");
  if (A.variant == Variant::Finite && A.loop_vars > 0)
    throw DomainError("cyclicity over the finite variant needs n = 0 (central d_j act by multiplication)");
  const Module M(spec);
  const Ranks r = M.ranks();
  const int l = r.l;

  Poly w = w0;
  if (A.degree_len() > 0) {
    const Poly H1 = Poly::variable(r, VarId::H(1));
    for (int j = 1; j <= r.n; ++j) {
      Degree e(A.degree_len(), 0);
      e[j - 1] = 1;
      const Symbol h1e = Symbol::fin(A.fin().cartan(1), e);
      while (w.deg_in(VarId::d(j)) > 0) w = M.act(h1e, w) - spec.lambda[j - 1] * (H1 * w);
    }
  }

  CyclicityResult res;
  Span span;
  span.insert(w);
  res.span_dim = span.size();
  if (span.has_constant()) {
    res.reached_constant = true;
    return res;
  }
  const Degree z = zero_degree(A);
  std::vector<Symbol> ops;
  for (int i = 1; i <= l; ++i) {
    ops.push_back(Symbol::fin(A.fin().x(i), z));
    ops.push_back(Symbol::fin(A.fin().y(i), z));
  }
  std::vector<Poly> frontier{w};
  for (int round = 1; round <= max_word_len && !frontier.empty(); ++round) {
    res.rounds = round;
    std::vector<Poly> next;
    auto offer = [&](const Poly& g) {
      if (g.is_zero() || g.total_degree() > degbound) return;
      Poly rem = span.insert(g);
      if (!rem.is_zero()) next.push_back(std::move(rem));
    };
    for (const auto& f : frontier) {
      for (const auto& s : ops) offer(M.act(s, f));
      for (int i = 1; i <= l; ++i) offer(Poly::variable(r, VarId::H(i)) * f);
      if (span.has_constant()) break;
    }
    res.span_dim = span.size();
    if (span.has_constant()) {
      res.reached_constant = true;
      return res;
    }
    frontier = std::move(next);
  }
  return res;
}

bool cyclicity_check(const ModuleSpec& spec, const Poly& w, int max_word_len, int degbound, DegreeWindow window) {
  return cyclicity_run(spec, w, max_word_len, degbound, window).reached_constant;
}

// ---------------------------------------------------------------- central annihilation, loop scaling

namespace {

Counterexample on_one_failure(const AlgebraDesc& A, const Symbol& s, const Poly& expected, const Poly& got) {
  return {to_string(A, s), "1", to_string(expected), to_string(got), to_string(got - expected)};
}

}  // namespace

CheckReport check_assertion_A(const ActionOracle& oracle, DegreeWindow window) {
  const AlgebraDesc& A = oracle.algebra();
  CheckReport rep;
  rep.name = "central_annihilation";
  if (!A.has_center()) return rep;
  const Poly zero(oracle.ranks());
  for (const auto& a : degrees_in(A.degree_len(), window))
    for (int j = 1; j <= A.loop_vars; ++j) {
      const Symbol s = Symbol::central(j, a);
      const Poly got = oracle.on_one(s);
      ++rep.cases;
      if (!got.is_zero()) rep.record(on_one_failure(A, s, zero, got));
    }
  return rep;
}

CheckReport check_assertion_B(const ActionOracle& oracle, const std::vector<Rational>& lambda,
                              DegreeWindow window) {
  const AlgebraDesc& A = oracle.algebra();
  CheckReport rep;
  rep.name = "loop_scaling";
  if (!A.has_finite_part()) return rep;
  if (static_cast<int>(lambda.size()) != A.degree_len())
    throw DomainError("lambda has the wrong length for this algebra");
  const FiniteAlgebra& g = A.fin();
  const Degree z = zero_degree(A);
  std::vector<int> ms;
  for (int i = 1; i <= A.rank; ++i) {
    ms.push_back(g.x(i));
    ms.push_back(g.y(i));
    ms.push_back(g.cartan(i));
  }
  for (int m : ms) {
    const Poly base = oracle.on_one(Symbol::fin(m, z));
    for (const auto& a : degrees_in(A.degree_len(), window)) {
      Rational f = 1;
      for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != 0) f *= pow(lambda[j], a[j]);
      const Symbol s = Symbol::fin(m, a);
      const Poly expected = f * base;
      const Poly got = oracle.on_one(s);
      ++rep.cases;
      if (!(got == expected)) rep.record(on_one_failure(A, s, expected, got));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- recovery

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& what) { throw ClassificationError(code, what); }

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  Rational out(n, d);
  out.canonicalize();
  return out;
}

// Square root in Q[vars] by leading-term division; nullopt if not a square.
std::optional<Poly> poly_sqrt(const Poly& P) {
  const Ranks r = P.ranks();
  if (P.is_zero()) return Poly(r);
  const Term& top = P.leading();
  Exponents half{};
  for (int k = 0; k < r.vars(); ++k) {
    if (top.exp[k] % 2) return std::nullopt;
    half[k] = top.exp[k] / 2;
  }
  auto c = rational_sqrt(top.coeff);
  if (!c) return std::nullopt;
  Poly root = Poly::monomial(r, half, *c);
  const Term lead = root.leading();
  Poly rem = P - root * root;
  while (!rem.is_zero()) {
    const Term& t = rem.leading();
    Exponents e{};
    for (int k = 0; k < r.vars(); ++k) {
      if (t.exp[k] < lead.exp[k]) return std::nullopt;
      e[k] = t.exp[k] - lead.exp[k];
    }
    if (!grlex_greater(lead.exp, e, r.vars())) return std::nullopt;
    const Poly q = Poly::monomial(r, e, t.coeff / (2 * lead.coeff));
    rem -= (Rational(2) * root + q) * q;
    root += q;
  }
  return root;
}

Exponents h_part(const Exponents& e, const Poly& p) {
  Exponents h{};
  for (int i = 1; i <= p.ranks().l; ++i) h[p.slot(VarId::H(i))] = e[p.slot(VarId::H(i))];
  return h;
}

// Coefficient of an H-monomial, as a polynomial in the d variables.
Poly h_coeff(const Poly& p, const Exponents& hmono) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (h_part(t.exp, p) != hmono) continue;
    Term u = t;
    for (int i = 1; i <= p.ranks().l; ++i) u.exp[p.slot(VarId::H(i))] = 0;
    out.push_back(std::move(u));
  }
  return Poly::from_terms(p.ranks(), std::move(out));
}

std::set<Exponents> h_monomials(const Poly& p) {
  std::set<Exponents> out;
  for (const auto& t : p.terms()) out.insert(h_part(t.exp, p));
  return out;
}

ModuleSpec base_spec(const AlgebraDesc& A, Ranks r, std::vector<Rational> a, Poly b, std::vector<int> S) {
  ModuleSpec s;
  s.algebra = AlgebraDesc{A.family, A.rank, r.n, Variant::Finite, 0, 0};
  s.base_a = std::move(a);
  s.base_b = std::move(b);
  s.S = std::move(S);
  return s;
}

// Quadratic-in-b template of one generator image: coefficient triples per H-monomial.
struct Template {
  std::map<Exponents, std::array<Rational, 3>> coeff;  // A0 + A1 b + A2 b^2
  Exponents top{};
};

struct Observed {
  std::vector<Poly> x, y;
};

std::vector<std::vector<int>> all_subsets(int bound) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << bound); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < bound; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    out.push_back(std::move(s));
  }
  return out;
}

// Preferred representative: largest constant term of b (b and -1-b can give
// the same module), then S, then a.
bool candidate_less(const DecodedBase& u, const DecodedBase& v) {
  const Rational cu = u.base_b.constant_term(), cv = v.base_b.constant_term();
  if (cu != cv) return cu > cv;
  if (u.base_b != v.base_b) return to_string(u.base_b) < to_string(v.base_b);
  if (u.S != v.S) return u.S < v.S;
  return u.base_a < v.base_a;
}

std::vector<DecodedBase> decode_base(const AlgebraDesc& A, Ranks r, const Observed& obs) {
  const int l = A.rank;
  const bool A_family = A.family == Family::A;
  const int bound = A_family ? l + 1 : l;
  std::vector<DecodedBase> found;
  for (const auto& S : all_subsets(bound)) {
    // Templates at a = 1 and b = 0, 1, 2 (b = 0 only for the C family).
    const int nb = A_family ? 3 : 1;
    std::vector<std::vector<Factored>> tx(nb), ty(nb);
    for (int k = 0; k < nb; ++k) {
      auto s = base_spec(A, r, std::vector<Rational>(l, 1), Poly::constant(r, k), S);
      tx[k] = chevalley_x_images(s);
      ty[k] = chevalley_y_images(s);
    }
    auto make_template = [&](const std::vector<std::vector<Factored>>& t, int i) {
      Template T;
      std::set<Exponents> monos;
      for (int k = 0; k < nb; ++k)
        for (auto m : h_monomials(t[k][i].value)) monos.insert(m);
      for (const auto& m : monos) {
        Rational v[3];
        for (int k = 0; k < nb; ++k) v[k] = h_coeff(t[k][i].value, m).constant_term();
        std::array<Rational, 3> c{v[0], 0, 0};
        if (nb == 3) {
          c[2] = (v[2] - 2 * v[1] + v[0]) / 2;
          c[1] = v[1] - v[0] - c[2];
        }
        T.coeff[m] = c;
      }
      T.top = h_part(t[0][i].value.leading().exp, t[0][i].value);
      return T;
    };

    // a_i from the top H-monomial of x_i . 1, which carries no b.
    std::vector<Rational> a(l);
    bool ok = true;
    std::vector<Template> Tx, Ty;
    for (int i = 0; i < l && ok; ++i) {
      Tx.push_back(make_template(tx, i));
      Ty.push_back(make_template(ty, i));
      const auto& c = Tx.back().coeff[Tx.back().top];
      const Poly o = h_coeff(obs.x[i], Tx.back().top);
      if (!o.d_free() || sgn(c[1]) != 0 || sgn(c[2]) != 0 || o.is_zero()) ok = false;
      else a[i] = o.constant_term() / c[0];
    }
    if (!ok) continue;

    std::vector<Poly> bs;
    if (!A_family) {
      bs.push_back(Poly(r));
    } else {
      // Equations A2 b^2 + A1 b + (A0 - obs/scale) = 0 per H-monomial.
      std::optional<Poly> linear;
      std::optional<std::pair<Rational, Poly>> quad;  // (A1/A2, (A0 - o)/A2)
      for (int i = 0; i < l && !linear; ++i) {
        for (int side = 0; side < 2 && !linear; ++side) {
          const Template& T = side == 0 ? Tx[i] : Ty[i];
          const Rational scale = side == 0 ? a[i] : 1 / a[i];
          const Poly& o = side == 0 ? obs.x[i] : obs.y[i];
          for (const auto& [m, c] : T.coeff) {
            if (sgn(c[1]) == 0 && sgn(c[2]) == 0) continue;
            const Poly rest = Poly::constant(r, c[0]) - (1 / scale) * h_coeff(o, m);
            if (sgn(c[2]) == 0) {
              linear = (-1 / c[1]) * rest;
              break;
            }
            if (!quad) quad.emplace(c[1] / c[2], (1 / c[2]) * rest);
          }
        }
      }
      if (linear) {
        bs.push_back(*linear);
      } else if (quad) {
        // (b + p/2)^2 = p^2/4 - q
        const Rational p = quad->first;
        const Poly disc = Poly::constant(r, p * p / 4) - quad->second;
        if (auto s = poly_sqrt(disc)) {
          bs.push_back(*s - Poly::constant(r, p / 2));
          bs.push_back(-*s - Poly::constant(r, p / 2));
        }
      }
    }
    for (auto& b : bs) {
      if (!b.h_free()) continue;
      ModuleSpec cand = base_spec(A, r, a, b, S);
      try {
        cand.validate();
      } catch (const StructuralError&) {
        continue;
      }
      const auto xs = chevalley_x_images(cand), ys = chevalley_y_images(cand);
      bool match = true;
      for (int i = 0; i < l && match; ++i) match = xs[i].value == obs.x[i] && ys[i].value == obs.y[i];
      if (!match) continue;
      DecodedBase d{a, b, S};
      bool dup = false;
      for (const auto& f : found) dup |= f.S == d.S && f.base_a == d.base_a && f.base_b == d.base_b;
      if (!dup) found.push_back(std::move(d));
    }
  }
  std::sort(found.begin(), found.end(), candidate_less);
  return found;
}

}  // namespace

ModuleSpec RecoveredParams::to_spec(const AlgebraDesc& A) const {
  ModuleSpec s;
  s.algebra = A;
  s.lambda = lambda;
  s.witt_a = witt_a;
  if (A.has_finite_part()) {
    const DecodedBase* d = preferred();
    if (!d) throw ClassificationError("undecodable-factor-pattern", "no base parameters were decoded");
    s.base_a = d->base_a;
    s.base_b = d->base_b;
    s.S = d->S;
  } else {
    s.base_b = Poly(Ranks{A.rank, A.loop_vars});
  }
  s.validate();
  return s;
}

RecoveredParams recover_parameters(const ActionOracle& oracle) {
  const AlgebraDesc& A = oracle.algebra();
  A.validate();
  const Ranks r = oracle.ranks();
  const int nlen = A.degree_len();
  const Degree z = zero_degree(A);
  RecoveredParams out;

  if (A.has_finite_part()) {
    const FiniteAlgebra& g = A.fin();
    std::vector<Poly> probes{one(r)};
    for (std::uint64_t k = 0; k < 3; ++k) {
      auto rng = case_rng(0x9e3779b9u, k);
      probes.push_back(random_poly(r, rng, {3, 4}));
    }
    for (int i = 1; i <= A.rank; ++i) {
      const Poly Hi = Poly::variable(r, VarId::H(i));
      for (const auto& p : probes) {
        const Poly got = oracle(Symbol::fin(g.cartan(i), z), p);
        if (!(got == Hi * p))
          fail("cartan-not-multiplication", "H" + std::to_string(i) + " applied to " + to_string(p) + " gave " +
                                                to_string(got));
      }
    }
  }

  if (A.has_center()) {
    const auto rep = check_assertion_A(oracle, {-1, 1});
    if (!rep.passed()) {
      const auto& f = rep.failures.front();
      fail("central-annihilation", f.generator + " . 1 = " + f.got + ", expected 0");
    }
  }

  // lambda from the Cartan part: H_i(e_j) . 1 = lambda_j H_i for every i.
  if (A.has_finite_part() && nlen > 0) {
    const FiniteAlgebra& g = A.fin();
    out.lambda.resize(nlen);
    for (int j = 0; j < nlen; ++j) {
      Degree e(nlen, 0);
      e[j] = 1;
      std::optional<Rational> lam;
      for (int i = 1; i <= A.rank; ++i) {
        const Poly Hi = Poly::variable(r, VarId::H(i));
        const Poly got = oracle.on_one(Symbol::fin(g.cartan(i), e));
        Exponents ex{};
        ex[Hi.slot(VarId::H(i))] = 1;
        const Rational c = got.coeff(ex);
        if (sgn(c) == 0 || !(got == c * Hi))
          fail("loop-scaling", "H" + std::to_string(i) + degree_text(e) + " . 1 = " + to_string(got) +
                                   " is not a nonzero multiple of H" + std::to_string(i));
        if (lam && *lam != c)
          fail("lambda-consistency", "H_i(e_" + std::to_string(j + 1) + ") . 1 gives ratio " + to_string(*lam) +
                                         " for i = 1 but " + to_string(c) + " for i = " + std::to_string(i));
        lam = c;
      }
      out.lambda[j] = *lam;
    }
    const auto rep = check_assertion_B(oracle, out.lambda, {-1, 1});
    if (!rep.passed()) {
      const auto& f = rep.failures.front();
      fail("loop-scaling", f.generator + " . 1 = " + f.got + ", expected " + f.expected);
    }
  }

  // Witt part: t^{e_j} d_j . 1 = gamma_j (d_j - (a+1)).
  if (A.variant == Variant::Witt || A.variant == Variant::Full) {
    std::vector<Rational> gamma(nlen);
    std::optional<Rational> a;
    for (int j = 0; j < nlen; ++j) {
      Degree e(nlen, 0);
      e[j] = 1;
      const Poly got = oracle.on_one(Symbol::deriv(j + 1, e));
      const Poly dj = Poly::variable(r, VarId::d(j + 1));
      Exponents ex{};
      ex[dj.slot(VarId::d(j + 1))] = 1;
      const Rational gj = got.coeff(ex);
      const Poly rest = got - gj * dj;
      if (sgn(gj) == 0 || !rest.is_constant())
        fail("witt-action-mismatch", "t^e" + std::to_string(j + 1) + " d" + std::to_string(j + 1) +
                                         " . 1 = " + to_string(got) + " is not of the form g (d_j - c)");
      const Rational aj = -rest.constant_term() / gj - 1;
      if (a && *a != aj) fail("witt-action-mismatch", "the Witt parameter differs between loop variables");
      a = aj;
      gamma[j] = gj;
    }
    if (A.variant == Variant::Full && gamma != out.lambda)
      fail("witt-lambda-mismatch", "Witt scaling differs from the loop scaling of the finite part");
    out.lambda = gamma;
    out.witt_a = a;
    // Full check on the window {-1..1}: t^r d_i . 1 = lambda^r (d_i - r_i (a+1)).
    for (const auto& rr : degrees_in(nlen, {-1, 1})) {
      Rational f = 1;
      for (int j = 0; j < nlen; ++j)
        if (rr[j] != 0) f *= pow(gamma[j], rr[j]);
      for (int i = 1; i <= nlen; ++i) {
        const Poly expected =
            f * (Poly::variable(r, VarId::d(i)) - Poly::constant(r, Rational(rr[i - 1]) * (*a + 1)));
        const Poly got = oracle.on_one(Symbol::deriv(i, rr));
        if (!(got == expected))
          fail("witt-action-mismatch", to_string(A, Symbol::deriv(i, rr)) + " . 1 = " + to_string(got) +
                                           ", expected " + to_string(expected));
      }
    }
  }

  if (A.has_finite_part()) {
    const FiniteAlgebra& g = A.fin();
    Observed obs;
    for (int i = 1; i <= A.rank; ++i) {
      obs.x.push_back(oracle.on_one(Symbol::fin(g.x(i), z)));
      obs.y.push_back(oracle.on_one(Symbol::fin(g.y(i), z)));
    }
    out.x1_list = obs.x;
    out.y1_list = obs.y;
    out.candidates = decode_base(A, r, obs);
    if (out.candidates.empty())
      fail("undecodable-factor-pattern", "x_i . 1, y_i . 1 match no (a, b, S) pattern");
    if (A.variant != Variant::Finite) {
      std::erase_if(out.candidates, [](const DecodedBase& d) { return !d.base_b.d_free(); });
      if (out.candidates.empty())
        fail("undecodable-factor-pattern", "b must be a scalar outside the finite variant");
    }
  }
  return out;
}

// ---------------------------------------------------------------- isomorphism

bool iso_test(const ModuleSpec& s1, const ModuleSpec& s2) {
  s1.validate();
  s2.validate();
  const AlgebraDesc &A = s1.algebra, &B = s2.algebra;
  if (A.family != B.family || A.rank != B.rank || A.loop_vars != B.loop_vars || A.variant != B.variant ||
      A.c1 != B.c1 || A.c2 != B.c2)
    throw DomainError("iso_test needs modules over the same algebra");
  const Module M1(s1), M2(s2);  // canonicalizes the rationals
  if (M1.spec().lambda != M2.spec().lambda || M1.spec().witt_a != M2.spec().witt_a) return false;
  for (int i = 1; i <= (A.has_finite_part() ? A.rank : 0); ++i)
    if (!(M1.x_one(i).value == M2.x_one(i).value) || !(M1.y_one(i).value == M2.y_one(i).value)) return false;
  return true;
}

}  // namespace torofree
