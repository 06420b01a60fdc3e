#include "torofree/ideal.hpp"

#include <algorithm>

namespace torofree {

namespace {

bool divides(const Exponents& a, const Exponents& b, int vars) {
  for (int k = 0; k < vars; ++k)
    if (a[k] > b[k]) return false;
  return true;
}

Exponents quotient(const Exponents& b, const Exponents& a, int vars) {
  Exponents q{};
  for (int k = 0; k < vars; ++k) q[k] = static_cast<std::uint16_t>(b[k] - a[k]);
  return q;
}

// Monomials in the first l slots of total degree d, ascending in the canonical order.
std::vector<Exponents> monomials_of_degree(int l, int d) {
  std::vector<Exponents> out;
  Exponents e{};
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == l - 1) {
      e[slot] = static_cast<std::uint16_t>(left);
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[slot] = static_cast<std::uint16_t>(k);
      self(self, slot + 1, left - k);
    }
    e[slot] = 0;
  };
  if (l == 0) {
    if (d == 0) out.push_back(e);
    return out;
  }
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [l](const Exponents& a, const Exponents& b) { return grlex_greater(b, a, l); });
  return out;
}

Rational monomial_value(const Exponents& e, const Point& z) {
  Rational v = 1;
  for (std::size_t k = 0; k < z.size(); ++k)
    if (e[k]) v *= pow(z[k], e[k]);
  return v;
}

}  // namespace

std::vector<Poly> vanishing_ideal(Ranks r, std::span<const Point> points) {
  const int l = r.l;
  const std::size_t npts = points.size();
  std::vector<Poly> basis;
  if (npts == 0) {
    basis.push_back(Poly::constant(r, 1));
    return basis;
  }
  // Echelon rows: evaluation vector with a pivot, plus the polynomial it came from.
  struct Row {
    std::vector<Rational> v;
    std::size_t pivot;
    Poly p;
  };
  std::vector<Row> rows;
  std::vector<Exponents> leads;
  for (int d = 0;; ++d) {
    const auto monos = monomials_of_degree(l, d);
    bool any_new = false;
    for (const auto& m : monos) {
      bool reducible = std::any_of(leads.begin(), leads.end(), [&](const Exponents& t) { return divides(t, m, l); });
      if (reducible) continue;
      any_new = true;
      std::vector<Rational> v(npts);
      for (std::size_t k = 0; k < npts; ++k) v[k] = monomial_value(m, points[k]);
      Poly p = Poly::monomial(r, m, 1);
      for (const auto& row : rows) {
        if (v[row.pivot] == 0) continue;
        Rational f = v[row.pivot];
        for (std::size_t k = 0; k < npts; ++k) v[k] -= f * row.v[k];
        p -= f * row.p;
      }
      auto nz = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
      if (nz == v.end()) {
        basis.push_back(std::move(p));
        leads.push_back(m);
        continue;
      }
      std::size_t pivot = static_cast<std::size_t>(nz - v.begin());
      Rational inv = 1 / v[pivot];
      for (auto& q : v) q *= inv;
      p *= inv;
      // Keep rows fully reduced so later eliminations stay consistent.
      for (auto& row : rows) {
        if (row.v[pivot] == 0) continue;
        Rational f = row.v[pivot];
        for (std::size_t k = 0; k < npts; ++k) row.v[k] -= f * v[k];
        row.p -= f * p;
      }
      rows.push_back({std::move(v), pivot, std::move(p)});
    }
    if (!any_new) break;
  }
  return basis;
}

Poly normal_form(const Poly& p, std::span<const Poly> g) {
  const Ranks r = p.ranks();
  const int vars = r.vars();
  Poly rem(r), cur = p;
  while (!cur.is_zero()) {
    const Term lead = cur.leading();
    bool reduced = false;
    for (const auto& q : g) {
      if (q.is_zero()) continue;
      const Term& ql = q.leading();
      if (!divides(ql.exp, lead.exp, vars)) continue;
      cur -= Poly::monomial(r, quotient(lead.exp, ql.exp, vars), lead.coeff / ql.coeff) * q;
      reduced = true;
      break;
    }
    if (!reduced) {
      Poly t = Poly::monomial(r, lead.exp, lead.coeff);
      rem += t;
      cur -= t;
    }
  }
  return rem;
}

bool is_groebner(std::span<const Poly> g) {
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      const Ranks r = g[a].ranks();
      const int vars = r.vars();
      const Term &ta = g[a].leading(), &tb = g[b].leading();
      Exponents lcm{};
      for (int k = 0; k < vars; ++k) lcm[k] = std::max(ta.exp[k], tb.exp[k]);
      Poly s = Poly::monomial(r, quotient(lcm, ta.exp, vars), 1 / ta.coeff) * g[a] -
               Poly::monomial(r, quotient(lcm, tb.exp, vars), 1 / tb.coeff) * g[b];
      if (!normal_form(s, g).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace torofree
