#include <doctest.h>

#include <set>

#include "torofree/lie.hpp"
#include "torofree/verify.hpp"

using namespace torofree;

namespace {

AlgebraDesc desc(Family f, int l, int n, Variant v, Rational c1 = 0, Rational c2 = 0) {
  AlgebraDesc A{f, l, n, v, std::move(c1), std::move(c2)};
  A.validate();
  return A;
}

Matrix elementary(int size, int r, int c) {
  Matrix m(size);
  m(r, c) = 1;
  return m;
}

}  // namespace

TEST_SUITE("finite_algebra") {
  TEST_CASE("sl2 realisation matches hand-written matrices") {
    const auto& g = finite_algebra(Family::A, 1);
    CHECK(g.dim() == 3);
    CHECK(g.matrix(g.x(1)) == elementary(2, 0, 1));
    CHECK(g.matrix(g.y(1)) == elementary(2, 1, 0));
    Matrix h(2);
    h(0, 0) = frac(1, 2);
    h(1, 1) = frac(-1, 2);
    CHECK(g.matrix(g.cartan(1)) == h);
  }

  TEST_CASE("dimensions") {
    CHECK(finite_algebra(Family::A, 2).dim() == 8);
    CHECK(finite_algebra(Family::A, 3).dim() == 15);
    CHECK(finite_algebra(Family::C, 2).dim() == 10);
    CHECK(finite_algebra(Family::C, 3).dim() == 21);
  }

  TEST_CASE("structure constants reproduce matrix commutators") {
    for (auto [f, l] : {std::pair{Family::A, 2}, {Family::C, 2}, {Family::A, 3}}) {
      const auto& g = finite_algebra(f, l);
      for (int a = 0; a < g.dim(); ++a)
        for (int b = 0; b < g.dim(); ++b) {
          Matrix sum(g.matrix_size());
          for (const auto& [k, c] : g.bracket(a, b)) sum = sum + c * g.matrix(k);
          CHECK(sum == commutator(g.matrix(a), g.matrix(b)));
        }
    }
  }

  TEST_CASE("coweights act diagonally on Chevalley generators") {
    for (auto [f, l] : {std::pair{Family::A, 2}, {Family::C, 2}}) {
      const auto& g = finite_algebra(f, l);
      for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j) {
          const Rational delta = i == j ? 1 : 0;
          CHECK(commutator(g.matrix(g.cartan(i)), g.matrix(g.x(j))) == delta * g.matrix(g.x(j)));
          CHECK(commutator(g.matrix(g.cartan(i)), g.matrix(g.y(j))) == -delta * g.matrix(g.y(j)));
        }
    }
  }

  TEST_CASE("trace form values") {
    const auto& g = finite_algebra(Family::A, 1);
    CHECK(g.form(g.x(1), g.y(1)) == 1);
    CHECK(g.form(g.x(1), g.x(1)) == 0);
    // (h1, h1) with h1 = diag(1, -1)
    Matrix h1(2);
    h1(0, 0) = 1;
    h1(1, 1) = -1;
    CHECK(trace(h1 * h1) == 2);
    const auto c = g.decompose(h1);
    Rational v = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) v += c[a] * c[b] * g.form(a, b);
    CHECK(v == 2);
  }

  TEST_CASE("generator words evaluate to the basis matrices") {
    for (auto [f, l] : {std::pair{Family::A, 2}, {Family::C, 2}, {Family::A, 3}}) {
      const auto& g = finite_algebra(f, l);
      for (int m = 0; m < g.dim(); ++m) {
        if (g.is_cartan(m)) continue;
        CHECK(g.evaluate(g.word(m)) == g.matrix(m));
      }
    }
    // E_13 = [E_12, E_23] in sl3
    const auto& g = finite_algebra(Family::A, 2);
    const auto m = *g.find("x[1,1]");
    CHECK(g.matrix(m) == elementary(3, 0, 2));
    CHECK(g.word(m).letters == std::vector<int>{g.x(1), g.x(2)});
    CHECK(g.word(m).scalar == 1);
    CHECK(g.word(g.x(1)).letters == std::vector<int>{g.x(1)});
  }

  TEST_CASE("unsupported types are rejected") {
    for (const char* t : {"B", "D", "E", "F", "G"}) CHECK_THROWS_AS(parse_family(t), DomainError);
    CHECK_THROWS_AS(desc(Family::C, 1, 0, Variant::Finite), StructuralError);
  }
}

TEST_SUITE("lie") {
  TEST_CASE("basis counts") {
    const auto A = desc(Family::A, 1, 1, Variant::Toroidal);
    const auto B = basis_of(A, {-1, 1});
    // oracle: dim g per degree, K_1 only at r = 0 when n = 1, d_1 at r = 0
    int expected = 0;
    for (int r = -1; r <= 1; ++r) expected += 3 + (r == 0 ? 1 : 0) + (r == 0 ? 1 : 0);
    CHECK(expected == 11);
    CHECK(B.size() == 11);

    const auto F = basis_of(desc(Family::A, 1, 0, Variant::Finite), {0, 0});
    std::set<std::string> names;
    for (const auto& s : F) names.insert(to_string(desc(Family::A, 1, 0, Variant::Finite), s));
    CHECK(names == std::set<std::string>{"H1", "x1", "y1"});

    const auto W = desc(Family::A, 1, 2, Variant::Witt);
    const auto WB = basis_of(W, {0, 0});
    REQUIRE(WB.size() == 2);
    CHECK(WB[0] == Symbol::deriv(1, {0, 0}));
    CHECK(WB[1] == Symbol::deriv(2, {0, 0}));

    // n = 2: K_1(r), K_2(r) span a line for every r != 0
    const auto T2 = desc(Family::A, 1, 2, Variant::Toroidal);
    int centrals = 0;
    for (const auto& s : basis_of(T2, {-1, 1})) centrals += s.kind == Symbol::Kind::Central;
    CHECK(centrals == 2 + 8);
  }

  TEST_CASE("central term of a loop bracket") {
    const auto A = desc(Family::A, 1, 1, Variant::Toroidal);
    const auto& g = A.fin();
    const LieElt got = bracket(A, Symbol::fin(g.x(1), {1}), Symbol::fin(g.y(1), {-1}));
    // oracle: [E12, E21] = diag(1,-1) = 2 H1, plus (x1, y1) * 1 * K_1(0)
    LieElt want = LieElt::of(Symbol::fin(g.cartan(1), {0}), 2);
    want.add(Symbol::central(1, {0}), 1);
    CHECK(got == want);
    CHECK(got == coroot(A, 1, {0}) + LieElt::of(Symbol::central(1, {0})));
  }

  TEST_CASE("dA relation") {
    LieElt k = LieElt::of(Symbol::central(1, {2, 3}), 2);
    k.add(Symbol::central(2, {2, 3}), 3);
    CHECK(k.is_zero());  // 2 K_1 + 3 K_2 = d(t^r) at r = (2, 3)
    CHECK(LieElt::of(Symbol::central(1, {2, 3})) == LieElt::of(Symbol::central(2, {2, 3}), frac(-3, 2)));
    CHECK(LieElt::of(Symbol::central(1, {1}), 5).is_zero());  // n = 1, r != 0
  }

  TEST_CASE("derivation brackets") {
    const auto T = desc(Family::A, 1, 2, Variant::Toroidal);
    CHECK(bracket(T, Symbol::deriv(1, {0, 0}), Symbol::deriv(2, {0, 0})).is_zero());
    const auto F = desc(Family::A, 1, 2, Variant::Full, 1, 1);
    const auto& g = F.fin();
    CHECK(bracket(F, Symbol::deriv(1, {1, 0}), Symbol::fin(g.x(1), {0, 2})).is_zero());
    // (u, s) x(r+s) with u = e_2, s = (0, 2)
    CHECK(bracket(F, Symbol::deriv(2, {1, 0}), Symbol::fin(g.x(1), {0, 2})) ==
          LieElt::of(Symbol::fin(g.x(1), {1, 2}), 2));
    // d_j acts on the loop degree
    CHECK(bracket(T, Symbol::deriv(1, {0, 0}), Symbol::fin(g.y(1), {3, -1})) ==
          LieElt::of(Symbol::fin(g.y(1), {3, -1}), 3));
  }

  TEST_CASE("cocycle values") {
    const Rational one = 1;
    const std::vector<Rational> e1{one};
    const LieElt a = derivation(e1, {1}), b = derivation(e1, {-1});
    // oracle: phi1(D(u,r), D(w,s)) = -(u.s)(w.r) sum_p r_p K_p(r+s) = -(-1)(1)(1) K_1(0)
    CHECK(cocycle(1, 0, a, b) == LieElt::of(Symbol::central(1, {0}), 1));
    const std::vector<Rational> e1n2{one, 0}, e2n2{0, one};
    const LieElt d1 = derivation(e1n2, {0, 0}), td2 = derivation(e2n2, {3, 1});
    CHECK(cocycle(0, 1, d1, td2).is_zero());
    CHECK(cocycle(0, 0, a, b).is_zero());
  }

  TEST_CASE("text round trip of elements") {
    const auto F = desc(Family::A, 2, 2, Variant::Full, 2, -3);
    for (const char* t : {"2*x1(1,0) - K2(0,0)", "D([1,-1],(2,1))", "x[1,1](0,0) + 1/2*y2(1,1)", "h1(0,0)"}) {
      const LieElt X = parse_element(F, t);
      CHECK(parse_element(F, to_string(F, X)) == X);
    }
    CHECK_THROWS(parse_element(F, "x3(0,0)"));
    CHECK_THROWS(parse_element(F, "x1(1)"));
  }

  TEST_CASE("Jacobi on sl3 toroidal and a corrupted bracket") {
    const auto A = desc(Family::A, 2, 1, Variant::Toroidal);
    VerifyOptions opt;
    opt.window = {-1, 1};
    opt.samples = 300;
    CHECK(jacobi_check(A, opt).passed());
    // triple the Cartan part of [x1, y1]; fails on (x1, y1, x2)
    const auto& g = A.fin();
    auto broken = [&A, &g](const Symbol& a, const Symbol& b) {
      LieElt out = bracket(A, a, b);
      if (a.kind != Symbol::Kind::Fin || b.kind != Symbol::Kind::Fin || a.index != g.x(1) || b.index != g.y(1))
        return out;
      LieElt scaled;
      for (const auto& [s, c] : out.terms()) scaled.add(s, s.kind == Symbol::Kind::Fin ? 3 * c : c);
      return scaled;
    };
    opt.samples = 0;
    CHECK_FALSE(jacobi_check(A, opt, broken).passed());
  }

  TEST_CASE("cocycle identity rejects a non-cocycle") {
    VerifyOptions opt;
    opt.window = {-2, 2};
    opt.samples = 40;
    CHECK(cocycle_identity_check(1, 0, 1, opt).passed());
    CHECK(cocycle_identity_check(0, 1, 2, opt).passed());
    auto bogus = [](const LieElt& X, const LieElt& Y) {
      // r_1^2 s_1 K_1(r+s): not a cocycle
      LieElt out;
      for (const auto& [a, ca] : X.terms())
        for (const auto& [b, cb] : Y.terms()) {
          Degree t = a.degree;
          for (std::size_t k = 0; k < t.size(); ++k) t[k] += b.degree[k];
          out.add(Symbol::central(1, t), ca * cb * a.degree[0] * a.degree[0] * b.degree[0]);
        }
      return out;
    };
    CHECK_FALSE(cocycle_identity_check(1, 0, 2, opt, bogus).passed());
  }
}
