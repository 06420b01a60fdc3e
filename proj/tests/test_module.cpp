#include <doctest.h>

#include "oracles.hpp"
#include "torofree/json_io.hpp"
#include "torofree/module.hpp"
#include "torofree/oracle.hpp"
#include "torofree/verify.hpp"

using namespace torofree;

namespace {

AlgebraDesc desc(Family f, int l, int n, Variant v, Rational c1 = 0, Rational c2 = 0) {
  return AlgebraDesc{f, l, n, v, std::move(c1), std::move(c2)};
}

Poly P(const ModuleSpec& s, const char* t) { return parse_poly(t, s.ranks()); }

Symbol fin(const ModuleSpec& s, const char* name, Degree r) {
  return Symbol::fin(*s.algebra.fin().find(name), std::move(r));
}

// sl2, a = (2), b = 3, S = {1}
ModuleSpec sl2_base(Variant v = Variant::Finite, int n = 0, std::vector<Rational> lambda = {},
                    std::optional<Rational> witt = std::nullopt) {
  return make_spec(desc(Family::A, 1, n, v), std::move(lambda), witt, {2}, "3", {1});
}

}  // namespace

TEST_SUITE("module") {
  TEST_CASE("sl2 generator images") {
    const auto s = sl2_base();
    const Poly one = P(s, "1");
    CHECK(act_chevalley_A(s, fin(s, "x1", {}), one) == P(s, "2"));
    CHECK(act_chevalley_A(s, fin(s, "y1", {}), one) == P(s, "1/2*(H1 - 3)*(-H1 - 4)"));
    const auto t = sl2_base(Variant::Toroidal, 1, {5});
    CHECK(Module(t).act(fin(t, "H1", {0}), P(t, "H1*d1")) == P(t, "H1^2*d1"));
  }

  TEST_CASE("sp4 generator images") {
    const auto s = make_spec(desc(Family::C, 2, 0, Variant::Finite), {}, std::nullopt, {1, 1}, "0", {1, 2});
    CHECK(act_chevalley_C(s, fin(s, "H2", {}), P(s, "H1")) == P(s, "H1*H2"));
    CHECK(act_chevalley_C(s, fin(s, "x1", {}), P(s, "1")) == P(s, "2*H2 - H1 + 1/2"));
    CHECK(act_chevalley_C(s, fin(s, "x2", {}), P(s, "1")) == P(s, "1"));
    CHECK_THROWS_AS(act_chevalley_A(s, fin(s, "x1", {}), P(s, "1")), DomainError);
    CHECK_THROWS_AS(act_chevalley_C(s, fin(s, "x[1,1]", {}), P(s, "1")), DomainError);
  }

  TEST_CASE("toroidal action") {
    const auto s = sl2_base(Variant::Toroidal, 1, {5});
    CHECK(act_toroidal(s, fin(s, "H1", {1}), P(s, "d1")) == P(s, "5*H1*(d1 - 1)"));
    CHECK(act_toroidal(s, Symbol::central(1, {0}), P(s, "H1^3 + d1")).is_zero());
    CHECK(act_toroidal(s, fin(s, "x1", {2}), P(s, "1")) == P(s, "50"));
    CHECK(act_toroidal(s, Symbol::deriv(1, {0}), P(s, "H1")) == P(s, "H1*d1"));
  }

  TEST_CASE("Witt action") {
    auto s = make_spec(desc(Family::A, 1, 1, Variant::Witt), {2}, 0, {}, "0", {});
    CHECK(act_witt(s, Symbol::deriv(1, {1}), P(s, "1")) == P(s, "2*(d1 - 1)"));
    CHECK(act_witt(s, Symbol::deriv(1, {0}), P(s, "d1^2 + 3")) == P(s, "d1^3 + 3*d1"));
    CHECK_THROWS_AS(act_witt(s, Symbol::deriv(1, {1}), P(s, "H1")), DomainError);
    auto w = make_spec(desc(Family::A, 1, 2, Variant::Witt), {1, 1}, -1, {}, "0", {});
    const Poly f = P(w, "d1^2*d2 - 4*d2 + 7");
    CHECK(act_witt(w, Symbol::deriv(1, {1, 1}), f) == P(w, "d1") * shift_tau(std::vector<int>{1, 1}, f));
  }

  TEST_CASE("full toroidal action") {
    const auto s0 = sl2_base(Variant::Full, 1, {2}, 0);
    CHECK(act_full(s0, Symbol::deriv(1, {1}), P(s0, "1")) == P(s0, "2*(d1 - 1)"));
    CHECK(act_full(s0, Symbol::central(1, {0}), P(s0, "H1")).is_zero());
    const auto s1 = sl2_base(Variant::Full, 1, {2}, 1);
    CHECK(act_full(s1, Symbol::deriv(1, {-1}), P(s1, "d1")) == P(s1, "1/2*(d1 + 1)*(d1 + 2)"));
    CHECK(act_full(s1, Symbol::deriv(1, {0}), P(s1, "H1 + d1")) == P(s1, "(H1 + d1)*d1"));
  }

  TEST_CASE("elements and words") {
    const auto s = sl2_base();
    const auto& A = s.algebra;
    const Poly one = P(s, "1");
    const LieElt xy = bracket(A, LieElt::of(fin(s, "x1", {})), LieElt::of(fin(s, "y1", {})));
    CHECK(act_element(s, xy, one) == P(s, "2*H1"));
    // oracle: x1.(y1.1) - y1.(x1.1) from the explicit formulas
    const Symbol x = fin(s, "x1", {}), y = fin(s, "y1", {});
    const std::vector<Symbol> w1{x, y}, w2{y, x};
    CHECK(act_word(s, w1, one) - act_word(s, w2, one) == act_element(s, xy, one));
    CHECK(act_element(s, LieElt{}, P(s, "H1")).is_zero());
    CHECK(act_word(s, std::vector<Symbol>{}, P(s, "H1 + 2")) == P(s, "H1 + 2"));
    const std::vector<Symbol> hh{fin(s, "H1", {}), fin(s, "H1", {})};
    CHECK(act_word(s, hh, one) == P(s, "H1^2"));

    // E_13 in sl3 acts as the commutator x1 x2 - x2 x1 times its word scalar
    const auto t = make_spec(desc(Family::A, 2, 0, Variant::Finite), {}, std::nullopt, {3, -1}, "1/2", {2});
    const auto& g = t.algebra.fin();
    const int e13 = *g.find("x[1,1]");
    const Poly p = P(t, "H1^2 - H2 + 1");
    const Symbol x1 = fin(t, "x1", {}), x2 = fin(t, "x2", {});
    const std::vector<Symbol> a{x1, x2}, b{x2, x1};
    CHECK(act_element(t, LieElt::of(Symbol::fin(e13, {})), p) ==
          g.word(e13).scalar * (act_word(t, a, p) - act_word(t, b, p)));
  }

  TEST_CASE("A-family action agrees with pointwise formulas") {
    // oracle: (X_i(r) . p)(z) = lambda^r p(z - e_i, d - r) X_i(z), X_i(z) from the factor rules
    for (int l : {1, 2})
      for (unsigned mask = 0; mask < (1u << (l + 1)); ++mask) {
        std::vector<int> S;
        for (int i = 0; i <= l; ++i)
          if (mask >> i & 1) S.push_back(i + 1);
        std::vector<Rational> a;
        for (int i = 0; i < l; ++i) a.push_back(frac(i + 2, 1 + i % 2) * (i % 2 ? -1 : 1));
        const Rational b = frac(-2, 3);
        const auto s = make_spec(desc(Family::A, l, 1, Variant::Toroidal), {frac(-3, 2)}, std::nullopt, a, "-2/3", S);
        const Module M(s);
        auto rng = case_rng(21, mask);
        const Poly p = random_poly(s.ranks(), rng, {3, 5});
        for (int i = 1; i <= l; ++i)
          for (int r : {-2, 1}) {
            for (int side = 0; side < 2; ++side) {
              const Symbol g = fin(s, side == 0 ? ("x" + std::to_string(i)).c_str() : ("y" + std::to_string(i)).c_str(),
                                   {r});
              const Poly got = M.act(g, p);
              CHECK(oracle::agree([&](const auto& z) -> Rational { return oracle::eval(got, z); },
                                  [&](const auto& z) -> Rational {
                                    std::vector<Rational> H(z.begin(), z.begin() + l), w = z;
                                    w[i - 1] += side == 0 ? -1 : 1;
                                    w[l] -= r;
                                    const Rational f = side == 0 ? oracle::a_family_x(l, i, a, b, S, H)
                                                                 : oracle::a_family_y(l, i, a, b, S, H);
                                    return pow(frac(-3, 2), r) * oracle::eval(p, w) * f;
                                  },
                                  l + 1));
            }
          }
      }
  }

  TEST_CASE("spec validation") {
    const auto T = desc(Family::A, 1, 1, Variant::Toroidal);
    CHECK_THROWS_AS(make_spec(T, {0}, std::nullopt, {1}, "0", {}), StructuralError);
    CHECK_THROWS_AS(make_spec(T, {1}, std::nullopt, {0}, "0", {}), StructuralError);
    CHECK_THROWS_AS(make_spec(T, {1}, std::nullopt, {1}, "d1", {}), StructuralError);
    CHECK_THROWS_AS(make_spec(T, {1}, std::nullopt, {1}, "0", {3}), StructuralError);
    CHECK_THROWS_AS(make_spec(T, {1}, 2, {1}, "0", {}), StructuralError);
    CHECK_THROWS_AS(make_spec(T, {1, 2}, std::nullopt, {1}, "0", {}), StructuralError);
    const auto F = desc(Family::A, 1, 1, Variant::Finite);
    CHECK_THROWS_AS(make_spec(F, {}, std::nullopt, {1}, "H1", {}), StructuralError);
    CHECK_NOTHROW(make_spec(F, {}, std::nullopt, {1}, "d1^2 - 1", {}));
    const auto C = desc(Family::C, 2, 0, Variant::Finite);
    CHECK_THROWS_AS(make_spec(C, {}, std::nullopt, {1, 1}, "1", {}), StructuralError);
    CHECK_THROWS_AS(make_spec(C, {}, std::nullopt, {1, 1}, "0", {3}), StructuralError);
  }

  TEST_CASE("C-family formula listing") {
    const auto lines = c_family_formulas(2);
    CHECK(lines.size() >= 4);
  }
}

TEST_SUITE("verify") {
  TEST_CASE("sl2 toroidal bracket compatibility and the central identity") {
    const auto s = sl2_base(Variant::Toroidal, 1, {5});
    VerifyOptions opt;
    opt.window = {-2, 2};
    opt.samples = 20;
    CHECK(bracket_compat_check(s, opt).passed());
    CHECK(central_bracket_check(make_oracle(s), opt).passed());
    CHECK(twist_factor_check(make_oracle(s), opt).passed());
    CHECK(freeness_check(make_oracle(s), opt).passed());
  }

  TEST_CASE("injected defects are caught") {
    const auto s = sl2_base(Variant::Toroidal, 1, {5});
    const ActionOracle base = make_oracle(s);
    VerifyOptions opt;
    opt.window = {-1, 1};
    opt.samples = 5;
    // wrong loop scaling on one generator
    const auto bad = with_override(base, [&](const Symbol& g, const Poly& p) -> std::optional<Poly> {
      if (g == fin(s, "x1", {1})) return 4 * base(g, p);
      return std::nullopt;
    });
    const auto rep = bracket_compat_check(bad, opt);
    CHECK_FALSE(rep.passed());
    REQUIRE(!rep.failures.empty());
    CHECK(rep.failures.size() <= kKeptFailures);
    // scaling keeps the twisted form, an added untwisted term does not
    CHECK(twist_factor_check(bad, opt).passed());
    const auto untwisted = with_override(base, [&](const Symbol& g, const Poly& p) -> std::optional<Poly> {
      if (g == fin(s, "x1", {1})) return base(g, p) + P(s, "d1") * p;
      return std::nullopt;
    });
    CHECK_FALSE(twist_factor_check(untwisted, opt).passed());
    // Cartan not acting by multiplication
    const auto bad2 = with_override(base, [&](const Symbol& g, const Poly& p) -> std::optional<Poly> {
      if (g == fin(s, "H1", {0})) return P(s, "H1") * p + p;
      return std::nullopt;
    });
    CHECK_FALSE(freeness_check(bad2, opt).passed());
    // center acting nontrivially
    const auto bad3 = with_override(base, [&](const Symbol& g, const Poly& p) -> std::optional<Poly> {
      if (g.kind == Symbol::Kind::Central) return p;
      return std::nullopt;
    });
    CHECK_FALSE(central_bracket_check(bad3, opt).passed());
    // degree reduction with a wrong lambda
    const auto dr = degree_reduction_check(base, {3}, opt);
    CHECK_FALSE(dr.passed());
    // a broken difference operator
    auto broken = [](DifferenceMode m, long k, int i, const Poly& p) {
      return m == DifferenceMode::PowerMinusId ? shift_sigma(i, k, p) : shift_difference(m, k, i, p);
    };
    CHECK_FALSE(lemma_pa_property(Ranks{1, 1}, opt, broken).passed());
  }

  TEST_CASE("sp4 y_1 factor: only the +1/2 reading is a module") {
    const auto s = make_spec(desc(Family::C, 2, 0, Variant::Finite), {}, std::nullopt, {1, 1}, "0", {1, 2});
    const ActionOracle base = make_oracle(s);
    const Symbol y1 = fin(s, "y1", {});
    VerifyOptions opt;
    opt.window = {0, 0};
    opt.samples = 5;
    for (auto [text, ok] : {std::pair{"H1 + 1/2", true}, {"H1 - 1/2", false}}) {
      const Poly f = P(s, text);
      const auto o = with_override(base, [&](const Symbol& g, const Poly& p) -> std::optional<Poly> {
        if (g == y1) return shift_sigma(1, -1, p) * f;
        return std::nullopt;
      });
      CHECK(bracket_compat_check(o, opt).passed() == ok);
    }
  }

  TEST_CASE("degree reduction example") {
    const auto s = sl2_base(Variant::Toroidal, 1, {5});
    const Module M(s);
    const Poly w = P(s, "d1*H1");
    const Poly got = M.act(fin(s, "H1", {1}), w) - 5 * (P(s, "H1") * w);
    CHECK(got == P(s, "-5*H1^2"));
    const Poly free = P(s, "H1^2 + 1");
    CHECK((M.act(fin(s, "H1", {1}), free) - 5 * (P(s, "H1") * free)).is_zero());
  }

  TEST_CASE("serial reference and parallel runs produce identical reports") {
    for (const auto& s : {sl2_base(Variant::Full, 2, {3, -2}, 5),
                          make_spec(desc(Family::C, 2, 1, Variant::Toroidal), {frac(1, 2)}, std::nullopt,
                                    {1, -3}, "0", {2})}) {
      VerifyOptions ser, par;
      ser.window = par.window = {-1, 1};
      ser.samples = par.samples = 4;
      ser.seed = par.seed = 99;
      ser.exec = Exec::Serial;
      par.exec = Exec::Parallel;
      const auto a = run_suites(s, ser), b = run_suites(s, par);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(to_json(a[k], false).dump() == to_json(b[k], false).dump());
    }
  }

  TEST_CASE("reports are reproducible from the seed") {
    const auto s = sl2_base(Variant::Toroidal, 2, {2, -1});
    VerifyOptions opt;
    opt.window = {-1, 1};
    opt.samples = 3;
    opt.seed = 5;
    CHECK(to_json(bracket_compat_check(s, opt), false).dump() == to_json(bracket_compat_check(s, opt), false).dump());
    opt.seed = 6;
    CHECK(bracket_compat_check(s, opt).seed == 6);
  }
}
