#include <doctest.h>

#include "oracles.hpp"
#include "torofree/ideal.hpp"
#include "torofree/verify.hpp"

using namespace torofree;

namespace {
const Ranks R21{2, 1};
const Ranks R12{1, 2};
Poly P(const char* s, Ranks r) { return parse_poly(s, r); }
}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("arithmetic examples") {
    const Ranks r{2, 2};
    CHECK((P("H1", r) + P("-H1", r)).is_zero());
    CHECK(P("H1 + 1", r) * P("H1 - 1", r) == P("H1^2 - 1", r));
    CHECK(poly_scale(frac(2, 3), P("3*d1", r)) == P("2*d1", r));
    CHECK(poly_arith(PolyOp::Sub, P("H1*d2", r), P("H1*d2", r)).is_zero());
  }

  TEST_CASE("canonical order and text round trip") {
    const Ranks r{1, 2};
    const Poly p = P("5 - d2 + 3/2*H1^2*d1", r);
    CHECK(to_string(p) == "3/2*H1^2*d1 - d2 + 5");
    CHECK(P(to_string(p).c_str(), r) == p);
    CHECK(to_string(Poly(r)) == "0");
    CHECK_THROWS_AS(P("H3", r), ParseError);
    CHECK_THROWS_AS(P("2**H1", r), ParseError);
  }

  TEST_CASE("sigma shifts") {
    const Ranks r = R21;
    CHECK(shift_sigma(1, 1, P("H1^2", r)) == P("H1^2 - 2*H1 + 1", r));
    const Poly q = P("H1^3*d1 - H2 + 7", r);
    CHECK(shift_sigma(1, 0, q) == q);
    CHECK(shift_sigma(1, -1, P("H2*d1", r)) == P("H2*d1", r));
  }

  TEST_CASE("tau shifts") {
    const std::vector<int> one{1}, zero{0, 0}, mixed{2, -1};
    CHECK(shift_tau(one, P("d1^2", Ranks{1, 1})) == P("(d1 - 1)^2", Ranks{1, 1}));
    const Poly q = P("H1*d1*d2 + d2^3", R12);
    CHECK(shift_tau(zero, q) == q);
    CHECK(shift_tau(mixed, P("d1 + d2", R12)) == P("d1 - 2 + d2 + 1", R12));
  }

  TEST_CASE("shifts agree with substitution at points") {
    const Ranks r{2, 2};
    for (std::uint64_t k = 0; k < 20; ++k) {
      auto rng = case_rng(3, k);
      const Poly p = random_poly(r, rng, {5, 6});
      const std::vector<long> sh{2, -1, 3, 0};
      const Poly q = shift_vars(p, sh);
      CHECK(oracle::agree([&](const auto& z) -> Rational { return oracle::eval(q, z); },
                          [&](const auto& z) -> Rational {
                            auto w = z;
                            for (int v = 0; v < 4; ++v) w[v] -= sh[v];
                            return oracle::eval(p, w);
                          },
                          4));
      // products also agree pointwise
      auto rng2 = case_rng(4, k);
      const Poly s = random_poly(r, rng2);
      CHECK(oracle::agree([&](const auto& z) -> Rational { return oracle::eval(p * s, z); },
                          [&](const auto& z) -> Rational { return oracle::eval(p, z) * oracle::eval(s, z); }, 4));
    }
  }

  TEST_CASE("degrees") {
    const Ranks r = R12;
    CHECK(deg_in(VarId::H(1), Poly(r)) == -1);
    CHECK(deg_in(VarId::H(1), P("H1^2*d1 + 3", r)) == 2);
    CHECK(deg_in(VarId::d(2), P("H1", r)) == 0);
  }

  TEST_CASE("difference operators") {
    const Ranks r{1, 0};
    CHECK(shift_difference(DifferenceMode::PowerMinusId, 1, 1, P("H1^2", r)) == P("-2*H1 + 1", r));
    CHECK(shift_difference(DifferenceMode::DifferencePower, 3, 1, P("H1^2", r)).is_zero());
    const Poly q = P("H1^4 - 2", r);
    CHECK(shift_difference(DifferenceMode::DifferencePower, 0, 1, q) == q);
    CHECK(deg_in(VarId::H(1), shift_difference(DifferenceMode::PowerMinusId, 2, 1, P("H1^3", r))) == 2);
    CHECK(shift_difference(DifferenceMode::PowerMinusId, -3, 1, P("5", r)).is_zero());
    CHECK_THROWS(shift_difference(DifferenceMode::PowerMinusId, 0, 1, q));
  }

  TEST_CASE("rank mismatch is a structural error") {
    CHECK_THROWS_AS(P("H1", Ranks{1, 0}) + P("H1", Ranks{2, 0}), StructuralError);
  }
}

TEST_SUITE("ideal") {
  TEST_CASE("vanishing ideal of points, univariate") {
    const Ranks r{1, 0};
    std::vector<Point> pts{{Rational(1)}, {Rational(2)}, {Rational(-1)}};
    auto G = vanishing_ideal(r, pts);
    REQUIRE(G.size() == 1);
    CHECK(G[0] == P("(H1 - 1)*(H1 - 2)*(H1 + 1)", r));
  }

  TEST_CASE("vanishing ideal in two variables vanishes exactly on the points") {
    const Ranks r{2, 0};
    std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}, {frac(1, 2), 3}};
    auto G = vanishing_ideal(r, pts);
    CHECK(is_groebner(G));
    for (const auto& g : G) {
      CHECK(g.leading().coeff == 1);
      for (const auto& z : pts) CHECK(value_at(g, z).is_zero());
    }
    // a point off the set is not a common zero
    bool off = false;
    for (const auto& g : G) off |= !value_at(g, Point{1, 1}).is_zero();
    CHECK(off);
    const Poly f = P("H1*(H1 - 1)", r);  // nonzero at (1/2, 3)
    CHECK(!normal_form(f, G).is_zero());
    const Poly inside = P("H1*H2*(H1 - 1/2)", r) * P("H2 - 3 + H1", r);
    bool vanishes = true;
    for (const auto& z : pts) vanishes &= value_at(inside, z).is_zero();
    CHECK(vanishes);
    CHECK(normal_form(inside, G).is_zero());
  }
}
