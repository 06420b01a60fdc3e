#pragma once

// Test-side reference computations written directly from the defining
// formulas, without going through the library's shift or action code.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "torofree/module.hpp"
#include "torofree/poly.hpp"

namespace oracle {

using torofree::Poly;
using torofree::Rational;

/// Evaluates p at a full point (H values then d values) term by term.
inline Rational eval(const Poly& p, const std::vector<Rational>& pt) {
  Rational s = 0;
  for (const auto& t : p.terms()) {
    Rational m = t.coeff;
    for (std::size_t v = 0; v < pt.size(); ++v)
      for (int e = 0; e < t.exp[v]; ++e) m *= pt[v];
    s += m;
  }
  return s;
}

inline std::vector<std::vector<Rational>> points(int vars, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 4);
  std::vector<std::vector<Rational>> out;
  for (int k = 0; k < count; ++k) {
    std::vector<Rational> z;
    for (int v = 0; v < vars; ++v) z.push_back(torofree::frac(num(rng), den(rng)));
    out.push_back(z);
  }
  return out;
}

/// Two polynomials in `vars` variables agree on enough random points (exact
/// comparison per point; used as an independent equality oracle).
inline bool agree(const std::function<Rational(const std::vector<Rational>&)>& f,
                  const std::function<Rational(const std::vector<Rational>&)>& g, int vars, int count = 12,
                  std::uint64_t seed = 11) {
  for (const auto& z : points(vars, count, seed))
    if (f(z) != g(z)) return false;
  return true;
}

/// x_i.1 and y_i.1 of the A-family module at a point, from the factor rules
/// written out by hand (H_0 = H_{l+1} = 0, scalar b).
inline Rational a_family_x(int l, int i, const std::vector<Rational>& a, const Rational& b, const std::vector<int>& S,
                           const std::vector<Rational>& H) {
  auto h = [&](int k) { return (k < 1 || k > l) ? Rational(0) : H[k - 1]; };
  auto in = [&](int k) { return std::find(S.begin(), S.end(), k) != S.end(); };
  Rational v = a[i - 1];
  if (!in(i)) v *= h(i) - h(i - 1) - b - 1;
  if (in(i + 1)) v *= h(i + 1) - h(i) - b;
  return v;
}

inline Rational a_family_y(int l, int i, const std::vector<Rational>& a, const Rational& b, const std::vector<int>& S,
                           const std::vector<Rational>& H) {
  auto h = [&](int k) { return (k < 1 || k > l) ? Rational(0) : H[k - 1]; };
  auto in = [&](int k) { return std::find(S.begin(), S.end(), k) != S.end(); };
  Rational v = 1 / a[i - 1];
  if (in(i)) v *= h(i) - h(i - 1) - b;
  if (!in(i + 1)) v *= h(i + 1) - h(i) - b - 1;
  return v;
}

}  // namespace oracle
