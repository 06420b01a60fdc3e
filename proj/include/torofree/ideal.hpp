#pragma once

// Zero-dimensional ideals in the H variables: vanishing ideals of finite
// point sets and normal forms with respect to the canonical term order.

#include <span>
#include <vector>

#include "torofree/poly.hpp"

namespace torofree {

using Point = std::vector<Rational>;  // one coordinate per H variable

/// Reduced Groebner basis (canonical graded order) of the ideal of all
/// polynomials in Q[H] vanishing on the points (Buchberger-Moeller).
std::vector<Poly> vanishing_ideal(Ranks r, std::span<const Point> points);

/// Remainder of full multivariate division by g (any variables allowed in p).
Poly normal_form(const Poly& p, std::span<const Poly> g);

/// Buchberger criterion: every S-polynomial reduces to zero.
bool is_groebner(std::span<const Poly> g);

/// Values of p at the point, as a polynomial in the d variables.
inline Poly value_at(const Poly& p, const Point& z) { return evaluate_h(p, z); }

}  // namespace torofree
