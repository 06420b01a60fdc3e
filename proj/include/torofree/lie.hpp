#pragma once

// Graded basis symbols and brackets for the finite, toroidal, Witt and full
// toroidal algebras built on g = sl_{l+1} or sp_{2l}.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torofree/core.hpp"
#include "torofree/finite_algebra.hpp"

namespace torofree {

enum class Variant { Finite, Toroidal, Witt, Full };

std::string to_string(Variant v);
Variant parse_variant(std::string_view text);

struct AlgebraDesc {
  Family family = Family::A;
  int rank = 1;
  /// Number of loop variables. For the finite variant this is the number of
  /// central degree variables d_1..d_n (Z = span of the d_j), possibly 0.
  int loop_vars = 0;
  Variant variant = Variant::Finite;
  Rational c1 = 0, c2 = 0;  // cocycle combination, full variant only

  void validate() const;
  /// Length of loop-degree vectors (0 for the finite variant).
  int degree_len() const { return variant == Variant::Finite ? 0 : loop_vars; }
  bool has_finite_part() const { return variant != Variant::Witt; }
  bool has_center() const { return variant == Variant::Toroidal || variant == Variant::Full; }
  const FiniteAlgebra& fin() const { return finite_algebra(family, rank); }
};

struct Symbol {
  enum class Kind : std::uint8_t { Fin, Central, Deriv };
  Kind kind = Kind::Fin;
  int index = 0;  // FiniteAlgebra basis index for Fin, 1-based j / i otherwise
  Degree degree;

  static Symbol fin(int m, Degree r) { return {Kind::Fin, m, std::move(r)}; }
  static Symbol central(int j, Degree r) { return {Kind::Central, j, std::move(r)}; }
  static Symbol deriv(int i, Degree r) { return {Kind::Deriv, i, std::move(r)}; }

  auto operator<=>(const Symbol&) const = default;
  bool operator==(const Symbol&) const = default;
};

/// Rational combination of basis symbols, kept canonical: no zero
/// coefficients and, for every r != 0, the central symbol K_{j*}(r) with j* the
/// first index where r is nonzero is rewritten through sum_j r_j K_j(r) = 0.
class LieElt {
 public:
  LieElt() = default;
  static LieElt of(const Symbol& s, const Rational& c = 1);

  void add(const Symbol& s, const Rational& c);
  const std::map<Symbol, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Symbol& s) const;

  LieElt& operator+=(const LieElt& o);
  LieElt& operator-=(const LieElt& o);
  LieElt& operator*=(const Rational& c);
  LieElt operator-() const;
  friend LieElt operator+(LieElt a, const LieElt& b) { return a += b; }
  friend LieElt operator-(LieElt a, const LieElt& b) { return a -= b; }
  friend LieElt operator*(const Rational& c, LieElt a) { return a *= c; }
  friend bool operator==(const LieElt&, const LieElt&) = default;

 private:
  std::map<Symbol, Rational> terms_;
};

/// D(u, r) = sum_i u_i t^r d_i.
LieElt derivation(std::span<const Rational> u, const Degree& r);
/// Coroot h_i at loop degree r, expressed in the H basis.
LieElt coroot(const AlgebraDesc& A, int i, const Degree& r);

/// Throws DomainError when a symbol does not belong to A's variant.
void check_symbol(const AlgebraDesc& A, const Symbol& s);
void check_element(const AlgebraDesc& A, const LieElt& X);

LieElt bracket(const AlgebraDesc& A, const Symbol& a, const Symbol& b);
LieElt bracket(const AlgebraDesc& A, const LieElt& X, const LieElt& Y);

Rational invariant_form(const AlgebraDesc& A, int m1, int m2);

/// c1*phi1 + c2*phi2 on derivation elements (bilinear), canonical modulo dA.
LieElt cocycle(const Rational& c1, const Rational& c2, const LieElt& X, const LieElt& Y);
/// Witt bracket [X, Y]_0 of derivation elements, without the cocycle.
LieElt witt_bracket(const LieElt& X, const LieElt& Y);
/// Action of derivations on the center K_A.
LieElt der_on_center(const LieElt& D, const LieElt& K);

/// Box {lo..hi}^n of loop degrees.
struct DegreeWindow {
  int lo = 0;
  int hi = 0;
};
std::vector<Degree> degrees_in(int n, DegreeWindow w);

/// Canonical basis symbols with loop degree in the window.
std::vector<Symbol> basis_of(const AlgebraDesc& A, DegreeWindow w);

const GeneratorWord& generator_word(const AlgebraDesc& A, int m);

std::string degree_text(const Degree& r);
std::string to_string(const AlgebraDesc& A, const Symbol& s);
std::string to_string(const AlgebraDesc& A, const LieElt& X);
/// Parses sums like "2*x1(1,0) - K2(0) + D([1,0],(2,1))"; also accepts h<i>
/// (coroots), d<j> and d<j>(r) for t^r d_j.
LieElt parse_element(const AlgebraDesc& A, std::string_view text);

}  // namespace torofree
