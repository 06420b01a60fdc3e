#pragma once

// Sparse polynomials over Q in the variables H_1..H_l, d_1..d_n together with
// the shift automorphisms sigma_i (H_i -> H_i - 1) and tau_j (d_j -> d_j - 1).

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torofree/core.hpp"

namespace torofree {

inline constexpr int kMaxVars = 12;

/// Number of H and d variables of the ambient ring U(h~_n).
struct Ranks {
  int l = 0;
  int n = 0;

  int vars() const { return l + n; }
  friend bool operator==(const Ranks&, const Ranks&) = default;
};

struct VarId {
  enum class Kind { H, d };
  Kind kind = Kind::H;
  int index = 1;  // 1-based

  static VarId H(int i) { return {Kind::H, i}; }
  static VarId d(int j) { return {Kind::d, j}; }
};

using Exponents = std::array<std::uint16_t, kMaxVars>;

struct Term {
  Exponents exp{};
  Rational coeff;
};

/// Canonical sparse polynomial. Terms are kept sorted in descending graded
/// lexicographic order (H block before d block) with no zero coefficients, so
/// structural equality is mathematical equality.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Ranks ranks) : ranks_(ranks) {}

  static Poly constant(Ranks ranks, const Rational& c);
  static Poly variable(Ranks ranks, VarId v);
  static Poly monomial(Ranks ranks, const Exponents& exp, const Rational& c);
  /// Takes ownership of arbitrary terms and brings them to canonical form.
  static Poly from_terms(Ranks ranks, std::vector<Term> terms);

  Ranks ranks() const { return ranks_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (zero if absent).
  Rational constant_term() const;
  /// Coefficient of an exact monomial.
  Rational coeff(const Exponents& exp) const;
  /// Leading term in the canonical order; precondition: nonzero.
  const Term& leading() const { return terms_.front(); }

  int total_degree() const;  // -1 for zero
  int deg_in(VarId v) const;  // -1 for zero
  /// Total degree in the H block only (-1 for zero).
  int h_degree() const;
  bool h_free() const;
  bool d_free() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  /// Index of a variable in the exponent vector.
  int slot(VarId v) const;

 private:
  void check_ranks(const Poly& o) const;

  Ranks ranks_{};
  std::vector<Term> terms_;
};

enum class PolyOp { Add, Sub, Mul };
Poly poly_arith(PolyOp op, const Poly& p, const Poly& q);
Poly poly_scale(const Rational& c, const Poly& p);

/// General simultaneous shift: every variable v is replaced by v - shift[v].
/// `shift` has one entry per variable (H block first).
Poly shift_vars(const Poly& p, std::span<const long> shift);

/// sigma_i^k: H_i -> H_i - k.
Poly shift_sigma(int i, long k, const Poly& p);
/// tau^a: d_j -> d_j - a_j for every j.
Poly shift_tau(std::span<const int> a, const Poly& p);

int deg_in(VarId v, const Poly& p);

enum class DifferenceMode { PowerMinusId, DifferencePower };
/// PowerMinusId: (sigma_i^k - Id)(p), k != 0.
/// DifferencePower: (sigma_i - Id)^k(p), k >= 0.
Poly shift_difference(DifferenceMode mode, long k, int i, const Poly& p);

/// Substitutes H = point and returns a polynomial in the d variables only
/// (ranks preserved).
Poly evaluate_h(const Poly& p, std::span<const Rational> point);

/// Exact division by a polynomial that is monic in H_1 and has H-degree
/// equal to its H_1-degree (the univariate witness case). Returns remainder.
Poly remainder_mod_monic_h1(const Poly& p, const Poly& divisor);

/// Text form, e.g. "3/2*H1^2*d1 - d2 + 5".
std::string to_string(const Poly& p);
Poly parse_poly(std::string_view text, Ranks ranks);

/// Graded lex comparison used for the canonical term order (first `vars`
/// entries only). Returns true when a precedes b.
bool grlex_greater(const Exponents& a, const Exponents& b, int vars);

}  // namespace torofree
