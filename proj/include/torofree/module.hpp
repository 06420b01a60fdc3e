#pragma once

// Rank-one Cartan-free modules: the carrier is U(h~) = Q[H_1..H_l, d_1..d_n]
// and every generator acts through shifts of its argument times a fixed
// polynomial (the generator applied to 1).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torofree/lie.hpp"
#include "torofree/poly.hpp"

namespace torofree {

struct ModuleSpec {
  AlgebraDesc algebra;
  std::vector<Rational> lambda;    // length n for toroidal/witt/full, empty for finite
  std::optional<Rational> witt_a;  // present iff variant is witt or full
  std::vector<Rational> base_a;    // length l unless variant is witt
  Poly base_b;                     // d-variables only; zero for the C family
  std::vector<int> S;              // sorted subset of 1..l+1 (A) or 1..l (C)

  Ranks ranks() const { return {algebra.rank, algebra.loop_vars}; }
  /// Largest admissible element of S.
  int S_bound() const { return algebra.family == Family::A ? algebra.rank + 1 : algebra.rank; }
  bool in_S(int i) const;
  /// Throws StructuralError naming the violated invariant.
  void validate() const;
};

/// Convenience constructor; b may be given as text such as "3" or "d1 + 1/2".
ModuleSpec make_spec(AlgebraDesc A, std::vector<Rational> lambda, std::optional<Rational> witt_a,
                     std::vector<Rational> base_a, std::string_view base_b, std::vector<int> S);

/// A generator applied to 1, kept as scale * product of factors (each factor
/// linear in the H variables).
struct Factored {
  Rational scale = 1;
  std::vector<Poly> factors;
  Poly value;
};

class Module {
 public:
  explicit Module(ModuleSpec spec);

  const ModuleSpec& spec() const { return spec_; }
  const AlgebraDesc& algebra() const { return spec_.algebra; }
  Ranks ranks() const { return spec_.ranks(); }

  /// x_i . 1 and y_i . 1 at loop degree 0 (1-based i).
  const Factored& x_one(int i) const { return x_one_[i - 1]; }
  const Factored& y_one(int i) const { return y_one_[i - 1]; }

  Rational lambda_pow(const Degree& r) const;

  Poly act(const Symbol& g, const Poly& p) const;
  Poly act(const LieElt& X, const Poly& p) const;
  /// Applies word[k-1], ..., word[0] in turn (rightmost first).
  Poly act_word(std::span<const Symbol> word, const Poly& p) const;

 private:
  Poly act_fin(int m, const Degree& r, const Poly& p) const;
  Poly act_letters(std::span<const int> letters, const Degree& r, const Poly& p) const;
  Poly act_deriv(int i, const Degree& r, const Poly& p) const;
  Poly twist(const Poly& p, int sigma_index, int sigma_power, const Degree& r) const;

  ModuleSpec spec_;
  std::vector<Factored> x_one_, y_one_;
};

/// Generator images on 1 from the displayed formulas, degree zero.
std::vector<Factored> chevalley_x_images(const ModuleSpec& spec);
std::vector<Factored> chevalley_y_images(const ModuleSpec& spec);

// Entry points named after the individual formula families. Each checks that
// the spec and generator fit the formula family, then delegates to Module.
Poly act_chevalley_A(const ModuleSpec& spec, const Symbol& g, const Poly& p);
Poly act_chevalley_C(const ModuleSpec& spec, const Symbol& g, const Poly& p);
Poly act_toroidal(const ModuleSpec& spec, const Symbol& g, const Poly& p);
Poly act_witt(const ModuleSpec& spec, const Symbol& g, const Poly& p);
Poly act_full(const ModuleSpec& spec, const Symbol& g, const Poly& p);
Poly act_element(const ModuleSpec& spec, const LieElt& X, const Poly& p);
Poly act_word(const ModuleSpec& spec, std::span<const Symbol> word, const Poly& p);

/// Resolved C_l generator formulas as readable text (one line per generator).
std::vector<std::string> c_family_formulas(int l);

}  // namespace torofree
