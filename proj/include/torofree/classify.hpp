#pragma once

// Simplicity prediction and brute-force confirmation, invariant-ideal
// witnesses, parameter recovery from a black-box action, isomorphism test.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torofree/ideal.hpp"
#include "torofree/module.hpp"
#include "torofree/oracle.hpp"
#include "torofree/verify.hpp"

namespace torofree {

struct SimplicityVerdict {
  bool simple = true;
  std::string rule;
  /// Verdict of the criterion exactly as printed: simple iff (l+1)b is not a
  /// non-negative integer or 1 <= |S| <= l. Differs from `simple` only for S = {}.
  bool printed_rule_simple = true;
};

/// Throws DomainError when b is not a scalar or the variant is witt.
SimplicityVerdict simplicity_predict(const ModuleSpec& spec);

struct WitnessReport {
  bool found = false;
  /// Reduced Groebner basis of the invariant ideal (extended to the d variables).
  std::vector<Poly> generators;
  /// The single generator when the ideal is principal.
  std::optional<Poly> witness;
  /// Zero set in H-space of the ideal, when found.
  std::vector<Point> points;
  int witness_degree = -1;
  int checked_degree_bound = 0;
  DegreeWindow checked_loop_window{};
  int seeds_tried = 0;
  /// Seeds whose defining linear system was singular but consistent; the
  /// search is not complete at the bounds when this is nonzero.
  int degenerate_seeds = 0;
};

/// Searches for a proper nonzero invariant ideal I(Z) (x) Q[d], Z finite.
/// Complete at the bounds: every such ideal with generators of degree <= maxdeg
/// is found when degenerate_seeds == 0.
WitnessReport submodule_witness_search(const ModuleSpec& spec, int maxdeg, DegreeWindow window);

/// Generators must be H-only, monic, of degree >= 1 and form a Groebner basis
/// (a single polynomial always does). True iff every generator in the loop
/// window maps each ideal generator back into the ideal.
bool witness_verify(const ModuleSpec& spec, const std::vector<Poly>& generators, DegreeWindow window);
bool witness_verify(const ModuleSpec& spec, const Poly& p, DegreeWindow window);

struct CyclicityResult {
  bool reached_constant = false;
  int rounds = 0;
  int span_dim = 0;
};
/// d-degree reduction by (H_1(e_j) - lambda_j H_1), then span closure under
/// x_i, y_i and multiplication by H_i up to max_word_len rounds with total
/// degree <= degbound. False means "not within budget".
CyclicityResult cyclicity_run(const ModuleSpec& spec, const Poly& w, int max_word_len, int degbound,
                              DegreeWindow window);
bool cyclicity_check(const ModuleSpec& spec, const Poly& w, int max_word_len, int degbound, DegreeWindow window);

/// Recovery failures carry a short code naming the violated reduction step.
class ClassificationError : public std::runtime_error {
 public:
  ClassificationError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct DecodedBase {
  std::vector<Rational> base_a;
  Poly base_b;
  std::vector<int> S;
};

struct RecoveredParams {
  std::vector<Rational> lambda;
  std::optional<Rational> witt_a;
  std::vector<Poly> x1_list, y1_list;
  /// All base tuples reproducing the oracle; the preferred one (largest
  /// constant term of b) comes first.
  std::vector<DecodedBase> candidates;

  const DecodedBase* preferred() const { return candidates.empty() ? nullptr : &candidates.front(); }
  /// Spec built from the preferred decoding (throws if there is none).
  ModuleSpec to_spec(const AlgebraDesc& A) const;
};

RecoveredParams recover_parameters(const ActionOracle& oracle);

/// K_j(a) . 1 = 0 for every a in the window and every j.
CheckReport check_assertion_A(const ActionOracle& oracle, DegreeWindow window);
/// X(a) . 1 = lambda^a (X . 1) for X in {x_i, y_i, H_i}, a in the window.
CheckReport check_assertion_B(const ActionOracle& oracle, const std::vector<Rational>& lambda, DegreeWindow window);

/// Both modules have the same shape (throws DomainError otherwise). Equal iff
/// lambda, witt_a and every x_i.1, y_i.1 coincide; an isomorphism of
/// Cartan-free modules is multiplication by a nonzero scalar, so this is the
/// isomorphism relation.
bool iso_test(const ModuleSpec& s1, const ModuleSpec& s2);

}  // namespace torofree
