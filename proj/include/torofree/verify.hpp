#pragma once

// Property suites. Every check is exact; any nonzero difference is recorded as
// a counterexample. Cases are seeded per index so serial and parallel runs
// produce identical reports.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "torofree/lie.hpp"
#include "torofree/module.hpp"
#include "torofree/oracle.hpp"
#include "torofree/parallel.hpp"
#include "torofree/poly.hpp"

namespace torofree {

struct Counterexample {
  std::string generator;
  std::string input;
  std::string expected;
  std::string got;
  std::string difference;
};

struct CheckReport {
  std::string name;
  std::uint64_t seed = 0;
  long cases = 0;
  long failure_count = 0;
  std::vector<Counterexample> failures;  // first few, in case order
  std::optional<double> seconds;

  bool passed() const { return failure_count == 0; }
  void record(Counterexample c);
  /// Appends another report's cases and failures (order preserved).
  void absorb(const CheckReport& other);
};

inline constexpr std::size_t kKeptFailures = 5;

struct VerifyOptions {
  std::uint64_t seed = 1;
  int samples = 20;
  DegreeWindow window{-2, 2};
  Exec exec = Exec::Parallel;
};

/// Per-case generator; independent of evaluation order.
std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t index);

struct PolySampling {
  int max_degree = 4;
  int max_terms = 6;
  bool d_only = false;  // only d variables (Witt carrier)
  bool h_only = false;  // only H variables
};
/// Nonzero polynomial: up to max_terms monomials of total degree <= max_degree,
/// coefficients uniform in {-9..9} \ {0}.
Poly random_poly(Ranks r, std::mt19937_64& rng, const PolySampling& how = {});

/// Generators of the module algebra with loop degree in the window:
/// x_i, y_i, H_i, the canonical K_j(r) and the available derivations.
std::vector<Symbol> generator_symbols(const AlgebraDesc& A, DegreeWindow w);

CheckReport bracket_compat_check(const ActionOracle& M, const VerifyOptions& opt);
CheckReport bracket_compat_check(const ModuleSpec& spec, const VerifyOptions& opt);

/// For every a in the window, j and i: the bracket [x_i(e_j), y_i(a-e_j)] equals
/// h_i(a) + (x_i,y_i) K_j(a) in the algebra, and acting on 1 the difference
/// [x_i(e_j), y_i(a-e_j)].1 - h_i(a).1 vanishes, i.e. t^a K_j . 1 = 0.
CheckReport central_bracket_check(const ActionOracle& M, const VerifyOptions& opt);

/// act(X(r), p) = lambda^r * shift(p) * act(X(r), 1) for X in {H_i, x_i, y_i}
/// and K_j(r) . p = 0.
CheckReport twist_factor_check(const ActionOracle& M, const VerifyOptions& opt);

using BracketFn = std::function<LieElt(const Symbol&, const Symbol&)>;
/// samples == 0: exhaustive over unordered basis triples in the window.
CheckReport jacobi_check(const AlgebraDesc& A, const VerifyOptions& opt, BracketFn bracket_override = {});

using CocycleFn = std::function<LieElt(const LieElt&, const LieElt&)>;
/// 2-cocycle identity for phi1, phi2 and c1*phi1 + c2*phi2 on random
/// derivation triples with n loop variables.
CheckReport cocycle_identity_check(const Rational& c1, const Rational& c2, int n, const VerifyOptions& opt,
                                   CocycleFn phi_override = {});

CheckReport freeness_check(const ActionOracle& M, const VerifyOptions& opt);

/// deg_{d_j}((H_1(e_j) - lambda_j H_1) . w) < deg_{d_j}(w) and the other
/// d-degrees do not grow.
CheckReport degree_reduction_check(const ActionOracle& M, const std::vector<Rational>& lambda,
                                   const VerifyOptions& opt);
CheckReport degree_reduction_check(const ModuleSpec& spec, const VerifyOptions& opt);

using DifferenceFn = std::function<Poly(DifferenceMode, long, int, const Poly&)>;
/// Degree identities for (sigma_i^k - Id) and (sigma_i - Id)^k'.
CheckReport lemma_pa_property(Ranks r, const VerifyOptions& opt, DifferenceFn override_fn = {});

/// All suites that apply to the spec, in a fixed order.
std::vector<CheckReport> run_suites(const ModuleSpec& spec, const VerifyOptions& opt);

}  // namespace torofree
