#pragma once

// Black-box "generator x polynomial -> polynomial" interface interrogated by
// the recovery and checking procedures.

#include <functional>
#include <memory>
#include <optional>

#include "torofree/lie.hpp"
#include "torofree/module.hpp"
#include "torofree/poly.hpp"

namespace torofree {

class ActionOracle {
 public:
  using Eval = std::function<Poly(const Symbol&, const Poly&)>;

  ActionOracle(AlgebraDesc algebra, Ranks ranks, Eval eval)
      : algebra_(std::move(algebra)), ranks_(ranks), eval_(std::move(eval)) {}

  const AlgebraDesc& algebra() const { return algebra_; }
  Ranks ranks() const { return ranks_; }

  Poly operator()(const Symbol& g, const Poly& p) const { return eval_(g, p); }
  /// Linear extension to arbitrary elements.
  Poly act(const LieElt& X, const Poly& p) const;
  Poly on_one(const Symbol& g) const { return eval_(g, Poly::constant(ranks_, 1)); }

 private:
  AlgebraDesc algebra_;
  Ranks ranks_;
  Eval eval_;
};

ActionOracle make_oracle(std::shared_ptr<const Module> module);
inline ActionOracle make_oracle(const ModuleSpec& spec) { return make_oracle(std::make_shared<const Module>(spec)); }

/// Returning a value from the patch replaces the base answer for that input.
using OraclePatch = std::function<std::optional<Poly>(const Symbol&, const Poly&)>;
ActionOracle with_override(const ActionOracle& base, OraclePatch patch);

}  // namespace torofree
