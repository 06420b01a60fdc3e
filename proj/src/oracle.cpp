#include "torofree/oracle.hpp"

namespace torofree {

Poly ActionOracle::act(const LieElt& X, const Poly& p) const {
  Poly out(ranks_);
  for (const auto& [s, c] : X.terms()) out += c * eval_(s, p);
  return out;
}

ActionOracle make_oracle(std::shared_ptr<const Module> module) {
  AlgebraDesc A = module->algebra();
  Ranks r = module->ranks();
  return ActionOracle(std::move(A), r, [m = std::move(module)](const Symbol& g, const Poly& p) { return m->act(g, p); });
}

ActionOracle with_override(const ActionOracle& base, OraclePatch patch) {
  return ActionOracle(base.algebra(), base.ranks(), [base, patch = std::move(patch)](const Symbol& g, const Poly& p) {
    if (auto v = patch(g, p)) return *v;
    return base(g, p);
  });
}

}  // namespace torofree
