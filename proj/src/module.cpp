#include "torofree/module.hpp"

#include <algorithm>

namespace torofree {

bool ModuleSpec::in_S(int i) const { return std::binary_search(S.begin(), S.end(), i); }

void ModuleSpec::validate() const {
  algebra.validate();
  const int l = algebra.rank, n = algebra.loop_vars;
  const Variant v = algebra.variant;
  if (v == Variant::Finite) {
    if (!lambda.empty()) throw StructuralError("lambda must be empty for the finite variant");
  } else {
    if (static_cast<int>(lambda.size()) != n)
      throw StructuralError("lambda must have length n = " + std::to_string(n));
    for (const auto& x : lambda)
      if (x == 0) throw StructuralError("lambda entries must be nonzero");
  }
  const bool needs_a = v == Variant::Witt || v == Variant::Full;
  if (needs_a != witt_a.has_value())
    throw StructuralError(needs_a ? "witt_a is required for the witt and full variants"
                                  : "witt_a is only allowed for the witt and full variants");
  if (base_b.ranks() != ranks()) throw StructuralError("base_b has the wrong ranks");
  if (!base_b.h_free()) throw StructuralError("base_b must not involve H variables");
  if (v == Variant::Witt) {
    if (!base_a.empty() || !S.empty() || !base_b.is_zero())
      throw StructuralError("the witt variant takes no base parameters (base_a, base_b, S)");
    return;
  }
  if (static_cast<int>(base_a.size()) != l) throw StructuralError("base_a must have length l = " + std::to_string(l));
  for (const auto& x : base_a)
    if (x == 0) throw StructuralError("base_a entries must be nonzero");
  if ((v == Variant::Toroidal || v == Variant::Full) && !base_b.is_constant() && !base_b.is_zero())
    throw StructuralError("base_b must be a scalar for the toroidal and full variants");
  if (algebra.family == Family::C && !base_b.is_zero())
    throw StructuralError("the C family has no b parameter (base_b must be 0)");
  if (!std::is_sorted(S.begin(), S.end()) || std::adjacent_find(S.begin(), S.end()) != S.end())
    throw StructuralError("S must be sorted without repeats");
  for (int i : S)
    if (i < 1 || i > S_bound())
      throw StructuralError("S must be a subset of {1.." + std::to_string(S_bound()) + "}");
}

ModuleSpec make_spec(AlgebraDesc A, std::vector<Rational> lambda, std::optional<Rational> witt_a,
                     std::vector<Rational> base_a, std::string_view base_b, std::vector<int> S) {
  ModuleSpec s;
  s.algebra = std::move(A);
  s.lambda = std::move(lambda);
  s.witt_a = std::move(witt_a);
  s.base_a = std::move(base_a);
  s.base_b = parse_poly(base_b.empty() ? "0" : base_b, s.ranks());
  std::sort(S.begin(), S.end());
  s.S = std::move(S);
  s.validate();
  return s;
}

namespace {

Poly H(Ranks r, int i) {
  if (i < 1 || i > r.l) return Poly(r);  // H_0 = H_{l+1} = 0
  return Poly::variable(r, VarId::H(i));
}

Poly C(Ranks r, const Rational& c) { return Poly::constant(r, c); }

Factored make(Rational scale, std::vector<Poly> factors, Ranks r) {
  Factored f;
  f.scale = std::move(scale);
  Poly v = C(r, f.scale);
  for (const auto& p : factors) v *= p;
  f.factors = std::move(factors);
  f.value = std::move(v);
  return f;
}

void images_A(const ModuleSpec& s, std::vector<Factored>& xs, std::vector<Factored>& ys) {
  const Ranks r = s.ranks();
  const int l = r.l;
  const Poly& b = s.base_b;
  const Poly one = C(r, 1);
  for (int i = 1; i <= l; ++i) {
    const bool si = s.in_S(i), s1 = s.in_S(i + 1);
    Poly lo = H(r, i) - H(r, i - 1) - b;   // H_i - H_{i-1} - b
    Poly hi = H(r, i + 1) - H(r, i) - b;   // H_{i+1} - H_i - b
    std::vector<Poly> xf, yf;
    if (!si) xf.push_back(lo - one);
    if (s1) xf.push_back(hi);
    if (si) yf.push_back(lo);
    if (!s1) yf.push_back(hi - one);
    xs.push_back(make(s.base_a[i - 1], std::move(xf), r));
    ys.push_back(make(1 / s.base_a[i - 1], std::move(yf), r));
  }
}

void images_C(const ModuleSpec& s, std::vector<Factored>& xs, std::vector<Factored>& ys) {
  const Ranks r = s.ranks();
  const int l = r.l;
  const Rational half(1, 2), quarter(1, 4), three_q(3, 4);
  for (int k = 1; k < l; ++k) {
    const bool sk = s.in_S(k), s1 = s.in_S(k + 1);
    Rational mult = k == l - 1 ? 2 : 1;
    Poly lo = H(r, k) - H(r, k - 1);
    Poly hi = mult * H(r, k + 1) - H(r, k);
    std::vector<Poly> xf, yf;
    if (!sk) xf.push_back(lo - C(r, half));
    if (s1) xf.push_back(hi + C(r, half));
    if (sk) yf.push_back(lo + C(r, half));
    if (!s1) yf.push_back(hi - C(r, half));
    xs.push_back(make(s.base_a[k - 1], std::move(xf), r));
    ys.push_back(make(1 / s.base_a[k - 1], std::move(yf), r));
  }
  Poly u = H(r, l) - half * H(r, l - 1);
  const Rational& al = s.base_a[l - 1];
  if (s.in_S(l)) {
    xs.push_back(make(al, {}, r));
    ys.push_back(make(-1 / al, {u + C(r, three_q), u + C(r, quarter)}, r));
  } else {
    xs.push_back(make(-al, {u - C(r, three_q), u - C(r, quarter)}, r));
    ys.push_back(make(1 / al, {}, r));
  }
}

void images(const ModuleSpec& s, std::vector<Factored>& xs, std::vector<Factored>& ys) {
  if (s.algebra.variant == Variant::Witt) return;
  if (s.algebra.family == Family::A)
    images_A(s, xs, ys);
  else
    images_C(s, xs, ys);
}

}  // namespace

std::vector<Factored> chevalley_x_images(const ModuleSpec& spec) {
  std::vector<Factored> xs, ys;
  images(spec, xs, ys);
  return xs;
}

std::vector<Factored> chevalley_y_images(const ModuleSpec& spec) {
  std::vector<Factored> xs, ys;
  images(spec, xs, ys);
  return ys;
}

Module::Module(ModuleSpec spec) : spec_(std::move(spec)) {
  for (auto* v : {&spec_.lambda, &spec_.base_a})
    for (auto& q : *v) q.canonicalize();
  if (spec_.witt_a) spec_.witt_a->canonicalize();
  spec_.validate();
  images(spec_, x_one_, y_one_);
}

Rational Module::lambda_pow(const Degree& r) const {
  Rational out = 1;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] != 0) out *= pow(spec_.lambda[j], r[j]);
  return out;
}

Poly Module::twist(const Poly& p, int sigma_index, int sigma_power, const Degree& r) const {
  const Ranks rk = ranks();
  std::vector<long> shift(rk.vars(), 0);
  bool any = false;
  if (sigma_index > 0 && sigma_power != 0) {
    shift[sigma_index - 1] = sigma_power;
    any = true;
  }
  for (std::size_t j = 0; j < r.size(); ++j) {
    shift[rk.l + j] = r[j];
    any = any || r[j] != 0;
  }
  return any ? shift_vars(p, shift) : p;
}

Poly Module::act_fin(int m, const Degree& r, const Poly& p) const {
  const auto& fin = algebra().fin();
  const Rational scale = lambda_pow(r);
  if (fin.is_cartan(m)) {
    Poly out = Poly::variable(ranks(), VarId::H(m + 1)) * twist(p, 0, 0, r);
    return scale == 1 ? out : scale * std::move(out);
  }
  for (int i = 1; i <= algebra().rank; ++i) {
    if (m == fin.x(i)) return scale * (twist(p, i, 1, r) * x_one_[i - 1].value);
    if (m == fin.y(i)) return scale * (twist(p, i, -1, r) * y_one_[i - 1].value);
  }
  const auto& w = fin.word(m);
  return w.scalar * act_letters(w.letters, r, p);
}

// [g0(r), [g1, ... ]] acting on p; the loop degree rides on the outermost letter.
Poly Module::act_letters(std::span<const int> letters, const Degree& r, const Poly& p) const {
  if (letters.size() == 1) return act_fin(letters[0], r, p);
  const Degree zero(r.size(), 0);
  auto inner = letters.subspan(1);
  Poly a = act_fin(letters[0], r, act_letters(inner, zero, p));
  Poly b = act_letters(inner, zero, act_fin(letters[0], r, p));
  return a - b;
}

Poly Module::act_deriv(int i, const Degree& r, const Poly& p) const {
  const Ranks rk = ranks();
  const Poly di = Poly::variable(rk, VarId::d(i));
  const Variant v = algebra().variant;
  if (v == Variant::Finite || v == Variant::Toroidal) return di * p;
  if (v == Variant::Witt && !p.h_free())
    throw DomainError("the Witt module acts on polynomials in the d variables only");
  Poly affine = di - C(rk, Rational(r[i - 1]) * (*spec_.witt_a + 1));
  return lambda_pow(r) * (twist(p, 0, 0, r) * affine);
}

Poly Module::act(const Symbol& g, const Poly& p) const {
  check_symbol(algebra(), g);
  if (p.ranks() != ranks()) throw StructuralError("polynomial ranks do not match the module");
  switch (g.kind) {
    case Symbol::Kind::Fin: return act_fin(g.index, g.degree, p);
    case Symbol::Kind::Central: return Poly(ranks());
    case Symbol::Kind::Deriv: return act_deriv(g.index, g.degree, p);
  }
  return Poly(ranks());
}

Poly Module::act(const LieElt& X, const Poly& p) const {
  Poly out(ranks());
  for (const auto& [s, c] : X.terms()) out += c * act(s, p);
  return out;
}

Poly Module::act_word(std::span<const Symbol> word, const Poly& p) const {
  Poly cur = p;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = act(*it, cur);
  return cur;
}

namespace {

void require_family(const ModuleSpec& s, Family f, const char* what) {
  if (s.algebra.family != f) throw DomainError(std::string(what) + ": family mismatch");
}

void require_variant(const ModuleSpec& s, std::initializer_list<Variant> ok, const char* what) {
  if (std::find(ok.begin(), ok.end(), s.algebra.variant) == ok.end())
    throw DomainError(std::string(what) + ": variant mismatch");
}

void require_chevalley(const ModuleSpec& s, const Symbol& g, const char* what) {
  if (g.kind != Symbol::Kind::Fin) throw DomainError(std::string(what) + ": expects x_i, y_i or H_i");
  for (int c : g.degree)
    if (c != 0) throw DomainError(std::string(what) + ": expects loop degree 0");
  const auto& fin = s.algebra.fin();
  bool ok = fin.is_cartan(g.index);
  for (int i = 1; i <= s.algebra.rank; ++i) ok = ok || g.index == fin.x(i) || g.index == fin.y(i);
  if (!ok) throw DomainError(std::string(what) + ": expects x_i, y_i or H_i");
}

}  // namespace

Poly act_chevalley_A(const ModuleSpec& spec, const Symbol& g, const Poly& p) {
  require_family(spec, Family::A, "act_chevalley_A");
  require_chevalley(spec, g, "act_chevalley_A");
  return Module(spec).act(g, p);
}

Poly act_chevalley_C(const ModuleSpec& spec, const Symbol& g, const Poly& p) {
  require_family(spec, Family::C, "act_chevalley_C");
  require_chevalley(spec, g, "act_chevalley_C");
  return Module(spec).act(g, p);
}

Poly act_toroidal(const ModuleSpec& spec, const Symbol& g, const Poly& p) {
  require_variant(spec, {Variant::Toroidal}, "act_toroidal");
  return Module(spec).act(g, p);
}

Poly act_witt(const ModuleSpec& spec, const Symbol& g, const Poly& p) {
  require_variant(spec, {Variant::Witt, Variant::Full}, "act_witt");
  if (g.kind != Symbol::Kind::Deriv) throw DomainError("act_witt: expects t^k d_i");
  if (spec.algebra.variant == Variant::Witt && !p.h_free())
    throw DomainError("act_witt: polynomial involves H variables");
  return Module(spec).act(g, p);
}

Poly act_full(const ModuleSpec& spec, const Symbol& g, const Poly& p) {
  require_variant(spec, {Variant::Full}, "act_full");
  return Module(spec).act(g, p);
}

Poly act_element(const ModuleSpec& spec, const LieElt& X, const Poly& p) { return Module(spec).act(X, p); }

Poly act_word(const ModuleSpec& spec, std::span<const Symbol> word, const Poly& p) {
  return Module(spec).act_word(word, p);
}

std::vector<std::string> c_family_formulas(int l) {
  if (l < 2) throw StructuralError("C_l needs l >= 2");
  std::vector<std::string> out;
  out.push_back("convention: H_0 = 0, delta = 1 when k = l-1 and 0 otherwise, w_i = sigma_i");
  out.push_back("x_k.1 (k < l) = a_k * [k in S ? 1 : (H_k - H_{k-1} - 1/2)] * [k+1 in S ? ((1+delta)H_{k+1} - H_k + 1/2) : 1]");
  out.push_back("y_k.1 (k < l) = a_k^-1 * [k in S ? (H_k - H_{k-1} + 1/2) : 1] * [k+1 in S ? 1 : ((1+delta)H_{k+1} - H_k - 1/2)]");
  out.push_back("x_l.1 = a_l * [l in S ? 1 : -(H_l - 1/2 H_{l-1} - 3/4)(H_l - 1/2 H_{l-1} - 1/4)]");
  out.push_back("y_l.1 = a_l^-1 * [l in S ? -(H_l - 1/2 H_{l-1} + 3/4)(H_l - 1/2 H_{l-1} + 1/4) : 1]");
  out.push_back("x_i.g = w_i(g) (x_i.1), y_i.g = w_i^-1(g) (y_i.1), H_i.g = H_i g");
  return out;
}

}  // namespace torofree
