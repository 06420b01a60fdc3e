#include "torofree/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace torofree {

void CheckReport::record(Counterexample c) {
  ++failure_count;
  if (failures.size() < kKeptFailures) failures.push_back(std::move(c));
}

void CheckReport::absorb(const CheckReport& other) {
  cases += other.cases;
  failure_count += other.failure_count;
  for (const auto& f : other.failures)
    if (failures.size() < kKeptFailures) failures.push_back(f);
}

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 of (seed, index)
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

Poly random_poly(Ranks r, std::mt19937_64& rng, const PolySampling& how) {
  std::vector<int> slots;
  for (int k = 0; k < r.vars(); ++k) {
    const bool is_h = k < r.l;
    if ((how.d_only && is_h) || (how.h_only && !is_h)) continue;
    slots.push_back(k);
  }
  std::uniform_int_distribution<int> nterms(1, how.max_terms);
  std::uniform_int_distribution<int> deg(0, how.max_degree);
  std::uniform_int_distribution<int> coeff(1, 18);
  for (;;) {
    std::vector<Term> terms;
    const int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
      Term term;
      int total = slots.empty() ? 0 : deg(rng);
      std::uniform_int_distribution<int> pick(0, std::max<int>(0, static_cast<int>(slots.size()) - 1));
      for (int e = 0; e < total; ++e) ++term.exp[slots[pick(rng)]];
      int c = coeff(rng);
      term.coeff = c <= 9 ? c - 10 : c - 9;
      terms.push_back(std::move(term));
    }
    Poly p = Poly::from_terms(r, std::move(terms));
    if (!p.is_zero()) return p;
  }
}

std::vector<Symbol> generator_symbols(const AlgebraDesc& A, DegreeWindow w) {
  std::vector<Symbol> out;
  for (const auto& s : basis_of(A, w)) {
    if (s.kind == Symbol::Kind::Fin) {
      const auto& fin = A.fin();
      bool keep = fin.is_cartan(s.index);
      for (int i = 1; i <= A.rank; ++i) keep = keep || s.index == fin.x(i) || s.index == fin.y(i);
      if (!keep) continue;
    }
    out.push_back(s);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

PolySampling sampling_for(const AlgebraDesc& A) {
  PolySampling how;
  how.d_only = A.variant == Variant::Witt;
  return how;
}

Counterexample mismatch(std::string gen, const Poly& input, const Poly& expected, const Poly& got) {
  return {std::move(gen), to_string(input), to_string(expected), to_string(got), to_string(expected - got)};
}

// Merges per-index partial reports in index order.
CheckReport merge(std::string name, std::uint64_t seed, std::vector<CheckReport>& parts) {
  CheckReport out;
  out.name = std::move(name);
  out.seed = seed;
  for (const auto& p : parts) out.absorb(p);
  return out;
}

}  // namespace

CheckReport bracket_compat_check(const ActionOracle& M, const VerifyOptions& opt) {
  const AlgebraDesc& A = M.algebra();
  const auto gens = generator_symbols(A, opt.window);
  const long n = static_cast<long>(gens.size());
  const PolySampling how = sampling_for(A);
  std::vector<CheckReport> parts(static_cast<std::size_t>(n * n));
  for_each_index(opt.exec, n * n, [&](long k) {
    const Symbol& X = gens[k / n];
    const Symbol& Y = gens[k % n];
    auto rng = case_rng(opt.seed, static_cast<std::uint64_t>(k));
    const LieElt br = bracket(A, X, Y);
    CheckReport& part = parts[static_cast<std::size_t>(k)];
    for (int s = 0; s < opt.samples; ++s) {
      Poly p = random_poly(M.ranks(), rng, how);
      Poly lhs = M.act(br, p);
      Poly rhs = M(X, M(Y, p)) - M(Y, M(X, p));
      ++part.cases;
      if (!(lhs == rhs)) part.record(mismatch("[" + to_string(A, X) + ", " + to_string(A, Y) + "]", p, lhs, rhs));
    }
  });
  return merge("bracket_compat", opt.seed, parts);
}

CheckReport bracket_compat_check(const ModuleSpec& spec, const VerifyOptions& opt) {
  return bracket_compat_check(make_oracle(spec), opt);
}

CheckReport central_bracket_check(const ActionOracle& M, const VerifyOptions& opt) {
  const AlgebraDesc& A = M.algebra();
  CheckReport out;
  out.name = "central_bracket";
  out.seed = opt.seed;
  if (!A.has_center()) return out;
  const int n = A.loop_vars;
  const auto& fin = A.fin();
  const auto degrees = degrees_in(n, opt.window);
  const long total = static_cast<long>(degrees.size()) * n * A.rank;
  std::vector<CheckReport> parts(static_cast<std::size_t>(total));
  const Poly one = Poly::constant(M.ranks(), 1);
  for_each_index(opt.exec, total, [&](long k) {
    const Degree& a = degrees[k / (n * A.rank)];
    const int j = static_cast<int>((k / A.rank) % n) + 1;
    const int i = static_cast<int>(k % A.rank) + 1;
    Degree ej(n, 0), rest = a;
    ej[j - 1] = 1;
    rest[j - 1] -= 1;
    const Symbol X = Symbol::fin(fin.x(i), ej), Y = Symbol::fin(fin.y(i), rest);
    const LieElt h = coroot(A, i, a);
    CheckReport& part = parts[static_cast<std::size_t>(k)];
    const std::string label = "[" + to_string(A, X) + ", " + to_string(A, Y) + "] - h" + std::to_string(i) + degree_text(a);

    // Algebra side: the bracket has exactly the predicted central part.
    LieElt expect = h + LieElt::of(Symbol::central(j, a), fin.form(fin.x(i), fin.y(i)));
    LieElt got = bracket(A, X, Y);
    ++part.cases;
    if (!(expect == got))
      part.record({label, "algebra", to_string(A, expect), to_string(A, got), to_string(A, expect - got)});

    // Module side: the central element produced by the bracket kills 1.
    Poly lhs = M(X, M(Y, one)) - M(Y, M(X, one)) - M.act(h, one);
    ++part.cases;
    if (!lhs.is_zero()) part.record(mismatch(label + " on 1", one, Poly(M.ranks()), lhs));
    // and applied directly
    const LieElt K = LieElt::of(Symbol::central(j, a));
    ++part.cases;
    if (Poly kp = M.act(K, one); !kp.is_zero())
      part.record(mismatch(to_string(A, K) + " on 1", one, Poly(M.ranks()), kp));
  });
  return merge("central_bracket", opt.seed, parts);
}

CheckReport twist_factor_check(const ActionOracle& M, const VerifyOptions& opt) {
  const AlgebraDesc& A = M.algebra();
  CheckReport out;
  out.name = "twist_factor";
  out.seed = opt.seed;
  if (!A.has_finite_part()) return out;
  std::vector<Symbol> gens;
  for (const auto& s : generator_symbols(A, opt.window))
    if (s.kind != Symbol::Kind::Deriv) gens.push_back(s);
  const long n = static_cast<long>(gens.size());
  std::vector<CheckReport> parts(static_cast<std::size_t>(n));
  const Ranks rk = M.ranks();
  const auto& fin = A.fin();
  for_each_index(opt.exec, n, [&](long k) {
    const Symbol& g = gens[k];
    auto rng = case_rng(opt.seed, static_cast<std::uint64_t>(k));
    CheckReport& part = parts[static_cast<std::size_t>(k)];
    const Poly on1 = M.on_one(g);
    for (int s = 0; s < opt.samples; ++s) {
      Poly p = random_poly(rk, rng);
      Poly expected(rk);
      if (g.kind == Symbol::Kind::Fin) {
        std::vector<long> shift(rk.vars(), 0);
        for (int i = 1; i <= A.rank; ++i) {
          if (g.index == fin.x(i)) shift[i - 1] = 1;
          if (g.index == fin.y(i)) shift[i - 1] = -1;
        }
        for (std::size_t j = 0; j < g.degree.size(); ++j) shift[rk.l + j] = g.degree[j];
        expected = shift_vars(p, shift) * on1;
      }
      Poly got = M(g, p);
      ++part.cases;
      if (!(expected == got)) part.record(mismatch(to_string(A, g), p, expected, got));
    }
  });
  return merge("twist_factor", opt.seed, parts);
}

CheckReport jacobi_check(const AlgebraDesc& A, const VerifyOptions& opt, BracketFn bracket_override) {
  A.validate();
  const auto basis = basis_of(A, opt.window);
  const long n = static_cast<long>(basis.size());
  BracketFn br = bracket_override ? std::move(bracket_override)
                                  : BracketFn([&A](const Symbol& a, const Symbol& b) { return bracket(A, a, b); });
  auto br_elt = [&](const LieElt& X, const LieElt& Y) {
    LieElt out;
    for (const auto& [a, ca] : X.terms())
      for (const auto& [b, cb] : Y.terms()) {
        LieElt t = br(a, b);
        t *= ca * cb;
        out += t;
      }
    return out;
  };
  auto jacobi = [&](const Symbol& x, const Symbol& y, const Symbol& z) {
    LieElt X = LieElt::of(x), Y = LieElt::of(y), Z = LieElt::of(z);
    return br_elt(X, br(y, z)) + br_elt(Y, br(z, x)) + br_elt(Z, br(x, y));
  };
  auto label = [&](const Symbol& x, const Symbol& y, const Symbol& z) {
    return to_string(A, x) + ", " + to_string(A, y) + ", " + to_string(A, z);
  };

  // Antisymmetry on all pairs.
  std::vector<CheckReport> anti(static_cast<std::size_t>(n));
  for_each_index(opt.exec, n, [&](long a) {
    for (long b = a; b < n; ++b) {
      LieElt s = br(basis[a], basis[b]) + br(basis[b], basis[a]);
      ++anti[a].cases;
      if (!s.is_zero())
        anti[a].record({"antisymmetry", to_string(A, basis[a]) + ", " + to_string(A, basis[b]), "0", to_string(A, s),
                        to_string(A, s)});
    }
  });

  std::vector<CheckReport> parts;
  if (opt.samples == 0) {
    // Jacobi is alternating up to antisymmetry, so unordered triples suffice.
    parts.resize(static_cast<std::size_t>(n));
    for_each_index(opt.exec, n, [&](long a) {
      for (long b = a; b < n; ++b)
        for (long c = b; c < n; ++c) {
          LieElt j = jacobi(basis[a], basis[b], basis[c]);
          ++parts[a].cases;
          if (!j.is_zero())
            parts[a].record({"jacobi", label(basis[a], basis[b], basis[c]), "0", to_string(A, j), to_string(A, j)});
        }
    });
  } else {
    const long total = opt.samples;
    parts.resize(static_cast<std::size_t>(total));
    for_each_index(opt.exec, total, [&](long k) {
      auto rng = case_rng(opt.seed, static_cast<std::uint64_t>(k));
      std::uniform_int_distribution<long> pick(0, n - 1);
      const Symbol &x = basis[pick(rng)], &y = basis[pick(rng)], &z = basis[pick(rng)];
      LieElt j = jacobi(x, y, z);
      ++parts[k].cases;
      if (!j.is_zero()) parts[k].record({"jacobi", label(x, y, z), "0", to_string(A, j), to_string(A, j)});
    });
  }
  CheckReport out = merge("jacobi", opt.seed, anti);
  for (const auto& p : parts) out.absorb(p);
  return out;
}

CheckReport cocycle_identity_check(const Rational& c1, const Rational& c2, int n, const VerifyOptions& opt,
                                   CocycleFn phi_override) {
  if (n < 1) throw StructuralError("cocycle identity needs n >= 1");
  const DegreeWindow w = opt.window;
  struct Combo {
    std::string name;
    Rational a, b;
  };
  const std::vector<Combo> combos = {{"phi1", 1, 0}, {"phi2", 0, 1}, {"combination", c1, c2}};
  AlgebraDesc full{Family::A, 1, n, Variant::Full, 0, 0};
  const long total = std::max(opt.samples, 1);
  std::vector<CheckReport> parts(static_cast<std::size_t>(total));
  for_each_index(opt.exec, total, [&](long k) {
    auto rng = case_rng(opt.seed, static_cast<std::uint64_t>(k));
    std::uniform_int_distribution<int> deg(w.lo, w.hi), coef(-3, 3);
    auto draw = [&] {
      std::vector<Rational> u(n);
      Degree r(n);
      for (int i = 0; i < n; ++i) {
        u[i] = coef(rng);
        r[i] = deg(rng);
      }
      if (std::all_of(u.begin(), u.end(), [](const Rational& q) { return q == 0; })) u[0] = 1;
      return derivation(u, r);
    };
    LieElt X = draw(), Y = draw(), Z = draw();
    CheckReport& part = parts[static_cast<std::size_t>(k)];
    for (const auto& combo : combos) {
      CocycleFn phi = phi_override ? phi_override
                                   : CocycleFn([&combo](const LieElt& a, const LieElt& b) {
                                       return cocycle(combo.a, combo.b, a, b);
                                     });
      LieElt lhs = phi(witt_bracket(X, Y), Z) + phi(witt_bracket(Y, Z), X) + phi(witt_bracket(Z, X), Y);
      LieElt rhs = der_on_center(X, phi(Y, Z)) + der_on_center(Y, phi(Z, X)) + der_on_center(Z, phi(X, Y));
      ++part.cases;
      if (!(lhs == rhs))
        part.record({combo.name,
                     to_string(full, X) + "; " + to_string(full, Y) + "; " + to_string(full, Z),
                     to_string(full, lhs), to_string(full, rhs), to_string(full, lhs - rhs)});
    }
  });
  return merge("cocycle_identity", opt.seed, parts);
}

CheckReport freeness_check(const ActionOracle& M, const VerifyOptions& opt) {
  const AlgebraDesc& A = M.algebra();
  const Ranks rk = M.ranks();
  std::vector<std::pair<Symbol, Poly>> gens;
  const Degree zero(A.degree_len(), 0);
  if (A.has_finite_part())
    for (int i = 1; i <= A.rank; ++i)
      gens.emplace_back(Symbol::fin(A.fin().cartan(i), zero), Poly::variable(rk, VarId::H(i)));
  for (int j = 1; j <= A.loop_vars; ++j) gens.emplace_back(Symbol::deriv(j, zero), Poly::variable(rk, VarId::d(j)));
  const long n = static_cast<long>(gens.size());
  const PolySampling how = sampling_for(A);
  std::vector<CheckReport> parts(static_cast<std::size_t>(n));
  for_each_index(opt.exec, n, [&](long k) {
    auto rng = case_rng(opt.seed, static_cast<std::uint64_t>(k));
    const auto& [g, var] = gens[k];
    for (int s = 0; s < opt.samples; ++s) {
      Poly p = random_poly(rk, rng, how);
      Poly expected = var * p, got = M(g, p);
      ++parts[k].cases;
      if (!(expected == got)) parts[k].record(mismatch(to_string(A, g), p, expected, got));
    }
  });
  return merge("freeness", opt.seed, parts);
}

CheckReport degree_reduction_check(const ActionOracle& M, const std::vector<Rational>& lambda,
                                   const VerifyOptions& opt) {
  const AlgebraDesc& A = M.algebra();
  if (A.variant != Variant::Toroidal && A.variant != Variant::Full)
    throw DomainError("degree reduction needs the toroidal or full variant");
  const int n = A.loop_vars;
  const Ranks rk = M.ranks();
  const int h = A.fin().cartan(1);
  std::vector<CheckReport> parts(static_cast<std::size_t>(n));
  for_each_index(opt.exec, n, [&](long jj) {
    const int j = static_cast<int>(jj) + 1;
    auto rng = case_rng(opt.seed, static_cast<std::uint64_t>(jj));
    Degree ej(n, 0), zero(n, 0);
    ej[j - 1] = 1;
    const Poly dj = Poly::variable(rk, VarId::d(j));
    for (int s = 0; s < opt.samples; ++s) {
      Poly w = random_poly(rk, rng);
      if (w.deg_in(VarId::d(j)) < 1) w = w * dj + w;
      Poly out = M(Symbol::fin(h, ej), w) - lambda[j - 1] * M(Symbol::fin(h, zero), w);
      ++parts[jj].cases;
      bool ok = out.deg_in(VarId::d(j)) < w.deg_in(VarId::d(j));
      for (int q = 1; q <= n && ok; ++q)
        if (q != j) ok = out.deg_in(VarId::d(q)) <= w.deg_in(VarId::d(q));
      if (!ok)
        parts[jj].record(mismatch("(H1(e" + std::to_string(j) + ") - lambda_" + std::to_string(j) + " H1)", w, w, out));
    }
  });
  return merge("degree_reduction", opt.seed, parts);
}

CheckReport degree_reduction_check(const ModuleSpec& spec, const VerifyOptions& opt) {
  return degree_reduction_check(make_oracle(spec), spec.lambda, opt);
}

CheckReport lemma_pa_property(Ranks r, const VerifyOptions& opt, DifferenceFn override_fn) {
  if (r.l < 1) throw StructuralError("needs at least one H variable");
  DifferenceFn diff = override_fn ? std::move(override_fn) : DifferenceFn(shift_difference);
  const long total = opt.samples;
  std::vector<CheckReport> parts(static_cast<std::size_t>(total));
  PolySampling how;
  how.max_degree = 6;
  for_each_index(opt.exec, total, [&](long k) {
    auto rng = case_rng(opt.seed, static_cast<std::uint64_t>(k));
    Poly g = random_poly(r, rng, how);
    CheckReport& part = parts[static_cast<std::size_t>(k)];
    for (int i = 1; i <= r.l; ++i) {
      const VarId v = VarId::H(i);
      const int d = g.deg_in(v);
      for (long kk : {-4L, -3L, -2L, -1L, 1L, 2L, 3L, 4L}) {
        Poly out = diff(DifferenceMode::PowerMinusId, kk, i, g);
        ++part.cases;
        if (out.deg_in(v) != d - 1)
          part.record({"(sigma_" + std::to_string(i) + "^" + std::to_string(kk) + " - Id)", to_string(g),
                       "degree " + std::to_string(d - 1), "degree " + std::to_string(out.deg_in(v)), to_string(out)});
      }
      for (long kp = 0; kp <= 7; ++kp) {
        Poly out = diff(DifferenceMode::DifferencePower, kp, i, g);
        const int expect = kp > d ? -1 : d - static_cast<int>(kp);
        ++part.cases;
        if (out.deg_in(v) != expect)
          part.record({"(sigma_" + std::to_string(i) + " - Id)^" + std::to_string(kp), to_string(g),
                       "degree " + std::to_string(expect), "degree " + std::to_string(out.deg_in(v)), to_string(out)});
      }
    }
  });
  return merge("lemma_pa", opt.seed, parts);
}

std::vector<CheckReport> run_suites(const ModuleSpec& spec, const VerifyOptions& opt) {
  spec.validate();
  const AlgebraDesc& A = spec.algebra;
  ActionOracle M = make_oracle(spec);
  std::vector<CheckReport> out;
  auto timed = [&](auto&& fn) {
    auto t0 = Clock::now();
    CheckReport r = fn();
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(std::move(r));
  };
  timed([&] { return bracket_compat_check(M, opt); });
  if (A.has_center()) timed([&] { return central_bracket_check(M, opt); });
  if (A.has_finite_part()) timed([&] { return twist_factor_check(M, opt); });
  timed([&] { return freeness_check(M, opt); });
  if (A.variant == Variant::Toroidal || A.variant == Variant::Full)
    timed([&] { return degree_reduction_check(M, spec.lambda, opt); });
  timed([&] {
    VerifyOptions j = opt;
    j.samples = 0;
    j.window = {-1, 1};
    return jacobi_check(A, j);
  });
  if (A.variant == Variant::Full || A.variant == Variant::Witt)
    timed([&] { return cocycle_identity_check(A.c1, A.c2, A.loop_vars, opt); });
  if (A.has_finite_part())
    timed([&] { return lemma_pa_property(spec.ranks(), opt); });
  return out;
}

}  // namespace torofree
