#include "torofree/json_io.hpp"

namespace torofree {

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

std::vector<Rational> rationals_from(const Json& j, const char* field) {
  if (!j.is_array()) throw StructuralError(std::string("field '") + field + "' must be an array");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json polys(const std::vector<Poly>& v) {
  Json a = Json::array();
  for (const auto& p : v) a.push_back(to_string(p));
  return a;
}

Json point(const Point& z) { return rationals(z); }

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw ParseError("rational must be a string \"p/q\" or an integer, got " + j.dump());
}

ModuleSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw StructuralError("spec must be a JSON object");
  // nested {"algebra": {...}} as documented; the flat layout is also accepted
  const Json& alg = j.contains("algebra") ? j.at("algebra") : j;
  if (!alg.is_object()) throw StructuralError("field 'algebra' must be an object");
  auto need = [&](const char* key) -> const Json& {
    if (!alg.contains(key)) throw StructuralError(std::string("spec is missing field '") + key + "'");
    return alg.at(key);
  };
  AlgebraDesc A;
  A.family = parse_family(need("family").get<std::string>());
  A.rank = need("rank").get<int>();
  A.variant = parse_variant(need("variant").get<std::string>());
  A.loop_vars = alg.value("loop_vars", 0);
  if (alg.contains("cocycle")) {
    const Json& c = alg.at("cocycle");
    if (!c.is_array() || c.size() != 2) throw StructuralError("field 'cocycle' must be a pair [c1, c2]");
    A.c1 = rational_from_json(c[0]);
    A.c2 = rational_from_json(c[1]);
  }
  if (alg.contains("c1")) A.c1 = rational_from_json(alg.at("c1"));
  if (alg.contains("c2")) A.c2 = rational_from_json(alg.at("c2"));
  A.validate();

  ModuleSpec s;
  s.algebra = A;
  if (j.contains("lambda")) s.lambda = rationals_from(j.at("lambda"), "lambda");
  if (j.contains("witt_a") && !j.at("witt_a").is_null()) s.witt_a = rational_from_json(j.at("witt_a"));
  if (j.contains("base_a")) s.base_a = rationals_from(j.at("base_a"), "base_a");
  const Ranks r = s.ranks();
  if (j.contains("base_b")) {
    const Json& b = j.at("base_b");
    s.base_b = b.is_string() ? parse_poly(b.get<std::string>(), r) : Poly::constant(r, rational_from_json(b));
  } else {
    s.base_b = Poly(r);
  }
  if (j.contains("S")) s.S = j.at("S").get<std::vector<int>>();
  for (auto* v : {&s.lambda, &s.base_a})
    for (auto& q : *v) q.canonicalize();
  s.validate();
  return s;
}

Json to_json(const ModuleSpec& s) {
  const AlgebraDesc& A = s.algebra;
  Json alg;
  alg["family"] = to_string(A.family);
  alg["rank"] = A.rank;
  alg["loop_vars"] = A.loop_vars;
  alg["variant"] = to_string(A.variant);
  if (A.variant == Variant::Full) alg["cocycle"] = Json::array({to_string(A.c1), to_string(A.c2)});
  Json j;
  j["algebra"] = alg;
  j["lambda"] = rationals(s.lambda);
  j["witt_a"] = s.witt_a ? Json(to_string(*s.witt_a)) : Json(nullptr);
  j["base_a"] = rationals(s.base_a);
  j["base_b"] = to_string(s.base_b);
  j["S"] = s.S;
  return j;
}

Json to_json(DegreeWindow w) { return Json::array({w.lo, w.hi}); }

Json to_json(const CheckReport& rep, bool timings) {
  Json j;
  j["name"] = rep.name;
  j["passed"] = rep.passed();
  j["cases"] = rep.cases;
  j["failures"] = rep.failure_count;
  j["seed"] = rep.seed;
  if (rep.failures.empty()) {
    j["first_counterexample"] = nullptr;
  } else {
    const auto& c = rep.failures.front();
    j["first_counterexample"] = {{"generator", c.generator},
                                 {"input", c.input},
                                 {"expected", c.expected},
                                 {"got", c.got},
                                 {"difference", c.difference}};
  }
  if (timings && rep.seconds) j["seconds"] = *rep.seconds;
  return j;
}

Json to_json(const WitnessReport& rep) {
  Json j;
  j["found"] = rep.found;
  j["witness"] = rep.witness ? Json(to_string(*rep.witness)) : Json(nullptr);
  j["ideal_generators"] = polys(rep.generators);
  j["witness_degree"] = rep.witness_degree;
  Json pts = Json::array();
  for (const auto& z : rep.points) pts.push_back(point(z));
  j["points"] = pts;
  j["checked_degree_bound"] = rep.checked_degree_bound;
  j["checked_loop_window"] = to_json(rep.checked_loop_window);
  j["seeds_tried"] = rep.seeds_tried;
  j["degenerate_seeds"] = rep.degenerate_seeds;
  j["complete_at_bounds"] = rep.degenerate_seeds == 0;
  return j;
}

Json to_json(const SimplicityVerdict& v) {
  Json j;
  j["simple"] = v.simple;
  j["rule"] = v.rule;
  j["printed_rule_simple"] = v.printed_rule_simple;
  return j;
}

Json to_json(const RecoveredParams& p) {
  Json j;
  j["lambda"] = rationals(p.lambda);
  j["witt_a"] = p.witt_a ? Json(to_string(*p.witt_a)) : Json(nullptr);
  j["x1_list"] = polys(p.x1_list);
  j["y1_list"] = polys(p.y1_list);
  Json c = Json::array();
  for (const auto& d : p.candidates)
    c.push_back({{"base_a", rationals(d.base_a)}, {"base_b", to_string(d.base_b)}, {"S", d.S}});
  j["candidates"] = c;
  if (const auto* d = p.preferred()) {
    j["base_a"] = rationals(d->base_a);
    j["base_b"] = to_string(d->base_b);
    j["S"] = d->S;
  }
  return j;
}

Json to_json(const CyclicityResult& c) {
  return Json{{"reached_constant", c.reached_constant}, {"rounds", c.rounds}, {"span_dim", c.span_dim}};
}

}  // namespace torofree
