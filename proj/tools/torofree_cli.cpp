#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "torofree/classify.hpp"
#include "torofree/json_io.hpp"
#include "torofree/verify.hpp"

using namespace torofree;

namespace {

// Exit codes.
constexpr int kPass = 0, kCheckFailed = 1, kUsage = 2;

struct Globals {
  bool pretty = false;
  bool timings = false;
  std::uint64_t seed = 1;
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

ModuleSpec load_spec(const std::string& path) { return spec_from_json(read_json_file(path)); }

DegreeWindow parse_window(const std::vector<int>& w) {
  if (w.size() != 2 || w[0] > w[1]) throw UsageError("window must be two integers lo hi with lo <= hi");
  return {w[0], w[1]};
}

std::string summary(const Json& j) {
  std::ostringstream os;
  const std::string cmd = j.value("command", "");
  os << cmd << ":";
  if (j.contains("reports")) {
    for (const auto& r : j["reports"])
      os << "\n  " << (r["passed"].get<bool>() ? "PASS " : "FAIL ") << r["name"].get<std::string>() << " ("
         << r["cases"] << " cases)";
  } else if (j.contains("result")) {
    os << " " << j["result"].get<std::string>();
  } else if (j.contains("simple")) {
    os << " " << (j["simple"].get<bool>() ? "simple" : "not simple") << " [" << j["rule"].get<std::string>() << "]";
  } else if (j.contains("found")) {
    os << " witness " << (j["found"].get<bool>() ? "found" : "not found at these bounds");
  } else if (j.contains("isomorphic")) {
    os << " " << (j["isomorphic"].get<bool>() ? "isomorphic" : "not isomorphic");
  } else if (j.contains("error")) {
    os << " error: " << j["error"]["message"].get<std::string>();
  }
  return os.str();
}

void emit(const Globals& g, const Json& j) {
  const std::string text = g.pretty ? j.dump(2) : j.dump();
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw UsageError("cannot write '" + g.out + "'");
    f << text << "\n";
  } else {
    std::cout << text << "\n";
  }
  if (g.pretty) std::cerr << summary(j) << "\n";
}

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

Json header(const std::string& cmd, const Globals& g) {
  Json j;
  j["command"] = cmd;
  j["seed"] = g.seed;
  return j;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("TOROFREE_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
      throw UsageError(std::string("TOROFREE_SEED is not an unsigned integer: ") + s);
    }
  }
  return 1;
}

int error_exit(const Globals& g, const std::string& kind, const std::string& message,
               const std::string& code = {}) {
  Json j;
  j["command"] = "error";
  j["error"] = {{"kind", kind}, {"message", message}};
  if (!code.empty()) j["error"]["code"] = code;
  std::cerr << message << "\n";
  try {
    emit(g, j);
  } catch (...) {
  }
  return kind == "classification" ? kCheckFailed : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  try {
    g.seed = default_seed();
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Cartan-free modules over toroidal and full toroidal Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", g.pretty, "Indented JSON plus a readable summary on stderr");
  app.add_flag("--timings", g.timings, "Include wall times in reports");
  app.add_option("--seed", g.seed, "Random seed (default: TOROFREE_SEED or 1)");
  app.add_option("--out", g.out, "Write JSON here instead of stdout");

  std::string spec_path, spec2_path, gen_text, poly_text;
  int samples = 20, maxdeg = 4, max_word_len = 12, degbound = -1, rank = 2, lp = 1, np = 1;
  std::vector<int> window{-2, 2};
  bool serial = false;

  auto* act = app.add_subcommand("act", "Apply a Lie algebra element to a polynomial");
  act->add_option("--spec", spec_path)->required();
  act->add_option("--gen", gen_text, "Element, e.g. \"x1(2,0)\" or \"2*H1 - K1(1)\"")->required();
  act->add_option("--poly", poly_text, "Polynomial, e.g. \"d1*H1\"")->required();

  auto* ver = app.add_subcommand("verify", "Run every property suite that applies to the spec");
  ver->add_option("--spec", spec_path)->required();
  ver->add_option("--samples", samples);
  ver->add_option("--window", window)->expected(2);
  ver->add_flag("--serial", serial, "Run the serial reference path");

  auto* simp = app.add_subcommand("simplicity", "Predict simplicity");
  simp->add_option("--spec", spec_path)->required();

  auto* wit = app.add_subcommand("witness", "Search for an invariant ideal");
  wit->add_option("--spec", spec_path)->required();
  wit->add_option("--maxdeg", maxdeg);
  wit->add_option("--window", window)->expected(2);

  auto* cyc = app.add_subcommand("cyclicity", "Try to reach a constant from a polynomial");
  cyc->add_option("--spec", spec_path)->required();
  cyc->add_option("--poly", poly_text)->required();
  cyc->add_option("--max-word-len", max_word_len);
  cyc->add_option("--degbound", degbound, "Total degree cap (default: degree of the start + 4)");
  cyc->add_option("--window", window)->expected(2);

  auto* rec = app.add_subcommand("recover", "Recover parameters from the action of the spec's module");
  rec->add_option("--spec", spec_path)->required();

  auto* iso = app.add_subcommand("iso", "Isomorphism test for two specs");
  iso->add_option("--spec", spec_path)->required();
  iso->add_option("--spec2", spec2_path)->required();

  auto* lpa = app.add_subcommand("lemma-pa", "Degree identities of the shift differences");
  lpa->add_option("--l", lp);
  lpa->add_option("--n", np);
  lpa->add_option("--samples", samples);

  auto* form = app.add_subcommand("formulas", "Print the C_l generator formulas and optionally write them to a file");
  form->add_option("--rank", rank);
  std::string doc_path;
  form->add_option("--doc", doc_path, "Markdown file to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*act) {
      const ModuleSpec spec = load_spec(spec_path);
      const LieElt X = parse_element(spec.algebra, gen_text);
      const Poly p = parse_poly(poly_text, spec.ranks());
      Json j = header("act", g);
      j["generator"] = to_string(spec.algebra, X);
      j["input"] = to_string(p);
      j["result"] = to_string(act_element(spec, X, p));
      emit(g, j);
      return kPass;
    }
    if (*ver) {
      const ModuleSpec spec = load_spec(spec_path);
      VerifyOptions opt;
      opt.seed = g.seed;
      opt.samples = samples;
      opt.window = parse_window(window);
      opt.exec = serial ? Exec::Serial : Exec::Parallel;
      Json j = header("verify", g);
      j["spec"] = to_json(spec);
      Json reps = Json::array();
      bool all = true;
      for (const auto& r : run_suites(spec, opt)) {
        reps.push_back(to_json(r, g.timings));
        all = all && r.passed();
      }
      j["reports"] = reps;
      j["passed"] = all;
      emit(g, j);
      return all ? kPass : kCheckFailed;
    }
    if (*simp) {
      const ModuleSpec spec = load_spec(spec_path);
      Json j = header("simplicity", g);
      merge(j, to_json(simplicity_predict(spec)));
      emit(g, j);
      return kPass;
    }
    if (*wit) {
      const ModuleSpec spec = load_spec(spec_path);
      Json j = header("witness", g);
      merge(j, to_json(submodule_witness_search(spec, maxdeg, parse_window(window))));
      emit(g, j);
      return kPass;
    }
    if (*cyc) {
      const ModuleSpec spec = load_spec(spec_path);
      const Poly p = parse_poly(poly_text, spec.ranks());
      const int cap = degbound >= 0 ? degbound : p.total_degree() + 4;
      Json j = header("cyclicity", g);
      j["input"] = to_string(p);
      j["max_word_len"] = max_word_len;
      j["degbound"] = cap;
      const auto res = cyclicity_run(spec, p, max_word_len, cap, parse_window(window));
      merge(j, to_json(res));
      j["verdict"] = res.reached_constant ? "constant reached" : "inconclusive at budget";
      emit(g, j);
      return kPass;
    }
    if (*rec) {
      const ModuleSpec spec = load_spec(spec_path);
      Json j = header("recover", g);
      try {
        const RecoveredParams p = recover_parameters(make_oracle(spec));
        merge(j, to_json(p));
        const bool same = iso_test(p.to_spec(spec.algebra), spec);
        j["round_trip"] = same;
        emit(g, j);
        return same ? kPass : kCheckFailed;
      } catch (const ClassificationError& e) {
        return error_exit(g, "classification", e.what(), e.code());
      }
    }
    if (*iso) {
      const ModuleSpec a = load_spec(spec_path), b = load_spec(spec2_path);
      Json j = header("iso", g);
      j["isomorphic"] = iso_test(a, b);
      emit(g, j);
      return kPass;
    }
    if (*lpa) {
      if (lp < 1 || np < 0 || lp + np > kMaxVars) throw UsageError("need l >= 1, n >= 0, l + n <= 12");
      VerifyOptions opt;
      opt.seed = g.seed;
      opt.samples = samples;
      Json j = header("lemma-pa", g);
      const auto r = lemma_pa_property(Ranks{lp, np}, opt);
      j["reports"] = Json::array({to_json(r, g.timings)});
      j["passed"] = r.passed();
      emit(g, j);
      return r.passed() ? kPass : kCheckFailed;
    }
    if (*form) {
      if (rank < 2 || rank > kMaxRank) throw UsageError("C_l needs 2 <= l <= 8");
      const auto lines = c_family_formulas(rank);
      Json j = header("formulas", g);
      j["rank"] = rank;
      j["lines"] = lines;
      if (!doc_path.empty()) {
        std::filesystem::path p(doc_path);
        if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
        std::ofstream f(p);
        if (!f) throw UsageError("cannot write '" + doc_path + "'");
        f << "# Generator images for C_" << rank << "\n\n"
          << "Generated by `torofree formulas --rank " << rank << "`.\n\n```\n";
        for (const auto& l : lines) f << l << "\n";
        f << "```\n";
        j["doc"] = doc_path;
      }
      emit(g, j);
      return kPass;
    }
  } catch (const UsageError& e) {
    return error_exit(g, "usage", e.what());
  } catch (const StructuralError& e) {
    return error_exit(g, "validation", e.what());
  } catch (const DomainError& e) {
    return error_exit(g, "domain", e.what());
  } catch (const ParseError& e) {
    return error_exit(g, "parse", e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_exit(g, "validation", e.what());
  }
  return kUsage;
}
