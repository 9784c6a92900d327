// Command-line front end. Exit codes: 0 pass, 1 verification failure,
// 2 usage, parse or I/O error.

#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptv/classical.hpp"
#include "ptv/cone.hpp"
#include "ptv/diagram.hpp"
#include "ptv/eja.hpp"
#include "ptv/error.hpp"
#include "ptv/evaluate.hpp"
#include "ptv/io.hpp"
#include "ptv/leak.hpp"
#include "ptv/purification.hpp"
#include "ptv/suite.hpp"

namespace {

using nlohmann::json;
using namespace ptv;

constexpr const char* kGrammar = R"(term := name | id(sys) | seq(term, term) | par(term, term) | cup(sys) | cap(sys)
      | dagger(term) | sum(term {, term}) | zero(sys, sys) | scalar(number)
      | swap(sys, sys) | discard(sys) | maxmix(sys)
sys  := name | [int {, int}]        built-in names: I, Q<n>, C<n>
seq(g, f) means g after f.)";

/// Bad input from the user; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool json_out = false;
  int max_dim = 64;
  std::string systems_file;
  std::string generators_file;
};

struct Input {
  std::string term;
  std::string process_file;
  std::string system;
};

ModelFile load_model(const Globals& g) {
  ModelFile m;
  if (!g.generators_file.empty()) m = model_from_json(json::parse(read_file(g.generators_file)));
  if (!g.systems_file.empty()) {
    const SystemTable extra = SystemTable::parse(read_file(g.systems_file));
    for (const auto& [name, type] : extra.entries()) m.systems.define(name, type);
  }
  return m;
}

Process load_process(const Globals& g, const Input& in) {
  if (!in.process_file.empty() && !in.term.empty()) throw UsageError("give either --process or --term, not both");
  if (!in.process_file.empty()) return process_from_json(json::parse(read_file(in.process_file)));
  if (in.term.empty()) throw UsageError("a process is required: pass --process FILE or --term TEXT");
  const ModelFile m = load_model(g);
  return evaluate(parse(in.term, m.systems, &m.generators), m.generators, EvalOptions{g.max_dim});
}

SystemType load_system(const Globals& g, const Input& in) {
  if (in.system.empty()) throw UsageError("--system is required");
  return resolve_system(in.system, load_model(g).systems);
}

json blocks_json(const std::vector<Mat>& blocks) {
  json arr = json::array();
  for (const auto& b : blocks) arr.push_back(to_json(b));
  return arr;
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json_out)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int verdict(bool ok) { return ok ? 0 : 1; }

int cmd_eval(const Globals& g, const Input& in) {
  const Process p = load_process(g, in);
  if (g.json_out) {
    std::cout << to_json(p).dump(2) << "\n";
  } else {
    std::cout << describe(p) << "\n";
    std::cout << to_json(p).dump() << "\n";
  }
  return 0;
}

int cmd_fingerprint(const Globals& g, const Input& in) {
  const TomographyFingerprint fp = tomography_fingerprint(load_process(g, in));
  json j = fp.probabilities;
  if (g.json_out) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << fp.num_states << " states x " << fp.num_effects << " effects\n" << j.dump() << "\n";
  }
  return 0;
}

int cmd_check_pure(const Globals& g, const Input& in) {
  const Process p = load_process(g, in);
  const bool pure = is_pure(p, g.tol);
  emit(g, json{{"process", describe(p)}, {"pure", pure}}, std::string("pure: ") + (pure ? "true" : "false") + "\n");
  return verdict(pure);
}

int cmd_classify_leak(const Globals& g, const Input& in) {
  const Process l = load_process(g, in);
  if (!is_leak(l, g.tol)) {
    emit(g, json{{"leak", false}}, "not a leak\n");
    return 1;
  }
  const LeakClassification c = classify_leak(l, g.tol);
  json sig = json::array();
  for (const auto& s : c.sigma) sig.push_back(blocks_json(s));
  const json j{{"leak", true},
               {"system", c.system.blocks()},
               {"target", c.target.blocks()},
               {"trivial", c.trivial},
               {"residual", c.residual},
               {"cross_block", c.cross_block},
               {"sigma", sig}};
  std::ostringstream os;
  os << "leak " << c.system.to_string() << " -> " << c.system.to_string() << " x " << c.target.to_string()
     << "\ntrivial: " << (c.trivial ? "true" : "false") << "\nresidual: " << c.residual
     << "\ncross-block: " << c.cross_block << "\n";
  emit(g, j, os.str());
  return 0;
}

int cmd_purify(const Globals& g, const Input& in, const std::string& mode) {
  const Process f = load_process(g, in);
  json j;
  PurificationReport r;
  if (mode == "standard") {
    const StandardPurification p = standard_purification(f, std::nullopt, g.tol);
    r = verify_standard_purification(f, p.dilation, p.environment, g.tol);
    j["environment"] = p.environment.blocks();
    j["dilation"] = to_json(p.dilation);
  } else {
    const SymmetricPurification p = symmetric_purification(f, g.tol);
    r = verify_symmetric_purification(f, p.dilation, g.tol);
    j["dilation"] = to_json(p.dilation);
  }
  j["mode"] = mode;
  j["residual"] = r.residual;
  j["pure"] = r.pure;
  j["ok"] = r.ok;
  std::ostringstream os;
  os << mode << " purification: residual " << r.residual << ", pure " << (r.pure ? "true" : "false") << "\n"
     << j["dilation"].dump() << "\n";
  emit(g, j, os.str());
  return verdict(r.ok);
}

int cmd_cone_report(const Globals& g, const Input& in, int trials) {
  const SystemType a = load_system(g, in);
  const ConeReport c = cone_report(a, trials, g.seed, g.tol);
  const json j{{"system", a.blocks()},
               {"dim", c.dim},
               {"rank", c.rank},
               {"pointed", c.pointed},
               {"homogeneous", c.homogeneous},
               {"self_dual", c.self_dual},
               {"shift_route_agrees", c.shift_route_agrees},
               {"spectral_residual_max", c.spectral_residual_max}};
  std::ostringstream os;
  os << "cone of " << a.to_string() << ": dim " << c.dim << ", rank " << c.rank << "\n"
     << "pointed " << c.pointed << ", homogeneous " << c.homogeneous << ", self-dual " << c.self_dual
     << ", spectral residual " << c.spectral_residual_max << "\n";
  emit(g, j, os.str());
  return verdict(c.ok());
}

int cmd_classify_eja(const Globals& g, int max_n) {
  if (max_n < 2) throw UsageError("--max-n must be at least 2");
  const auto rows = survivor_table(max_n);
  json arr = json::array();
  std::ostringstream os;
  os << std::left << std::setw(9) << "algebra" << std::setw(6) << "rank" << std::setw(6) << "dim" << std::setw(10)
     << "survives" << "composite\n";
  for (const auto& r : rows) {
    json m = json::array();
    std::string names;
    for (const auto& e : r.composite_matches) {
      m.push_back(e.name());
      names += (names.empty() ? "" : ",") + e.name();
    }
    arr.push_back({{"algebra", r.algebra.name()},
                   {"rank", r.algebra.rank()},
                   {"dim", r.algebra.dim()},
                   {"survives", r.survives},
                   {"composite_matches", m}});
    os << std::setw(9) << r.algebra.name() << std::setw(6) << r.algebra.rank() << std::setw(6) << r.algebra.dim()
       << std::setw(10) << (r.survives ? "yes" : "no") << (names.empty() ? "-" : names) << "\n";
  }
  emit(g, json{{"max_n", max_n}, {"table", arr}}, os.str());
  return 0;
}

int cmd_sharp_dagger(const Globals& g, const Input& in) {
  const SystemType a = load_system(g, in);
  const SharpDaggerReport r = verify_sharp_dagger(maximal_testable_preparation(a), g.tol, g.seed);
  const json j{{"system", a.blocks()},
               {"states_pure", r.states_pure},
               {"tested_by_dagger", r.tested_by_dagger},
               {"test_residual", r.test_residual},
               {"dagger_causal", r.dagger_causal},
               {"causal_residual", r.causal_residual},
               {"classical_trivial", r.classical_trivial},
               {"classical_residual", r.classical_residual},
               {"ok", r.ok()}};
  emit(g, j, r.ok() ? "sharp dagger: pass\n" : "sharp dagger: fail: " + r.failures() + "\n");
  return verdict(r.ok());
}

int cmd_unique_effect(const Globals& g, const Input& in) {
  const SystemType a = load_system(g, in);
  const UniqueEffectReport r = unique_causal_effect(a, g.tol);
  const json j{{"system", a.blocks()},
               {"unique", r.unique},
               {"constraint_rank", r.constraint_rank},
               {"dimension", r.dimension},
               {"residual", r.residual}};
  std::ostringstream os;
  os << "unique causal effect: " << (r.unique ? "true" : "false") << " (rank " << r.constraint_rank << " of "
     << r.dimension << ", residual " << r.residual << ")\n";
  emit(g, j, os.str());
  return verdict(r.unique);
}

int cmd_suite(const Globals& g, const Input& in, int trials, bool timings) {
  const SystemType a = load_system(g, in);
  const VerificationReport r = run_postulate_suite(a, SuiteOptions{g.seed, g.tol, g.max_dim, trials});
  if (g.json_out)
    std::cout << r.to_json(timings).dump(2) << "\n";
  else
    std::cout << r.to_text();
  return verdict(r.pass());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Process-theory verifier for finite-dimensional C*-algebra models"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(std::string("\nTerm grammar:\n") + kGrammar);

  Globals g;
  app.add_option("--tol", g.tol, "Absolute tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for sampled checks")->capture_default_str();
  app.add_flag("--json", g.json_out, "Emit JSON");
  app.add_option("--max-dim", g.max_dim, "Cap on the total dimension of any wire bundle")->capture_default_str();
  app.add_option("--systems", g.systems_file, "Systems table (JSON object or NAME = [..] lines)");
  app.add_option("--generators", g.generators_file, "Model JSON with systems and generator processes");

  Input in;
  auto add_process_input = [&](CLI::App* sub) {
    sub->add_option("--term", in.term, "Diagram term to evaluate");
    sub->add_option("--process", in.process_file, "Process JSON file");
  };
  auto add_system_input = [&](CLI::App* sub) {
    sub->add_option("--system", in.system, "System name or block list, e.g. Q2 or [2,1]");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate a term to a process");
  add_process_input(eval);
  auto* fp = app.add_subcommand("fingerprint", "Tomography probabilities of a process");
  add_process_input(fp);
  auto* pure = app.add_subcommand("check-pure", "Decide purity of a process");
  add_process_input(pure);
  auto* leak = app.add_subcommand("classify-leak", "Classify a leak A -> A x B");
  add_process_input(leak);
  std::string mode = "symmetric";
  auto* purify = app.add_subcommand("purify", "Purify a CP process");
  add_process_input(purify);
  purify->add_option("--mode", mode, "symmetric or standard")
      ->check(CLI::IsMember({"symmetric", "standard"}))
      ->capture_default_str();
  int trials = 20;
  auto* cone = app.add_subcommand("cone-report", "Sampled cone battery");
  add_system_input(cone);
  cone->add_option("--trials", trials, "Samples per property")->capture_default_str();
  int max_n = 6;
  auto* eja = app.add_subcommand("classify-eja", "Self-composition survivor table");
  eja->add_option("--max-n", max_n, "Largest rank parameter")->capture_default_str();
  auto* sharp = app.add_subcommand("check-sharp-dagger", "Check the sharp dagger on a maximal preparation");
  add_system_input(sharp);
  auto* unique = app.add_subcommand("check-unique-effect", "Check uniqueness of the causal effect");
  add_system_input(unique);
  bool timings = false;
  auto* suite = app.add_subcommand("suite", "Run the full battery on a system");
  add_system_input(suite);
  suite->add_option("--trials", trials, "Samples per randomised check")->capture_default_str();
  suite->add_flag("--timings", timings, "Include elapsed times in the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return cmd_eval(g, in);
    if (*fp) return cmd_fingerprint(g, in);
    if (*pure) return cmd_check_pure(g, in);
    if (*leak) return cmd_classify_leak(g, in);
    if (*purify) return cmd_purify(g, in, mode);
    if (*cone) return cmd_cone_report(g, in, trials);
    if (*eja) return cmd_classify_eja(g, max_n);
    if (*sharp) return cmd_sharp_dagger(g, in);
    if (*unique) return cmd_unique_effect(g, in);
    if (*suite) return cmd_suite(g, in, trials, timings);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n\n" << kGrammar << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad JSON input: " << e.what() << "\n";
    return 2;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
