#include "ptv/suite.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "ptv/classical.hpp"
#include "ptv/cone.hpp"
#include "ptv/diagram.hpp"
#include "ptv/eja.hpp"
#include "ptv/error.hpp"
#include "ptv/evaluate.hpp"
#include "ptv/leak.hpp"
#include "ptv/purification.hpp"
#include "ptv/sampling.hpp"

namespace ptv {

namespace {

struct Outcome {
  bool observed;
  double residual;
};

class Runner {
 public:
  explicit Runner(VerificationReport& r) : report_(r) {}

  void run(const std::string& name, const std::string& anchor, bool expected, const std::function<Outcome()>& body) {
    CheckResult c;
    c.name = name;
    c.anchor = anchor;
    c.expected = expected;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = body();
      c.observed = o.observed;
      c.residual = o.residual;
      c.pass = c.observed == c.expected;
    } catch (const std::exception& e) {
      c.error = e.what();
      c.pass = false;
    }
    c.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(c));
  }

 private:
  VerificationReport& report_;
};

Outcome below(double residual, double tol) { return {residual <= tol, residual}; }

}  // namespace

bool VerificationReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

nlohmann::json VerificationReport::to_json(bool include_timings) const {
  nlohmann::json j;
  j["target"] = target;
  j["seed"] = seed;
  j["tol"] = tol;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["expected"] = c.expected;
    e["observed"] = c.observed;
    e["residual"] = c.residual;
    e["verdict"] = c.pass ? "pass" : "fail";
    if (!c.error.empty()) e["error"] = c.error;
    if (include_timings) e["elapsed_ms"] = c.elapsed_ms;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  j["overall"] = pass() ? "pass" : "fail";
  return j;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "target " << target << " (seed " << seed << ", tol " << tol << ")\n";
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual=" << c.residual;
    if (!c.expected) os << "  (expected negative)";
    if (!c.error.empty()) os << "  error: " << c.error;
    os << "\n";
  }
  os << "overall: " << (pass() ? "pass" : "fail") << "\n";
  return os.str();
}

VerificationReport run_postulate_suite(const SystemType& a, const SuiteOptions& opts) {
  VerificationReport report;
  report.target = a.to_string();
  report.seed = opts.seed;
  report.tol = opts.tol;
  Runner run(report);
  const double tol = opts.tol;
  const int trials = opts.trials;

  const long long needed = static_cast<long long>(a.total_dim()) * a.total_dim() * a.total_dim();
  if (needed > opts.max_dim) {
    run.run("dimension_guard", "A⊗A⊗A must fit under the dimension cap", true, [&]() -> Outcome {
      throw DimensionError("total dimension of " + a.to_string() + "^3 is " + std::to_string(needed) +
                           ", above the cap " + std::to_string(opts.max_dim));
    });
    return report;
  }

  Rng rng(opts.seed);
  const bool single = a.is_single_block();

  run.run("diagram_formation", "sequential and parallel composition satisfy the interchange law", true, [&] {
    const Process f1 = random_cp(a, a, rng), f2 = random_cp(a, a, rng);
    const Process g1 = random_cp(a, a, rng), g2 = random_cp(a, a, rng);
    const Process lhs = compose_seq(compose_par(g1, g2), compose_par(f1, f2));
    const Process rhs = compose_par(compose_seq(g1, f1), compose_seq(g2, f2));
    GeneratorEnv env{{"f", f1}, {"g", g1}};
    SystemTable systems;
    systems.define("A", a);
    const Process via_term = evaluate(parse("seq(par(g, discard(A)), par(f, id(A)))", systems, &env), env,
                                      EvalOptions{opts.max_dim});
    const Process direct = compose_seq(compose_par(g1, discard(a)), compose_par(f1, identity(a)));
    return below(std::max(max_abs_diff(lhs, rhs), max_abs_diff(via_term, direct)), tol);
  });

  run.run("control_recovery", "a controlled process restricted to point i is the i-th branch", true, [&] {
    std::vector<Process> fs;
    for (int i = 0; i < 3; ++i) fs.push_back(random_causal(a, a, rng));
    return below(control_recovery_residual(controlled_process(fs)), tol);
  });

  run.run("sum_distributivity", "sums built from control are entrywise sums and distribute over diagrams", true, [&] {
    double r = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Process f = random_cp(a, a, rng), g = random_cp(a, a, rng);
      const Process chi = random_cp(a, SystemType::trivial(), rng), psi = random_cp(SystemType::trivial(), a, rng);
      const Process fg[] = {f, g};
      const Process s = diagram_sum(fg);
      r = std::max(r, max_abs_diff(s, add(f, g)));
      const Process whole = compose_seq(chi, compose_seq(s, psi));
      const Process parts = add(compose_seq(chi, compose_seq(f, psi)), compose_seq(chi, compose_seq(g, psi)));
      r = std::max(r, max_abs_diff(whole, parts));
    }
    return below(r, tol);
  });

  run.run("tomography_decides_equality", "finitely many probe states and effects decide process equality", true, [&] {
    bool agree = true;
    double r = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Process f = random_cp(a, a, rng);
      const Process g = t % 2 == 0 ? f : random_cp(a, a, rng);
      agree = agree && processes_equal_by_tomography(f, g, tol) == approx_eq(f, g, tol);
      r = std::max(r, max_abs_diff(reconstruct_from_fingerprint(tomography_fingerprint(f)), f));
    }
    return Outcome{agree && r <= tol, r};
  });

  run.run("sharp_dagger", "a maximal testable preparation is tested by its dagger, which is causal", true, [&] {
    const SharpDaggerReport s = verify_sharp_dagger(maximal_testable_preparation(a), tol, opts.seed);
    return Outcome{s.ok(), std::max({s.test_residual, s.causal_residual, s.classical_residual})};
  });

  run.run("unique_causal_effect", "discarding is the only effect that is 1 on every causal state", true, [&] {
    const UniqueEffectReport u = unique_causal_effect(a, tol);
    return Outcome{u.unique, u.residual};
  });

  run.run("yanking", "cups and caps satisfy the yanking equations", true, [&] {
    SystemTable systems;
    systems.define("A", a);
    const GeneratorEnv env;
    const EvalOptions eo{opts.max_dim};
    const Process id = identity(a);
    const Process y1 = evaluate(parse("seq(par(id(A), cap(A)), par(cup(A), id(A)))", systems), env, eo);
    const Process y2 = evaluate(parse("seq(par(cap(A), id(A)), par(id(A), cup(A)))", systems), env, eo);
    const Process y3 = evaluate(parse("seq(swap(A, A), cup(A))", systems), env, eo);
    return below(std::max({max_abs_diff(y1, id), max_abs_diff(y2, id), max_abs_diff(y3, cup(a))}), tol);
  });

  run.run("dagger_reflection", "the dagger is an involution that reverses sequential composition", true, [&] {
    const Process f = random_cp(a, a, rng), g = random_cp(a, a, rng);
    double r = max_abs_diff(dagger(dagger(f)), f);
    r = std::max(r, max_abs_diff(dagger(compose_seq(g, f)), compose_seq(dagger(f), dagger(g))));
    r = std::max(r, max_abs_diff(dagger(compose_par(f, g)), compose_par(dagger(f), dagger(g))));
    r = std::max(r, max_abs_diff(dagger(discard(a)), maxmix(a)));
    GeneratorEnv env{{"f", f}, {"g", g}};
    SystemTable systems;
    systems.define("A", a);
    const Term t = parse("seq(par(cap(A), g), par(id(A), par(seq(f, dagger(g)), id(A))))", systems, &env);
    r = std::max(r, max_abs_diff(evaluate(structural_dagger(t), env, EvalOptions{opts.max_dim}),
                                 dagger(evaluate(t, env, EvalOptions{opts.max_dim}))));
    return below(r, tol);
  });

  run.run("symmetric_purification", "every CP process has a pure symmetric dilation", true, [&] {
    double r = 0.0;
    bool ok = true;
    for (int t = 0; t < std::min(trials, 5); ++t) {
      const Process f = random_cp(a, a, rng);
      const SymmetricPurification p = symmetric_purification(f, tol);
      const PurificationReport v = verify_symmetric_purification(f, p.dilation, tol);
      r = std::max(r, v.residual);
      ok = ok && v.ok;
    }
    return Outcome{ok, r};
  });

  run.run("cone_battery", "the state cone is pointed, spectral, homogeneous and strongly self-dual", true, [&] {
    const ConeReport c = cone_report(a, trials, opts.seed, tol);
    return Outcome{c.ok() && c.spectral_residual_max < 1e-10, c.spectral_residual_max};
  });

  run.run("cup_is_pure", "the cup is pure exactly when the system has one block", single,
          [&] { return Outcome{cup_is_pure(a, tol), 0.0}; });

  run.run("has_nontrivial_leak", "leaks are all trivial exactly when the system has one block", !single,
          [&] { return Outcome{has_nontrivial_leak(a, tol), 0.0}; });

  run.run("survivor_consistency", "each block's complex matrix algebra survives self-composition and matches the cone",
          true, [&] {
            bool ok = true;
            for (int d : a.blocks()) {
              const SimpleEJA e = model_algebra(SystemType::quantum(d));
              const ConeModel c = state_cone(SystemType::quantum(d));
              ok = ok && survives_self_composition(e) && c.rank == e.rank() && c.dim == e.dim();
              const auto matches = find_simple(c.rank, c.dim);
              ok = ok && std::find(matches.begin(), matches.end(), e) != matches.end();
            }
            return Outcome{ok && model_rank_multiplicativity_check(a, a), 0.0};
          });

  return report;
}

}  // namespace ptv
