// Acceptance battery: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "ptv/classical.hpp"
#include "ptv/cone.hpp"
#include "ptv/diagram.hpp"
#include "ptv/eja.hpp"
#include "ptv/error.hpp"
#include "ptv/evaluate.hpp"
#include "ptv/leak.hpp"
#include "ptv/purification.hpp"
#include "ptv/sampling.hpp"

using namespace ptv;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Result()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!r.ok) ++failures;
  std::printf("%s criterion %2d: %s [%s] (%.2fs)\n", r.ok ? "PASS" : "FAIL", id, title.c_str(), r.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

const SystemType Q2 = SystemType::quantum(2);
const SystemType HYB({2, 1});

}  // namespace

int main() {
  criterion(1, "yanking on every system type with total dimension <= 8", [] {
    const GeneratorEnv env;
    const EvalOptions opts{512};
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto& a : enumerate_system_types(8)) {
      SystemTable t;
      t.define("A", a);
      const Process id = identity(a);
      const Process y1 = evaluate(parse("seq(par(id(A), cap(A)), par(cup(A), id(A)))", t), env, opts);
      const Process y2 = evaluate(parse("seq(par(cap(A), id(A)), par(id(A), cup(A)))", t), env, opts);
      const Process y3 = evaluate(parse("seq(swap(A, A), cup(A))", t), env, opts);
      worst = std::max({worst, max_abs_diff(y1, id), max_abs_diff(y2, id), max_abs_diff(y3, cup(a))});
      ++count;
    }
    return Result{worst <= 1e-9 && count == 255, std::to_string(count) + " types, max residual " + fmt(worst)};
  });

  criterion(2, "EJA survivors for max_n = 6 are C_n and Spin_4", [] {
    std::set<std::string> alive, dead;
    for (const auto& r : survivor_table(6)) (r.survives ? alive : dead).insert(r.algebra.name());
    const std::set<std::string> expected{"C_2", "C_3", "C_4", "C_5", "C_6", "Spin_4"};
    bool ok = alive == expected && survives_self_composition({EjaFamily::ComplexHermitian, 1});
    for (const char* name : {"H_2", "R_3", "O_3", "Spin_5"}) ok = ok && dead.count(name);
    std::string list;
    for (const auto& n : alive) list += (list.empty() ? "" : ",") + n;
    return Result{ok, "survivors " + list + "; " + std::to_string(dead.size()) + " eliminated"};
  });

  criterion(3, "cup purity, trivial leaks and single block coincide", [] {
    std::size_t count = 0;
    bool ok = true;
    for (const auto& a : enumerate_system_types(6, 3)) {
      const bool single = a.is_single_block();
      ok = ok && cup_is_pure(a) == single && has_nontrivial_leak(a) == !single;
      ++count;
    }
    return Result{ok, std::to_string(count) + " types"};
  });

  criterion(4, "symmetric purification round trip", [] {
    Rng rng(4);
    double worst = 0.0;
    bool pure = true;
    for (const auto& [a, n] : {std::pair{Q2, 20}, std::pair{HYB, 10}})
      for (int t = 0; t < n; ++t) {
        const Process f = random_cp(a, a, rng);
        const SymmetricPurification p = symmetric_purification(f);
        const PurificationReport r = verify_symmetric_purification(f, p.dilation);
        worst = std::max(worst, r.residual);
        pure = pure && r.pure;
      }
    return Result{pure && worst < 1e-9, "30 maps, max residual " + fmt(worst) + ", all pure " + (pure ? "yes" : "no")};
  });

  criterion(5, "standard purification derived from symmetric purification", [] {
    Rng rng(5);
    double worst = 0.0;
    bool ok = true;
    const int dims[][2] = {{2, 2}, {2, 3}, {3, 2}, {1, 2}, {2, 1}, {3, 3}, {2, 2}, {1, 3}, {3, 1}, {2, 4}};
    for (const auto& d : dims) {
      const Process f = random_cp(SystemType::quantum(d[0]), SystemType::quantum(d[1]), rng);
      const StandardPurification s = derive_standard_from_symmetric(symmetric_purification(f));
      const PurificationReport r = verify_standard_purification(f, s.dilation, s.environment);
      worst = std::max(worst, r.residual);
      ok = ok && r.pure;
    }
    bool multi_block_rejected = false;
    try {
      derive_standard_from_symmetric(symmetric_purification(random_cp(HYB, HYB, rng)));
    } catch (const PreconditionError&) {
      multi_block_rejected = true;
    }
    return Result{ok && worst < 1e-9 && multi_block_rejected,
                  "10 maps, max residual " + fmt(worst) + "; [2,1] rejected " + (multi_block_rejected ? "yes" : "no")};
  });

  criterion(6, "essential uniqueness of standard purifications", [] {
    Rng rng(6);
    double worst = 0.0;
    bool bicausal = true;
    for (int t = 0; t < 10; ++t) {
      const Mat rho[] = {random_density(2, rng)};
      const Process s = state(Q2, rho);
      StandardPurification a = standard_purification(s, 1000 + t);
      StandardPurification b = standard_purification(s, 2000 + t);
      const int env = std::max(a.environment.total_dim(), b.environment.total_dim()) + 1;
      a = pad_environment(a, env);
      b = pad_environment(b, env);
      const Connector c = essential_uniqueness_connector(a, b);
      worst = std::max(worst, c.residual);
      bicausal = bicausal && is_bicausal(c.map);
    }
    return Result{worst < 1e-8 && bicausal, "10 states, max residual " + fmt(worst)};
  });

  criterion(7, "sums from classical control", [] {
    Rng rng(7);
    double sum_err = 0.0, dist_err = 0.0;
    for (int t = 0; t < 50; ++t) {
      const SystemType a = t % 2 ? HYB : Q2, b = t % 3 ? Q2 : HYB;
      const Process f = random_cp(a, b, rng), g = random_cp(a, b, rng);
      const Process fg[] = {f, g};
      const Process s = diagram_sum(fg);
      Process entrywise(a, b);
      for (std::size_t i = 0; i < a.num_blocks(); ++i)
        for (std::size_t j = 0; j < b.num_blocks(); ++j)
          entrywise.cell(i, j).matrix() = f.cell(i, j).matrix() + g.cell(i, j).matrix();
      sum_err = std::max(sum_err, max_abs_diff(s, entrywise));
      const Process chi = random_cp(b, SystemType::classical(2), rng);
      const Process psi = random_cp(SystemType::trivial(), a, rng);
      const Process whole = compose_seq(chi, compose_seq(s, psi));
      const Process parts = add(compose_seq(chi, compose_seq(f, psi)), compose_seq(chi, compose_seq(g, psi)));
      dist_err = std::max(dist_err, max_abs_diff(whole, parts));
    }
    return Result{sum_err <= 1e-9 && dist_err <= 1e-9,
                  "50 pairs, sum residual " + fmt(sum_err) + ", distributivity residual " + fmt(dist_err)};
  });

  criterion(8, "unique causal effect", [] {
    bool ok = true;
    std::string detail;
    for (const auto& a : {Q2, SystemType::classical(3), HYB}) {
      const UniqueEffectReport r = unique_causal_effect(a);
      ok = ok && r.unique;
      detail += a.to_string() + " rank " + std::to_string(r.constraint_rank) + "/" + std::to_string(r.dimension) + " ";
    }
    return Result{ok, detail};
  });

  criterion(9, "cone battery", [] {
    std::vector<SystemType> types;
    for (int n = 1; n <= 4; ++n) types.push_back(SystemType::quantum(n));
    for (const auto& a : enumerate_system_types(6))
      if (!a.is_single_block()) types.push_back(a);
    bool ok = true;
    double worst = 0.0;
    std::uint64_t seed = 9;
    for (const auto& a : types) {
      const ConeReport r = cone_report(a, 100, seed++);
      ok = ok && r.ok();
      worst = std::max(worst, r.spectral_residual_max);
    }
    return Result{ok && worst < 1e-10,
                  std::to_string(types.size()) + " types, max spectral residual " + fmt(worst)};
  });

  criterion(10, "sharp dagger on maximal testable preparations", [] {
    bool ok = true;
    double worst = 0.0;
    for (const auto& a : {Q2, SystemType::quantum(3), SystemType::classical(3), HYB}) {
      const SharpDaggerReport r = verify_sharp_dagger(maximal_testable_preparation(a), 1e-9, 10);
      ok = ok && r.ok();
      worst = std::max({worst, r.test_residual, r.causal_residual, r.classical_residual});
    }
    return Result{ok, "max residual " + fmt(worst)};
  });

  criterion(11, "normal-form leaks round trip through classification", [] {
    Rng rng(11);
    double residual = 0.0, cross = 0.0;
    std::size_t count = 0;
    for (const auto& a : enumerate_system_types(4))
      for (const auto& b : {SystemType::classical(2), Q2, HYB, SystemType::classical(3)}) {
        const Process l = random_leak(a, b, rng);
        const LeakClassification c = classify_leak(l);
        residual = std::max(residual, c.residual);
        cross = std::max(cross, c.cross_block);
        ++count;
      }
    return Result{residual < 1e-9 && cross < 1e-9,
                  std::to_string(count) + " leaks, residual " + fmt(residual) + ", cross-block " + fmt(cross)};
  });

  criterion(12, "tomography decides equality and factorises", [] {
    Rng rng(12);
    const SystemType c2 = SystemType::classical(2);
    std::size_t disagreements = 0;
    for (const auto& [a, b] : {std::pair{Q2, Q2}, std::pair{c2, c2}, std::pair{HYB, Q2}})
      for (int t = 0; t < 50; ++t) {
        const Process f = random_cp(a, b, rng);
        Process g = f;
        if (t % 3 == 1) g = random_cp(a, b, rng);
        if (t % 3 == 2) g.cell(0, 0).matrix()(0, 0) += 1e-7;
        if (processes_equal_by_tomography(f, g) != approx_eq(f, g)) ++disagreements;
      }
    double fact = 0.0;
    for (int t = 0; t < 10; ++t) {
      const Process f = random_cp(HYB, Q2, rng), g = random_cp(c2, HYB, rng);
      const SystemType dom[] = {HYB, c2}, cod[] = {Q2, HYB};
      fact = std::max(fact, max_abs_diff(tomography_fingerprint(compose_par(f, g), dom, cod),
                                         outer_product(tomography_fingerprint(f), tomography_fingerprint(g))));
    }
    return Result{disagreements == 0 && fact < 1e-9,
                  "150 pairs, " + std::to_string(disagreements) + " disagreements, factorisation residual " + fmt(fact)};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
