#include <doctest.h>

#include "oracle.hpp"
#include "ptv/classical.hpp"
#include "ptv/error.hpp"
#include "ptv/leak.hpp"
#include "ptv/sampling.hpp"

using namespace ptv;

namespace {

const SystemType Q2 = SystemType::quantum(2);
const SystemType HYB({2, 1});

Process stochastic(const std::vector<std::vector<double>>& m) {
  // m[out][in], column-stochastic style.
  const int n = static_cast<int>(m[0].size()), k = static_cast<int>(m.size());
  Process p(SystemType::classical(n), SystemType::classical(k));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) p.cell(i, j).matrix()(0, 0) = m[j][i];
  return p;
}

Process dephasing2() {
  const Mat ks[] = {basis_projector(2, 0), basis_projector(2, 1)};
  return kraus_process(ks);
}

}  // namespace

TEST_SUITE("classical") {
  TEST_CASE("point states and effects are orthonormal") {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(scalar_value(compose_seq(classical_effect(i, 3), classical_state(j, 3))) == (i == j ? 1.0 : 0.0));
    CHECK_THROWS_AS(classical_state(3, 3), DimensionError);
    CHECK_THROWS_AS(classical_state(-1, 3), DimensionError);
  }

  TEST_CASE("copier is a leak and a broadcasting map") {
    const Process c = copier(2);
    CHECK(is_leak(c));
    const SystemType c2 = SystemType::classical(2);
    const Process left = compose_seq(compose_par(discard(c2), identity(c2)), c);
    CHECK(max_abs_diff(left, identity(c2)) == 0.0);
    CHECK(max_abs_diff(ones_state(3), dagger(discard(SystemType::classical(3)))) == 0.0);
  }

  TEST_CASE("controlled preparation of the basis projectors") {
    const Mat p0 = basis_projector(2, 0), p1 = basis_projector(2, 1);
    const Process fs[] = {state(Q2, std::span<const Mat>(&p0, 1)), state(Q2, std::span<const Mat>(&p1, 1))};
    const ControlledProcess c = controlled_process(fs);
    CHECK(c.process.dom() == SystemType::classical(2));
    for (int i = 0; i < 2; ++i)
      CHECK(max_abs(state_blocks(compose_seq(c.process, classical_state(i, 2)))[0] - basis_projector(2, i)) == 0.0);
  }

  TEST_CASE("controlled process of a singleton and of {id, flip}") {
    Rng rng(2);
    const Process f = random_cp(HYB, Q2, rng);
    const Process one[] = {f};
    const ControlledProcess c1 = controlled_process(one);
    CHECK(c1.process.dom() == HYB);
    CHECK(max_abs_diff(c1.process, f) == 0.0);

    const Process flip = stochastic({{0, 1}, {1, 0}});
    const Process fs[] = {identity(SystemType::classical(2)), flip};
    const ControlledProcess c = controlled_process(fs);
    CHECK(control_recovery_residual(c) == 0.0);
    const Process select = compose_par(classical_state(1, 2), identity(SystemType::classical(2)));
    CHECK(max_abs_diff(compose_seq(c.process, select), flip) == 0.0);

    const Process bad[] = {identity(Q2), identity(HYB)};
    CHECK_THROWS_AS(controlled_process(bad), DimensionError);
  }

  TEST_CASE("sums") {
    const Process fs[] = {stochastic({{1, 0}, {0, 1}}), stochastic({{0, 1}, {1, 0}})};
    const Process s = diagram_sum(fs);
    CHECK(max_abs_diff(s, stochastic({{1, 1}, {1, 1}})) == 0.0);
    CHECK(max_abs_diff(diagram_sum(std::span<const Process>(fs, 1)), fs[0]) == 0.0);
    const Process z = diagram_sum({}, Q2, HYB);
    CHECK(max_abs_diff(z, Process(Q2, HYB)) == 0.0);
    CHECK_THROWS(diagram_sum(std::span<const Process>()));

    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      const Process f = random_cp(HYB, Q2, rng), g = random_cp(HYB, Q2, rng), h = random_cp(HYB, Q2, rng);
      const Process chi = random_cp(Q2, SystemType::trivial(), rng);
      const Process psi = random_cp(SystemType::trivial(), HYB, rng);
      const Process fg[] = {f, g}, gf[] = {g, f}, fz[] = {f, Process(HYB, Q2)};
      CHECK(max_abs_diff(diagram_sum(fg), diagram_sum(gf)) < 1e-12);
      CHECK(max_abs_diff(diagram_sum(fz), f) < 1e-12);
      const Process fg_h[] = {diagram_sum(fg), h}, gh[] = {g, h};
      const Process f_gh[] = {f, diagram_sum(gh)};
      CHECK(max_abs_diff(diagram_sum(fg_h), diagram_sum(f_gh)) < 1e-12);
      const Process whole = compose_seq(chi, compose_seq(diagram_sum(fg), psi));
      const Process parts = add(compose_seq(chi, compose_seq(f, psi)), compose_seq(chi, compose_seq(g, psi)));
      CHECK(max_abs_diff(whole, parts) < 1e-9);
    }
  }

  TEST_CASE("convex combinations of causal processes are causal") {
    Rng rng(6);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int t = 0; t < 10; ++t) {
      const double p = u(rng);
      const Process fs[] = {scale(random_causal(HYB, Q2, rng), p), scale(random_causal(HYB, Q2, rng), 1 - p)};
      CHECK(is_causal(diagram_sum(fs)));
    }
  }

  TEST_CASE("nonnegative combinations of states stay in the cone") {
    Rng rng(8);
    for (const auto& a : enumerate_system_types(6))
      for (int t = 0; t < 2; ++t) {
        const Process s1 = random_cp(SystemType::trivial(), a, rng), s2 = random_cp(SystemType::trivial(), a, rng);
        CHECK(is_cp(add(scale(s1, 0.3), scale(s2, 2.0))));
      }
  }

  TEST_CASE("probe family") {
    for (int d = 1; d <= 4; ++d) {
      const auto ps = probe_family(d);
      CHECK(ps.size() == static_cast<std::size_t>(d * d));
      Mat frame(d * d, d * d);
      for (int k = 0; k < d * d; ++k) {
        CHECK(ps[k].trace().real() == doctest::Approx(1.0));
        CHECK(min_eigenvalue(ps[k]) > -1e-12);
        frame.col(k) = vectorize(ps[k]);
      }
      CHECK(frame.fullPivLu().rank() == d * d);
    }
  }

  TEST_CASE("fingerprints") {
    const Process id = identity(Q2);
    const Process deph = dephasing2();
    const TomographyFingerprint a = tomography_fingerprint(id), b = tomography_fingerprint(deph);
    CHECK(a.probabilities.size() == 16);
    // The |+> probe state followed by the |+> effect separates them: 1 versus 1/2.
    CHECK(a.at(2, 2) == doctest::Approx(1.0));
    CHECK(b.at(2, 2) == doctest::Approx(0.5));
    CHECK_FALSE(processes_equal_by_tomography(id, deph));
    CHECK(processes_equal_by_tomography(deph, deph));
  }

  TEST_CASE("fingerprint entries agree with the density-matrix oracle") {
    Rng rng(10);
    std::vector<Mat> ks{ginibre(2, 3, rng), ginibre(2, 3, rng)};
    const Process f = kraus_process(ks);
    const TomographyFingerprint fp = tomography_fingerprint(f);
    const auto states = probe_family(3);
    const auto effects = probe_family(2);
    for (std::size_t s = 0; s < states.size(); ++s)
      for (std::size_t e = 0; e < effects.size(); ++e)
        CHECK(fp.at(s, e) == doctest::Approx((effects[e] * oracle::kraus_apply(ks, states[s])).trace().real()));
  }

  TEST_CASE("fingerprints factorise on products") {
    Rng rng(12);
    const SystemType c2 = SystemType::classical(2);
    for (int t = 0; t < 5; ++t) {
      const Process f = random_cp(HYB, Q2, rng), g = random_cp(c2, HYB, rng);
      const SystemType dom[] = {HYB, c2}, cod[] = {Q2, HYB};
      const TomographyFingerprint joint = tomography_fingerprint(compose_par(f, g), dom, cod);
      const TomographyFingerprint pred = outer_product(tomography_fingerprint(f), tomography_fingerprint(g));
      CHECK(max_abs_diff(joint, pred) < 1e-12);
    }
  }

  TEST_CASE("reconstruction inverts the fingerprint") {
    Rng rng(14);
    for (const auto& [a, b] : {std::pair{Q2, Q2}, std::pair{HYB, Q2}, std::pair{SystemType::classical(2), HYB}}) {
      const Process f = random_cp(a, b, rng);
      CHECK(max_abs_diff(reconstruct_from_fingerprint(tomography_fingerprint(f)), f) < 1e-12);
    }
  }

  TEST_CASE("tomography agrees with entrywise comparison") {
    Rng rng(16);
    const SystemType c2 = SystemType::classical(2);
    for (const auto& [a, b] : {std::pair{Q2, Q2}, std::pair{c2, c2}, std::pair{HYB, Q2}})
      for (int t = 0; t < 50; ++t) {
        const Process f = random_cp(a, b, rng);
        Process g = f;
        if (t % 3 == 1) g = random_cp(a, b, rng);
        if (t % 3 == 2) g.cell(0, 0).matrix()(0, 0) += 1e-6;
        CHECK(processes_equal_by_tomography(f, g) == approx_eq(f, g));
      }
  }

  TEST_CASE("maximal testable preparations") {
    const TestablePreparation q2 = maximal_testable_preparation(Q2);
    REQUIRE(q2.states.size() == 2);
    CHECK(max_abs(q2.states[0][0] - basis_projector(2, 0)) == 0.0);
    CHECK(max_abs(q2.states[1][0] - basis_projector(2, 1)) == 0.0);

    const TestablePreparation c3 = maximal_testable_preparation(SystemType::classical(3));
    CHECK(max_abs_diff(c3.measurement, transpose_via_cups(c3.preparation)) < 1e-12);

    const TestablePreparation h = maximal_testable_preparation(HYB);
    CHECK(h.states.size() == 3);
    for (const auto& a : {Q2, SystemType::quantum(3), SystemType::classical(3), HYB}) {
      const SharpDaggerReport r = verify_sharp_dagger(maximal_testable_preparation(a));
      CAPTURE(a.to_string());
      CHECK(r.ok());
      CHECK(r.failures().empty());
    }
  }

  TEST_CASE("sharp dagger failures are reported") {
    TestablePreparation t = maximal_testable_preparation(Q2);
    t.preparation = scale(t.preparation, 0.5);
    const SharpDaggerReport r = verify_sharp_dagger(t);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.tested_by_dagger);
    CHECK(r.failures().find("does not test") != std::string::npos);
  }

  TEST_CASE("unique causal effect") {
    for (const auto& a : {Q2, SystemType::trivial(), HYB, SystemType::classical(3), SystemType::quantum(4)}) {
      const UniqueEffectReport r = unique_causal_effect(a);
      CAPTURE(a.to_string());
      CHECK(r.unique);
      CHECK(r.constraint_rank == a.algebra_dim());
    }
  }
}
