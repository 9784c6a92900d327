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

Process trivial_leak(const SystemType& a, const std::vector<Mat>& s, const SystemType& b) {
  return compose_par(identity(a), state(b, s));
}

}  // namespace

TEST_SUITE("leak") {
  TEST_CASE("is_leak examples") {
    CHECK(is_leak(copier(2)));
    Rng rng(1);
    const SystemType b({2, 1});
    CHECK(is_leak(trivial_leak(Q2, random_causal_state(b, rng), b)));
    CHECK_FALSE(is_leak(trivial_leak(Q2, random_cone_element(b, rng), b)));
    CHECK_THROWS_AS(is_leak(cup(Q2), Q2), DimensionError);
    CHECK_THROWS_AS(is_leak(cap(Q2)), DimensionError);
  }

  TEST_CASE("which-branch leak on [2,1]") {
    const LeakClassification c = classify_leak(which_branch_leak(HYB));
    REQUIRE(c.sigma.size() == 2);
    CHECK(c.target == SystemType::classical(2));
    CHECK(c.sigma[0][0](0, 0) == cplx(1.0));
    CHECK(c.sigma[0][1](0, 0) == cplx(0.0));
    CHECK(c.sigma[1][0](0, 0) == cplx(0.0));
    CHECK(c.sigma[1][1](0, 0) == cplx(1.0));
    CHECK_FALSE(c.trivial);
  }

  TEST_CASE("leaks on a single block are trivial") {
    Rng rng(2);
    const SystemType q3 = SystemType::quantum(3);
    for (const auto& b : {SystemType::classical(2), Q2, HYB}) {
      const LeakClassification c = classify_leak(random_leak(q3, b, rng));
      CHECK(c.sigma.size() == 1);
      CHECK(c.trivial);
    }
  }

  TEST_CASE("copier(3) leaks the point") {
    const LeakClassification c = classify_leak(copier(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(c.sigma[i][j](0, 0) == cplx(i == j ? 1.0 : 0.0));
    CHECK_FALSE(c.trivial);
  }

  TEST_CASE("classification rejects non-leaks") {
    Rng rng(3);
    CHECK_THROWS_AS(classify_leak(compose_par(identity(Q2), random_cp(SystemType::trivial(), Q2, rng))),
                    PreconditionError);
    // Satisfies the marginal equation but moves weight between blocks.
    const SystemType c2 = SystemType::classical(2);
    Process mixer(c2, tensor(c2, c2));
    mixer.cell(0, tensor_block_index(c2, 1, 0)).matrix()(0, 0) = 1.0;
    mixer.cell(1, tensor_block_index(c2, 0, 0)).matrix()(0, 0) = 1.0;
    CHECK_FALSE(is_leak(mixer));
  }

  TEST_CASE("normal-form leaks round-trip through classification") {
    Rng rng(4);
    for (const auto& a : enumerate_system_types(4, 3))
      for (const auto& b : {SystemType::classical(2), Q2, HYB}) {
        const Process l = random_leak(a, b, rng);
        CHECK(is_leak(l));
        const LeakClassification c = classify_leak(l);
        CHECK(c.residual < 1e-9);
        CHECK(c.cross_block < 1e-9);
        CHECK(max_abs_diff(normal_form_leak(a, b, c.sigma), l) < 1e-9);
        CHECK(c.trivial == (a.num_blocks() == 1));
      }
  }

  TEST_CASE("branch states agree with the partial-trace oracle") {
    Rng rng(5);
    const Process l = random_leak(HYB, Q2, rng);
    const LeakClassification c = classify_leak(l);
    for (std::size_t i = 0; i < HYB.num_blocks(); ++i) {
      const int d = HYB.block(i);
      const Mat rho = random_density(d, rng);
      std::vector<Mat> in;
      for (std::size_t k = 0; k < HYB.num_blocks(); ++k)
        in.push_back(k == i ? rho : Mat::Zero(HYB.block(k), HYB.block(k)));
      const auto out = l.apply(in);
      const Mat joint = out[tensor_block_index(Q2, i, 0)];
      CHECK(oracle::max_abs(oracle::trace_second(joint, d, 2) - rho) < 1e-12);
      CHECK(oracle::max_abs(oracle::trace_first(joint, d, 2) - c.sigma[i][0]) < 1e-12);
    }
  }

  TEST_CASE("classical post-processing of a leak output gives a leak") {
    Rng rng(6);
    const SystemType c2 = SystemType::classical(2), c3 = SystemType::classical(3);
    for (int t = 0; t < 10; ++t) {
      const Process l = random_leak(HYB, c2, rng);
      const Process post = random_causal(c2, c3, rng);
      CHECK(is_leak(compose_seq(compose_par(identity(HYB), post), l)));
    }
  }

  TEST_CASE("purity examples") {
    for (const auto& a : {Q2, HYB, SystemType::classical(3), SystemType::trivial()}) CHECK(is_pure(identity(a)));
    const Mat ks[] = {basis_projector(2, 0), basis_projector(2, 1)};
    CHECK_FALSE(is_pure(kraus_process(ks)));
    CHECK(is_pure(copier(2)));
    CHECK(is_pure(cup(Q2)));
    CHECK_FALSE(is_pure(cup(HYB)));
    CHECK(is_pure(Process(Q2, HYB)));
  }

  TEST_CASE("dephasing Choi rank from the oracle") {
    const oracle::Channel deph = [](const Mat& x) {
      Mat y = Mat::Zero(2, 2);
      y(0, 0) = x(0, 0);
      y(1, 1) = x(1, 1);
      return y;
    };
    const auto ev = oracle::eigenvalues(oracle::choi(deph, 2));
    int rank = 0;
    for (int k = 0; k < ev.size(); ++k) rank += ev(k) > 1e-9;
    CHECK(rank == 2);
  }

  TEST_CASE("purity is closed under composition and reversible maps") {
    Rng rng(7);
    const SystemType q3 = SystemType::quantum(3);
    for (int t = 0; t < 10; ++t) {
      const Process f = random_cp(Q2, q3, rng, 1), g = random_cp(q3, Q2, rng, 1);
      CHECK(is_pure(f));
      CHECK(is_pure(compose_seq(g, f)));
      CHECK(is_pure(compose_par(f, g)));
      const Process mixed = random_cp(Q2, q3, rng, 2);
      const Process u = unitary_conjugation(random_unitary(3, rng));
      CHECK(is_pure(compose_seq(u, f)));
      CHECK_FALSE(is_pure(mixed));
      CHECK_FALSE(is_pure(compose_seq(u, mixed)));
    }
  }

  TEST_CASE("cup purity and leak triviality examples") {
    CHECK(cup_is_pure(SystemType::quantum(4)));
    CHECK_FALSE(has_nontrivial_leak(SystemType::quantum(4)));
    CHECK_FALSE(cup_is_pure(SystemType::classical(2)));
    CHECK(has_nontrivial_leak(SystemType::classical(2)));
    CHECK_FALSE(cup_is_pure(HYB));
    CHECK(has_nontrivial_leak(HYB));
  }

  TEST_CASE("cup purity, leak triviality and single block coincide") {
    for (const auto& a : enumerate_system_types(6, 3)) {
      CAPTURE(a.to_string());
      const bool single = a.num_blocks() == 1;
      CHECK(cup_is_pure(a) == single);
      CHECK(has_nontrivial_leak(a) == !single);
    }
  }

  TEST_CASE("leaks and cup dilations correspond") {
    Rng rng(8);
    const SystemType b({1, 2});
    const auto s = random_causal_state(b, rng);
    const Process triv = trivial_leak(Q2, s, b);
    const Process dil = cup_dilation_from_leak(triv);
    CHECK(max_abs_diff(dil, compose_par(cup(Q2), state(b, s))) < 1e-12);

    const SystemType c2 = SystemType::classical(2);
    const Process wb = which_branch_leak(c2);
    const Process wd = cup_dilation_from_leak(wb);
    const auto blocks = state_blocks(wd);
    // Σ_k |kk><kk| ⊗ |k><k|: only blocks (0,0,0) and (1,1,1) of C2⊗C2⊗C2 are set.
    for (std::size_t k = 0; k < blocks.size(); ++k) CHECK(blocks[k](0, 0) == cplx(k == 0 || k == 7 ? 1.0 : 0.0));
    CHECK(max_abs_diff(leak_from_cup_dilation(wd, c2), wb) < 1e-12);

    for (int t = 0; t < 10; ++t) {
      const Process l = random_leak(HYB, HYB, rng);
      const Process d = cup_dilation_from_leak(l);
      CHECK(max_abs_diff(leak_from_cup_dilation(d, HYB), l) < 1e-9);
      CHECK(max_abs_diff(cup_dilation_from_leak(leak_from_cup_dilation(d, HYB)), d) < 1e-9);
    }
    CHECK_THROWS_AS(leak_from_cup_dilation(scale(wd, 2.0), c2), PreconditionError);
    CHECK_THROWS_AS(cup_dilation_from_leak(scale(wb, 2.0)), PreconditionError);
  }
}
