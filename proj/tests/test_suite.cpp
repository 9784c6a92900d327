#include <doctest.h>

#include "ptv/suite.hpp"

using namespace ptv;

namespace {

const CheckResult* find(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_SUITE("suite") {
  TEST_CASE("Q2 passes every check") {
    const VerificationReport r = run_postulate_suite(SystemType::quantum(2));
    CHECK(r.pass());
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
      CHECK(c.expected == (c.name != "has_nontrivial_leak"));
      CHECK(c.error.empty());
    }
  }

  TEST_CASE("C3 passes with the predicted negatives") {
    const VerificationReport r = run_postulate_suite(SystemType::classical(3));
    CHECK(r.pass());
    const CheckResult* cup = find(r, "cup_is_pure");
    REQUIRE(cup);
    CHECK_FALSE(cup->expected);
    CHECK_FALSE(cup->observed);
    const CheckResult* leak = find(r, "has_nontrivial_leak");
    REQUIRE(leak);
    CHECK(leak->expected);
    CHECK(leak->observed);
  }

  TEST_CASE("hybrid system passes") { CHECK(run_postulate_suite(SystemType({2, 1})).pass()); }

  TEST_CASE("systems above the cap fail with an error entry") {
    const VerificationReport r = run_postulate_suite(SystemType::quantum(5));
    CHECK_FALSE(r.pass());
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].name == "dimension_guard");
    CHECK_FALSE(r.checks[0].error.empty());
    SuiteOptions big;
    big.max_dim = 125;
    big.trials = 3;
    CHECK(run_postulate_suite(SystemType::quantum(5), big).checks.size() > 1);
  }

  TEST_CASE("reports serialise deterministically") {
    SuiteOptions o;
    o.seed = 42;
    const std::string a = run_postulate_suite(SystemType({2, 1}), o).to_json().dump();
    const std::string b = run_postulate_suite(SystemType({2, 1}), o).to_json().dump();
    CHECK(a == b);
    CHECK(a.find("elapsed_ms") == std::string::npos);
    CHECK(run_postulate_suite(SystemType::quantum(2), o).to_json(true).dump().find("elapsed_ms") != std::string::npos);
    o.seed = 43;
    CHECK(run_postulate_suite(SystemType({2, 1}), o).to_json().dump() != a);
  }

  TEST_CASE("every check carries an anchor") {
    for (const auto& c : run_postulate_suite(SystemType::quantum(2)).checks) CHECK_FALSE(c.anchor.empty());
  }
}
