#include <doctest.h>

#include "oracle.hpp"
#include "ptv/error.hpp"
#include "ptv/system_type.hpp"

using namespace ptv;

TEST_SUITE("system_type") {
  TEST_CASE("canonical forms") {
    CHECK(SystemType::trivial().blocks() == std::vector<int>{1});
    CHECK(SystemType::classical(3).blocks() == std::vector<int>{1, 1, 1});
    CHECK(SystemType::quantum(4).is_single_block());
    CHECK(SystemType::classical(3).is_classical());
    CHECK_FALSE(SystemType({2, 1}).is_classical());
    CHECK(SystemType({2, 1}).total_dim() == 3);
    CHECK(SystemType({2, 1}).algebra_dim() == 5);
    CHECK(SystemType({2, 1}).to_string() == "[2,1]");
  }

  TEST_CASE("invalid block lists are rejected") {
    CHECK_THROWS_AS(SystemType(std::vector<int>{}), DimensionError);
    CHECK_THROWS_AS(SystemType({2, 0}), DimensionError);
  }

  TEST_CASE("tensor is the lexicographic product") {
    CHECK(tensor(SystemType({2, 1}), SystemType({2, 1})).blocks() == std::vector<int>{4, 2, 2, 1});
    CHECK(tensor(SystemType::classical(2), SystemType::quantum(2)).blocks() == std::vector<int>{2, 2});
    CHECK(tensor(SystemType::trivial(), SystemType({3, 1})) == SystemType({3, 1}));
  }

  TEST_CASE("tensor is associative on random block lists") {
    const auto all = enumerate_system_types(3);
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all) CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
  }

  TEST_CASE("right factor recovery") {
    const SystemType a({2, 1}), b({1, 3});
    CHECK(infer_right_factor(a, tensor(a, b)) == b);
    CHECK_THROWS_AS(infer_right_factor(SystemType::quantum(4), SystemType::trivial()), DimensionError);
    CHECK_THROWS_AS(infer_right_factor(SystemType({2, 1}), SystemType({4, 2, 2})), DimensionError);
  }

  TEST_CASE("enumeration matches the composition count") {
    int expected = 0;
    for (int n = 1; n <= 6; ++n) expected += oracle::count_compositions(n, 3) - oracle::count_compositions(n, 0);
    CHECK(enumerate_system_types(6, 3).size() == static_cast<std::size_t>(expected));
    CHECK(enumerate_system_types(8).size() == 255u);
  }
}
