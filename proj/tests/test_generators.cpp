#include <catch_amalgamated.hpp>

#include "ultra/generators.hpp"
#include "ultra/testing/oracles.hpp"

using namespace ultra;

TEST_CASE("random ultrametric spaces") {
  CHECK(random_ultrametric(1, 0).size() == 1);

  const auto three = random_ultrametric(3, 42);
  const auto spec3 = distance_spectrum(three);
  double sides[3] = {three(0, 1), three(1, 2), three(0, 2)};
  std::sort(sides, sides + 3);
  CHECK(sides[1] == sides[2]);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = random_ultrametric(12, seed);
    CHECK(is_ultrametric(s).holds);
    CHECK(oracle::ultrametric_by_triangles(s));
    CHECK(distance_spectrum(s).size() <= 11);
  }
  CHECK(random_ultrametric(9, 7) == random_ultrametric(9, 7));
  CHECK_FALSE(random_ultrametric(9, 7) == random_ultrametric(9, 8));
  CHECK_THROWS_AS(random_ultrametric(0, 1), Error);
}

TEST_CASE("levels follow the requested distribution") {
  LevelDistribution d;
  d.log2_lo = -2;
  d.log2_hi = 2;
  d.mantissa_bits = 4;
  for (double v : distance_spectrum(random_ultrametric(10, 3, d))) {
    CHECK(v >= 0.25);
    CHECK(v <= 4.0);
    int e = 0;
    const double frac = std::frexp(v, &e);
    CHECK(std::ldexp(frac, 4) == std::round(std::ldexp(frac, 4)));
  }
}

TEST_CASE("d+ samples") {
  CHECK(dplus_space({2, 3})(0, 1) == 3.0);
  const auto s = dplus_space({0, 1, 2});
  CHECK(s(0, 1) == 1.0);
  CHECK(s(1, 2) == 2.0);
  CHECK(s(0, 2) == 2.0);
  CHECK(dplus_space({5}).size() == 1);
  CHECK_THROWS_AS(dplus_space({1, 1}), Error);
  CHECK_THROWS_AS(dplus_space({-1}), Error);
  CHECK(is_ultrametric(dplus_space({0, 0.5, 3, 7, 7.5})).holds);
}

TEST_CASE("d2+ samples") {
  CHECK(dplus2_space({{0, 1}, {2, 0}})(0, 1) == 2.0);
  const auto eq = dplus2_space({{0, 0}, {0, 3}, {3, 0}});
  CHECK(distance_spectrum(eq) == std::vector<double>{3});
  try {
    dplus2_space({{1, 1}});
    FAIL("accepted (1,1)");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInDomain);
  }
  try {
    dplus2_space({{0, 1}, {0, 1}});
    FAIL("accepted a repeated point");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicatePoint);
  }
  CHECK(eq.labels()[1] == "(0,3)");
}

TEST_CASE("truncated non-compact family") {
  const auto fam = tbu_noncompact_truncation(3, 0.5);
  CHECK(fam.levels.values == std::vector<double>{0.5, 0.25, 0.125});
  const auto& s = fam.space;
  CHECK(s(0, 1) == 0.5);
  CHECK(s(0, 2) == 0.5);
  CHECK(s(1, 2) == 0.25);
  CHECK(covering_number(s, fam.levels.values.front()) == 1);
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto f = tbu_noncompact_truncation(n, 0.5);
    CHECK(min_positive_distance(f.space) == f.levels.values[n - 2]);
    CHECK(is_ultrametric(f.space).holds);
  }
  CHECK(tbu_noncompact_truncation(4, 0.5, true).space.size() == 8);
  CHECK_THROWS_AS(tbu_noncompact_truncation(1, 0.5), Error);
  CHECK_THROWS_AS(tbu_noncompact_truncation(4, 1.5), Error);
}

TEST_CASE("proof triangles") {
  CHECK(distance_spectrum(triangle_equilateral(5)) == std::vector<double>{5});
  const auto iso = triangle_isosceles(1, 2);
  CHECK(iso(0, 1) == 2.0);
  CHECK(iso(1, 2) == 2.0);
  CHECK(iso(0, 2) == 1.0);
  CHECK(is_ultrametric(iso).holds);
  CHECK_THROWS_AS(triangle_isosceles(3, 2), Error);
  CHECK_THROWS_AS(triangle_equilateral(0), Error);
}
