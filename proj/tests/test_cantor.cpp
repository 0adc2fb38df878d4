#include <catch_amalgamated.hpp>

#include <cmath>

#include "ultra/cantor.hpp"
#include "ultra/rng.hpp"
#include "ultra/testing/oracles.hpp"

using ultra::cantor_hat;

TEST_CASE("anchor values") {
  CHECK(cantor_hat(0.0) == 0.0);
  CHECK(cantor_hat(1.0) == 1.0);
  CHECK(cantor_hat(2.0) == 1.0);
  CHECK(cantor_hat(1e300) == 1.0);
  CHECK(cantor_hat(0.5) == 0.5);  // 1/2 = 0.111...3 lies in the middle third
  CHECK_THROWS_AS(cantor_hat(-1.0), ultra::Error);
  CHECK_THROWS_AS(cantor_hat(std::nan("")), ultra::Error);
}

TEST_CASE("values at rationals match the self-similarity oracle") {
  const double tol = std::ldexp(1.0, -50);
  CHECK(std::abs(cantor_hat(1.0 / 3) - 0.5) <= tol);
  CHECK(std::abs(cantor_hat(2.0 / 3) - 0.5) <= tol);
  CHECK(std::abs(cantor_hat(7.0 / 9) - 0.75) <= tol);
  CHECK(std::abs(cantor_hat(0.25) - 1.0 / 3) <= tol);
  CHECK(std::abs(cantor_hat(0.75) - 2.0 / 3) <= tol);

  // Dyadic inputs are exact doubles, so the tight bound applies.
  for (std::int64_t den = 2; den <= 4096; den *= 2)
    for (std::int64_t num = 1; num < den; ++num) {
      INFO(num << "/" << den);
      CHECK(std::abs(cantor_hat(static_cast<double>(num) / den) - ultra::oracle::cantor_rational(num, den)) <= tol);
    }

  // Other rationals are rounded on input. The Cantor function is Hoelder with
  // exponent log 2 / log 3 and constant 2, which bounds the effect of that rounding.
  const double alpha = std::log(2.0) / std::log(3.0);
  for (std::int64_t den : {5, 7, 10, 11, 13, 27, 81, 243, 1000}) {
    for (std::int64_t num = 1; num < den; ++num) {
      INFO(num << "/" << den);
      const double t = static_cast<double>(num) / den;
      const double rounding = std::abs(std::nextafter(t, 1.0) - t);
      const double bound = 2 * std::pow(rounding, alpha) + tol;
      CHECK(std::abs(cantor_hat(t) - ultra::oracle::cantor_rational(num, den)) <= bound);
    }
  }
}

TEST_CASE("dyadic powers stay positive and shrink") {
  double prev = 1.0;
  for (int k = 1; k <= 1000; ++k) {
    const double v = cantor_hat(std::ldexp(1.0, -k));
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(cantor_hat(std::ldexp(1.0, -60)) < std::ldexp(1.0, -30));
}

TEST_CASE("monotone on a fine grid and on random pairs") {
  double prev = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double v = cantor_hat(2.0 * i / 10000.0);
    REQUIRE(v >= prev);
    prev = v;
  }
  ultra::Rng rng(3);
  for (int i = 0; i < 5000; ++i) {
    double a = rng.uniform01(), b = rng.uniform01();
    if (a > b) std::swap(a, b);
    REQUIRE(cantor_hat(a) <= cantor_hat(b));
    const double next = std::nextafter(a, 1.0);
    REQUIRE(cantor_hat(a) <= cantor_hat(next));
  }
}

TEST_CASE("subadditive on random pairs") {
  ultra::Rng rng(11);
  for (int i = 0; i < 5000; ++i) {
    const double x = rng.log_uniform(-20, 2), y = rng.log_uniform(-20, 2);
    REQUIRE(cantor_hat(x + y) <= cantor_hat(x) + cantor_hat(y));
  }
}
