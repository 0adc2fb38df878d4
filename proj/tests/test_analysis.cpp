#include <catch_amalgamated.hpp>

#include <cmath>

#include "ultra/analysis.hpp"
#include "ultra/dsl.hpp"

using namespace ultra;

namespace {

const Node& root(const std::string& src) {
  static std::vector<FunctionSpec> keep;
  keep.push_back(parse_function_spec(src));
  return keep.back().root();
}

}  // namespace

TEST_CASE("sign rules") {
  CHECK(analysis::nonnegative(root("t")));
  CHECK(analysis::nonnegative(root("cantor_hat(t) * step_above(2)")));
  CHECK_FALSE(analysis::nonnegative(root("t - 1")));
  CHECK(analysis::nonnegative(root("max(0, t - 1)")));

  CHECK(analysis::positive_on_open(root("t")));
  CHECK(analysis::positive_on_open(root("pow(t, 0.5) + step_above(1)")));
  CHECK(analysis::positive_on_open(root("piecewise { [0,1): t; [1,inf): 2*t }")));
  CHECK_FALSE(analysis::positive_on_open(root("max(0, t - 1)")));
  CHECK_FALSE(analysis::positive_on_open(root("step_above(0)")));
}

TEST_CASE("monotonicity rules") {
  for (const char* src : {"t", "cantor_hat(t)", "t*t + 3", "min(t, 1)", "max(t, step_above(2))", "pow(t, 0.5)",
                          "t/3", "cantor_hat(2*t) + pow(t, 3)", "piecewise { [0,1): t; [1,inf): 2*t }",
                          "piecewise { [0,0]: 0; (0,inf): t + 1 }", "t - 1"}) {
    INFO(src);
    CHECK(analysis::nondecreasing(root(src)));
  }
  for (const char* src : {"piecewise { [0,1): t; [1,2): 5; [2,inf): 3 }", "piecewise { [0,1): 2*t; [1,inf): t }",
                          "max(1/2, 3 - t)", "t * pow(t - 1, 2)"}) {
    INFO(src);
    CHECK_FALSE(analysis::nondecreasing(root(src)));
  }
}

TEST_CASE("limits") {
  CHECK(analysis::limit_at_zero(root("t")) == 0.0);
  CHECK(analysis::limit_at_zero(root("cantor_hat(t)")) == 0.0);
  CHECK(analysis::limit_at_zero(root("step_above(1)")) == 1.0);
  CHECK(analysis::limit_at_zero(root("piecewise { [0,0]: 0; (0,inf): t + 1/2 }")) == 0.5);
  CHECK(analysis::limit_at_zero(root("t + step_above(3)")) == 3.0);

  CHECK(analysis::limit_at_infinity(root("t")) == kInf);
  CHECK(analysis::limit_at_infinity(root("cantor_hat(t)")) == 1.0);
  CHECK(analysis::limit_at_infinity(root("min(t, 100)")) == 100.0);
  CHECK(analysis::limit_at_infinity(root("pow(t, 0.5) + 1")) == kInf);
}

TEST_CASE("subadditivity closure rules") {
  for (const char* src : {"t", "cantor_hat(t)", "pow(t, 0.5)", "min(t, 1)", "step_above(1)", "2*t + step_above(3)",
                          "max(t, cantor_hat(t))"}) {
    INFO(src);
    CHECK(analysis::subadditive(root(src)));
  }
  for (const char* src : {"t*t", "pow(t, 2)", "max(0, t - 1)"}) {
    INFO(src);
    CHECK_FALSE(analysis::subadditive(root(src)));
  }
}

TEST_CASE("polynomial extraction and roots") {
  const auto p = analysis::as_polynomial(root("t * pow(t - 1, 2)"));
  REQUIRE(p);
  CHECK(analysis::poly_eval(*p, 2) == 2.0);
  CHECK(analysis::poly_derivative({1, 2, 3}) == analysis::Polynomial{2, 6});
  CHECK_FALSE(analysis::as_polynomial(root("cantor_hat(t)")));

  const auto zeros = analysis::polynomial_zero_candidates(*p, Interval{0, kInf, true, false});
  CHECK(std::find(zeros.begin(), zeros.end(), 1.0) != zeros.end());

  const auto q = analysis::as_polynomial(root("t*t - 3*t + 2"));
  REQUIRE(q);
  auto roots = analysis::detail::real_roots(*q, 0, 10);
  std::sort(roots.begin(), roots.end());
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Catch::Approx(1.0));
  CHECK(roots[1] == Catch::Approx(2.0));
}
