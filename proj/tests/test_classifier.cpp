#include <catch_amalgamated.hpp>

#include "ultra/classifier.hpp"
#include "ultra/dsl.hpp"
#include "ultra/generators.hpp"
#include "ultra/transform.hpp"

using namespace ultra;

namespace {

FunctionSpec spec(const std::string& s) { return parse_function_spec(s); }

}  // namespace

TEST_CASE("P_U membership") {
  CHECK(classify_pu(spec("t")).holds());
  CHECK(classify_pu(spec("cantor_hat(t)")).holds());
  const auto inv = classify_pu(spec("piecewise { [0,1): t; [1,2): 5; [2,inf): 3 }"));
  CHECK(inv.fails());
  CHECK(inv.property == Property::Increasing);
  const auto zero = classify_pu(spec("max(0, t-1)"));
  CHECK(zero.fails());
  CHECK(zero.property == Property::Amenable);
}

TEST_CASE("PT membership") {
  CHECK(classify_pt(spec("t")).holds());
  CHECK(classify_pt(spec("cantor_hat(t)")).holds());
  for (const char* a : {"1/1024", "1", "1024"}) {
    const auto v = classify_pt(spec(std::string("step_above(") + a + ")"));
    CHECK(v.fails());
    CHECK(v.property == Property::ContinuousAtZero);
  }
}

TEST_CASE("P_M sufficient certificate") {
  CHECK(classify_pm_sufficient(spec("t")).holds());
  CHECK(classify_pm_sufficient(spec("cantor_hat(t)")).holds());
  const auto sq = classify_pm_sufficient(spec("t^2"));
  CHECK(sq.fails());
  CHECK(sq.property == Property::Subadditive);
}

TEST_CASE("triplet preservation") {
  CHECK(check_triplet_preservation(spec("t"), 2000, 1).holds());
  CHECK(check_triplet_preservation(spec("cantor_hat(t)"), 10000, 2).holds());
  const auto f = spec("t^2");
  const auto sq = check_triplet_preservation(f, 2000, 3);
  REQUIRE(sq.fails());
  REQUIRE(sq.witness.size() == 3);
  CHECK(sq.witness[0].t == 1.0);
  CHECK(sq.witness[1].t == 1.0);
  CHECK(sq.witness[2].t == 2.0);
  CHECK(sq.witness[2].value == 4.0);  // images (1,1,4): 8 > 6
  CHECK(witness_reverifies(f, sq));
}

TEST_CASE("min-max equation") {
  CHECK(check_minmax_equation(spec("t"), 2000, 1).holds());
  CHECK(check_minmax_equation(spec("step_above(1)"), 2000, 1).holds());

  const auto f = spec("piecewise { [0,1): t; [1,2): 5; [2,inf): 3 }");
  const auto v = check_minmax_equation(f, 2000, 1);
  REQUIRE(v.fails());
  REQUIRE(v.witness.size() == 3);
  CHECK(v.witness[1].t == v.witness[2].t);
  CHECK(v.witness[0].t < v.witness[1].t);
  CHECK(v.witness[0].value > v.witness[1].value);
  CHECK(witness_reverifies(f, v));
}

TEST_CASE("classification reports") {
  const auto id = classify_report(spec("t"));
  CHECK(id.pu.holds());
  CHECK(id.pt.holds());
  CHECK(id.pm_sufficient.holds());
  CHECK(id.triplet.holds());
  CHECK(id.minmax.holds());

  const auto step = classify_report(spec("step_above(1)"));
  CHECK(step.pu.holds());
  CHECK(step.pt.fails());
  CHECK(step.inf_bound.estimate == 1.0);
  CHECK(step.inf_bound.exact);

  const auto g = classify_report(spec("cantor_hat(t)"));
  CHECK(g.pu.holds());
  CHECK(g.pt.holds());
  CHECK(g.pm_sufficient.holds());
  CHECK(g.equalities.size() == pt_equal_classes().size());
}

TEST_CASE("report invariants hold across a family") {
  for (const char* src : {"t", "cantor_hat(t)", "step_above(1)", "max(0, t-1)", "t^2", "min(t, 1)",
                          "piecewise { [0,0]: 0; (0,inf): t + 1 }", "piecewise { [0,1): t; [1,2): 5; [2,inf): 3 }"}) {
    INFO(src);
    const auto r = classify_report(spec(src));
    CHECK_NOTHROW(check_report_invariants(r));
    if (r.pt.holds()) CHECK(r.pu.holds());
  }
}

TEST_CASE("P_U members preserve ultrametrics; the image of a non-member can break") {
  const auto f = spec("pow(t, 0.5)");
  const auto img = apply_function(triangle_from_sides(1, 4, 4), f);
  CHECK(img(0, 1) == 1.0);
  CHECK(img(1, 2) == 2.0);
  CHECK(is_ultrametric(img).holds);

  const auto g = spec("piecewise { [0,1): t; [1,2): 5; [2,inf): 3 }");
  const auto bad = apply_function(triangle_isosceles(1, 2), g);
  CHECK(distance_spectrum(bad) == std::vector<double>{3, 5});
  CHECK_FALSE(is_ultrametric(bad).holds);

  const auto s = random_ultrametric(6, 8);
  CHECK(apply_function(s, spec("t")) == s);
  CHECK_THROWS_AS(apply_function(triangle_from_sides(1, 2, 2), spec("max(0, t-1)")), Error);
}
