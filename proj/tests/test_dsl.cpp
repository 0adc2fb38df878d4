#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "ultra/dsl.hpp"

using namespace ultra;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    parse_function_spec(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parsed without error: " << text);
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("identity and builtins") {
  const auto id = parse_function_spec("t");
  CHECK(id.root().kind == NodeKind::Var);
  CHECK(evaluate(id, 7) == 7.0);

  const auto g = parse_function_spec("cantor_hat(t)");
  CHECK(g.root().kind == NodeKind::CantorHat);
  CHECK(evaluate(g, 2) == 1.0);
  CHECK(std::abs(evaluate(g, 0.25) - 1.0 / 3) <= std::ldexp(1.0, -50));

  const auto step = parse_function_spec("step_above(1)");
  CHECK(evaluate(step, 0) == 0.0);
  CHECK(evaluate(step, std::ldexp(1.0, -60)) == 1.0);
  CHECK(evaluate(step, 1e6) == 1.0);
}

TEST_CASE("piecewise spec with a jump at zero") {
  const auto f = parse_function_spec("piecewise { [0,0]: 0; (0,inf): t + 1 }");
  CHECK(f.root().kind == NodeKind::Piecewise);
  CHECK(evaluate(f, 0) == 0.0);
  for (int k = 1; k <= 60; ++k) CHECK(evaluate(f, std::ldexp(1.0, -k)) == std::ldexp(1.0, -k) + 1.0);
  CHECK(evaluate(f, std::ldexp(1.0, -60)) >= 1.0);
  CHECK(evaluate(f, 3) == 4.0);
}

TEST_CASE("arithmetic, precedence and constant folding") {
  CHECK(evaluate(parse_function_spec("1 + 2*t^2"), 3) == 19.0);
  CHECK(evaluate(parse_function_spec("(1 + 2)*t"), 2) == 6.0);
  CHECK(evaluate(parse_function_spec("pow(t, 0.5)"), 16) == 4.0);
  CHECK(evaluate(parse_function_spec("t/4"), 2) == 0.5);
  CHECK(evaluate(parse_function_spec("min(t, 1) + max(t, 2)"), 3) == 4.0);
  CHECK(evaluate(parse_function_spec("max(0, t-1)"), 0.5) == 0.0);
  CHECK(evaluate(parse_function_spec("  t  "), 1.5) == 1.5);

  const auto folded = parse_function_spec("2*3 + 1/4");
  CHECK(folded.root().kind == NodeKind::Const);
  CHECK(folded.root().number == 6.25);
  CHECK(parse_function_spec("step_above(1/1024)").root().number == std::ldexp(1.0, -10));
}

TEST_CASE("canonical text parses back to the same function") {
  for (const char* src : {"t", "cantor_hat(2*t) + pow(t, 3)", "max(0, t-1)", "step_above(0.5) + t/3",
                          "piecewise { [0,1): t; [1,2): 5; [2,inf): 3 }", "min(t, max(1/2, 3 - t))"}) {
    const auto f = parse_function_spec(src);
    const auto g = parse_function_spec(f.canonical());
    INFO(src << " -> " << f.canonical());
    CHECK(g.canonical() == f.canonical());
    for (double t : {0.0, 0.25, 1.0, 1.5, 2.0, 7.0}) CHECK(f.raw(t) == g.raw(t));
  }
}

TEST_CASE("syntax errors carry a position") {
  CHECK(parse_error("garbage(((") == ErrorCode::SyntaxError);
  CHECK(parse_error("") == ErrorCode::SyntaxError);
  CHECK(parse_error("t +") == ErrorCode::SyntaxError);
  CHECK(parse_error("min(t)") == ErrorCode::SyntaxError);
  CHECK(parse_error("t t") == ErrorCode::SyntaxError);
  CHECK(parse_error("t / t") == ErrorCode::SyntaxError);
  CHECK(parse_error("t / 0") == ErrorCode::SyntaxError);
  CHECK(parse_error("t ^ t") == ErrorCode::SyntaxError);
  CHECK(parse_error("step_above(t)") == ErrorCode::SyntaxError);

  try {
    parse_function_spec("t + )");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("statically negative values are rejected") {
  CHECK(parse_error("-t") == ErrorCode::NegativeValueRisk);
  CHECK(parse_error("1 - 2") == ErrorCode::NegativeValueRisk);
  CHECK(parse_error("pow(t, -1)") == ErrorCode::NegativeValueRisk);
  CHECK(parse_error("step_above(1 - 3)") == ErrorCode::NegativeValueRisk);
  CHECK(parse_error("piecewise { [0,1): t; [1,inf): 0 - 1 }") == ErrorCode::NegativeValueRisk);
}

TEST_CASE("piecewise domains must tile [0, inf)") {
  CHECK(parse_error("piecewise { [0,1): t; (1,inf): t }") == ErrorCode::DomainGap);
  CHECK(parse_error("piecewise { (0,inf): t }") == ErrorCode::DomainGap);
  CHECK(parse_error("piecewise { [0,1]: t; [1,inf): t }") == ErrorCode::DomainGap);
  CHECK(parse_error("piecewise { [0,1): t; [1,5): t }") == ErrorCode::DomainGap);
  CHECK(parse_error("piecewise { [0,1): t; [1,inf]: t }") == ErrorCode::DomainGap);
  CHECK_NOTHROW(parse_function_spec("piecewise { [1,inf): 2; [0,1): t }"));
}

TEST_CASE("evaluate guards the domain and range") {
  const auto f = parse_function_spec("t - 1");
  CHECK(evaluate(f, 3) == 2.0);
  CHECK_THROWS_AS(evaluate(f, 0.5), Error);
  CHECK_THROWS_AS(evaluate(parse_function_spec("t"), -1), Error);
  try {
    evaluate(f, 0.5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidValue);
  }
}

TEST_CASE("function files") {
  std::istringstream in("# header\nt\n\n  cantor_hat(t)  # builtin\nstep_above(2)\n");
  const auto specs = parse_function_file(in);
  REQUIRE(specs.size() == 3);
  CHECK(specs[1].source() == "cantor_hat(t)");
  CHECK(specs[2].raw(1) == 2.0);
  CHECK_THROWS_AS(load_function_file("/nonexistent/specs.fn"), Error);
}
