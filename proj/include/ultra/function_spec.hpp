#pragma once

// Expression trees for candidate functions f: [0, inf) -> [0, inf).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ultra/cantor.hpp"
#include "ultra/error.hpp"

namespace ultra {

enum class NodeKind { Const, Var, Add, Sub, Mul, Div, Pow, Min, Max, CantorHat, StepAbove, Piecewise };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = kInf;
  bool lo_closed = true;
  bool hi_closed = false;

  bool contains(double t) const noexcept {
    const bool above = lo_closed ? t >= lo : t > lo;
    const bool below = hi_closed ? t <= hi : t < hi;
    return above && below;
  }
  bool operator==(const Interval&) const = default;
};

struct Piece {
  Interval domain;
  NodePtr body;
};

/// `number` is the literal for Const, the exponent for Pow and the level for
/// StepAbove. Binary and min/max nodes use `args`; CantorHat has one arg.
struct Node {
  NodeKind kind = NodeKind::Const;
  double number = 0.0;
  std::vector<NodePtr> args;
  std::vector<Piece> pieces;
};

inline NodePtr make_const(double v) { return std::make_shared<const Node>(Node{NodeKind::Const, v, {}, {}}); }
inline NodePtr make_var() { return std::make_shared<const Node>(Node{NodeKind::Var, 0.0, {}, {}}); }
inline NodePtr make_node(NodeKind kind, std::vector<NodePtr> args, double number = 0.0) {
  return std::make_shared<const Node>(Node{kind, number, std::move(args), {}});
}
inline NodePtr make_piecewise(std::vector<Piece> pieces) {
  return std::make_shared<const Node>(Node{NodeKind::Piecewise, 0.0, {}, std::move(pieces)});
}

/// Value of the tree at t without range checks. Intermediate values may be
/// negative (e.g. the `t-1` inside `max(0, t-1)`); a negative argument to
/// cantor_hat yields NaN.
inline double eval_raw(const Node& n, double t) {
  switch (n.kind) {
    case NodeKind::Const: return n.number;
    case NodeKind::Var: return t;
    case NodeKind::Add: return eval_raw(*n.args[0], t) + eval_raw(*n.args[1], t);
    case NodeKind::Sub: return eval_raw(*n.args[0], t) - eval_raw(*n.args[1], t);
    case NodeKind::Mul: return eval_raw(*n.args[0], t) * eval_raw(*n.args[1], t);
    case NodeKind::Div: return eval_raw(*n.args[0], t) / eval_raw(*n.args[1], t);
    case NodeKind::Pow: return std::pow(eval_raw(*n.args[0], t), n.number);
    case NodeKind::Min: return std::min(eval_raw(*n.args[0], t), eval_raw(*n.args[1], t));
    case NodeKind::Max: return std::max(eval_raw(*n.args[0], t), eval_raw(*n.args[1], t));
    case NodeKind::CantorHat: {
      const double x = eval_raw(*n.args[0], t);
      if (std::isnan(x) || x < 0.0) return std::numeric_limits<double>::quiet_NaN();
      return cantor_hat(x);
    }
    case NodeKind::StepAbove: return t > 0.0 ? n.number : 0.0;
    case NodeKind::Piecewise:
      for (const auto& p : n.pieces)
        if (p.domain.contains(t)) return eval_raw(*p.body, t);
      return std::numeric_limits<double>::quiet_NaN();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// Shortest decimal that round-trips to the same double.
inline std::string format_number(double v) {
  if (v == kInf) return "inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string to_source(const Node& n) {
  auto bin = [&](const char* op) {
    return "(" + to_source(*n.args[0]) + " " + op + " " + to_source(*n.args[1]) + ")";
  };
  switch (n.kind) {
    case NodeKind::Const: return format_number(n.number);
    case NodeKind::Var: return "t";
    case NodeKind::Add: return bin("+");
    case NodeKind::Sub: return bin("-");
    case NodeKind::Mul: return bin("*");
    case NodeKind::Div: return bin("/");
    case NodeKind::Pow: return "pow(" + to_source(*n.args[0]) + ", " + format_number(n.number) + ")";
    case NodeKind::Min: return "min(" + to_source(*n.args[0]) + ", " + to_source(*n.args[1]) + ")";
    case NodeKind::Max: return "max(" + to_source(*n.args[0]) + ", " + to_source(*n.args[1]) + ")";
    case NodeKind::CantorHat: return "cantor_hat(" + to_source(*n.args[0]) + ")";
    case NodeKind::StepAbove: return "step_above(" + format_number(n.number) + ")";
    case NodeKind::Piecewise: {
      std::string s = "piecewise { ";
      for (const auto& p : n.pieces) {
        s += p.domain.lo_closed ? "[" : "(";
        s += format_number(p.domain.lo) + "," + format_number(p.domain.hi);
        s += p.domain.hi_closed ? "]" : ")";
        s += ": " + to_source(*p.body) + "; ";
      }
      return s + "}";
    }
  }
  return "?";
}

/// A parsed function. Immutable; copies share the tree.
class FunctionSpec {
 public:
  FunctionSpec(NodePtr root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

  const Node& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }
  /// Text the spec was parsed from (or a canonical rendering).
  const std::string& source() const noexcept { return source_; }
  std::string canonical() const { return to_source(*root_); }

  double raw(double t) const { return eval_raw(*root_, t); }

 private:
  NodePtr root_;
  std::string source_;
};

inline FunctionSpec make_spec(NodePtr root) {
  auto text = to_source(*root);
  return FunctionSpec(std::move(root), std::move(text));
}

/// Value of f at t >= 0. Throws NegativeInput for t < 0 and InvalidValue
/// when the spec produces a negative or non-finite value at t.
inline double evaluate(const FunctionSpec& f, double t) {
  if (std::isnan(t) || t < 0.0) throw Error(ErrorCode::NegativeInput, "evaluate needs t >= 0");
  const double v = f.raw(t);
  if (!std::isfinite(v) || v < 0.0)
    throw Error(ErrorCode::InvalidValue, "f(" + format_number(t) + ") = " + format_number(v) +
                                             " is not a finite nonnegative real");
  return v;
}

}  // namespace ultra
