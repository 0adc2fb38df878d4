#pragma once

// Recursive-descent parser for the function DSL:
//
//   expr     := sum
//   sum      := product (('+' | '-') product)*
//   product  := power (('*' | '/') power)*
//   power    := unary ('^' unary)?
//   unary    := '-' unary | primary
//   primary  := number | 't' | '(' expr ')'
//             | 'min' '(' expr ',' expr ')' | 'max' '(' expr ',' expr ')'
//             | 'pow' '(' expr ',' const ')' | 'cantor_hat' '(' expr ')'
//             | 'step_above' '(' const ')' | piecewise
//   piecewise:= 'piecewise' '{' (interval ':' expr ';')+ '}'
//   interval := ('[' | '(') bound ',' bound (']' | ')')    bound := const | 'inf'
//
// Constant subtrees are folded. Exponents, divisors and step levels must
// fold to constants.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ultra/error.hpp"
#include "ultra/function_spec.hpp"

namespace ultra {

namespace detail {

class DslParser {
 public:
  explicit DslParser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("expected operator or end of input");
    if (root->kind == NodeKind::Const && root->number < 0.0)
      throw SyntaxError(ErrorCode::NegativeValueRisk, 0, "expression is a negative constant");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw SyntaxError(ErrorCode::SyntaxError, pos_, expected + ", found " + found);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string_view peek_ident() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
    if (end == pos_ || std::isdigit(static_cast<unsigned char>(text_[pos_]))) return {};
    return text_.substr(pos_, end - pos_);
  }

  static NodePtr fold(NodeKind kind, NodePtr a, NodePtr b) {
    if (a->kind == NodeKind::Const && b->kind == NodeKind::Const) {
      const Node tmp{kind, 0.0, {a, b}, {}};
      return make_const(eval_raw(tmp, 0.0));
    }
    return make_node(kind, {std::move(a), std::move(b)});
  }

  double constant(const NodePtr& n, std::size_t at, const char* what) const {
    if (n->kind != NodeKind::Const)
      throw SyntaxError(ErrorCode::SyntaxError, at, std::string(what) + " must be a constant");
    if (n->number < 0.0)
      throw SyntaxError(ErrorCode::NegativeValueRisk, at, std::string(what) + " is negative");
    return n->number;
  }

  void check_nonnegative(const NodePtr& n, std::size_t at) const {
    if (n->kind == NodeKind::Const && n->number < 0.0)
      throw SyntaxError(ErrorCode::NegativeValueRisk, at, "negative constant " + format_number(n->number));
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = fold(NodeKind::Add, lhs, product());
      } else if (accept('-')) {
        lhs = fold(NodeKind::Sub, lhs, product());
        // only a folded constant is statically known to be negative
        check_nonnegative(lhs, at);
      } else {
        return lhs;
      }
    }
  }

  NodePtr product() {
    NodePtr lhs = power();
    for (;;) {
      if (accept('*')) {
        lhs = fold(NodeKind::Mul, lhs, power());
      } else if (accept('/')) {
        const std::size_t at = pos_;
        const NodePtr rhs = power();
        if (constant(rhs, at, "divisor") == 0.0) throw SyntaxError(ErrorCode::SyntaxError, at, "division by zero");
        lhs = fold(NodeKind::Div, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  NodePtr power() {
    NodePtr base = unary();
    if (accept('^')) {
      const std::size_t at = pos_;
      const double e = constant(unary(), at, "exponent");
      return pow_node(std::move(base), e);
    }
    return base;
  }

  static NodePtr pow_node(NodePtr base, double e) {
    if (base->kind == NodeKind::Const) return make_const(std::pow(base->number, e));
    return make_node(NodeKind::Pow, {std::move(base)}, e);
  }

  NodePtr unary() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) {
      unary();
      throw SyntaxError(ErrorCode::NegativeValueRisk, at, "unary minus yields a negative value");
    }
    return primary();
  }

  NodePtr number() {
    skip_ws();
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr == first) fail("expected number, 't', '(' or function name");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return make_const(v);
  }

  NodePtr call_args1() {
    expect('(');
    NodePtr a = sum();
    expect(')');
    return a;
  }

  std::pair<NodePtr, NodePtr> call_args2() {
    expect('(');
    NodePtr a = sum();
    expect(',');
    NodePtr b = sum();
    expect(')');
    return {std::move(a), std::move(b)};
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected number, 't', '(' or function name");
    if (accept('(')) {
      NodePtr inner = sum();
      expect(')');
      return inner;
    }
    const std::string_view id = peek_ident();
    if (id.empty()) return number();
    const std::size_t at = pos_;
    pos_ += id.size();
    if (id == "t") return make_var();
    if (id == "min" || id == "max") {
      auto [a, b] = call_args2();
      return fold(id == "min" ? NodeKind::Min : NodeKind::Max, std::move(a), std::move(b));
    }
    if (id == "pow") {
      expect('(');
      NodePtr base = sum();
      expect(',');
      const std::size_t eat = pos_;
      const double e = constant(sum(), eat, "exponent");
      expect(')');
      return pow_node(std::move(base), e);
    }
    if (id == "cantor_hat") {
      NodePtr arg = call_args1();
      if (arg->kind == NodeKind::Const) {
        check_nonnegative(arg, at);
        return make_const(cantor_hat(arg->number));
      }
      return make_node(NodeKind::CantorHat, {std::move(arg)});
    }
    if (id == "step_above") {
      const std::size_t aat = pos_;
      const double level = constant(call_args1(), aat, "step level");
      return make_node(NodeKind::StepAbove, {}, level);
    }
    if (id == "piecewise") return piecewise(at);
    pos_ = at;
    fail("expected number, 't', '(' or one of min, max, pow, cantor_hat, step_above, piecewise");
  }

  double bound() {
    if (peek_ident() == "inf") {
      pos_ += 3;
      return kInf;
    }
    const std::size_t at = pos_;
    NodePtr b = sum();
    return constant(b, at, "interval bound");
  }

  NodePtr piecewise(std::size_t start) {
    expect('{');
    std::vector<Piece> pieces;
    do {
      Interval iv;
      skip_ws();
      if (accept('[')) {
        iv.lo_closed = true;
      } else if (accept('(')) {
        iv.lo_closed = false;
      } else {
        fail("expected '[' or '(' to open an interval");
      }
      iv.lo = bound();
      expect(',');
      iv.hi = bound();
      if (accept(']')) {
        iv.hi_closed = true;
      } else if (accept(')')) {
        iv.hi_closed = false;
      } else {
        fail("expected ']' or ')' to close an interval");
      }
      expect(':');
      NodePtr body = sum();
      check_nonnegative(body, pos_);
      pieces.push_back({iv, std::move(body)});
      if (!accept(';')) break;
      skip_ws();
    } while (pos_ < text_.size() && text_[pos_] != '}');
    expect('}');
    validate_cover(pieces, start);
    return make_piecewise(std::move(pieces));
  }

  /// Pieces must be nonempty, ordered, disjoint and cover [0, inf).
  static void validate_cover(std::vector<Piece>& pieces, std::size_t at) {
    auto gap = [at](const std::string& what) { throw SyntaxError(ErrorCode::DomainGap, at, what); };
    for (const auto& p : pieces) {
      const auto& d = p.domain;
      if (d.lo == kInf || (d.hi == kInf && d.hi_closed)) gap("inf must be an open upper bound");
      if (d.lo > d.hi || (d.lo == d.hi && !(d.lo_closed && d.hi_closed)))
        gap("empty interval starting at " + format_number(d.lo));
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
      if (a.domain.lo != b.domain.lo) return a.domain.lo < b.domain.lo;
      return a.domain.lo_closed && !b.domain.lo_closed;
    });
    const auto& first = pieces.front().domain;
    if (first.lo != 0.0 || !first.lo_closed) gap("pieces do not cover t = 0");
    for (std::size_t k = 1; k < pieces.size(); ++k) {
      const auto& a = pieces[k - 1].domain;
      const auto& b = pieces[k].domain;
      if (b.lo > a.hi || (b.lo == a.hi && !a.hi_closed && !b.lo_closed))
        gap("pieces leave a gap at " + format_number(a.hi));
      if (b.lo < a.hi || (b.lo == a.hi && a.hi_closed && b.lo_closed))
        gap("pieces overlap at " + format_number(b.lo));
    }
    if (pieces.back().domain.hi != kInf) gap("pieces do not reach inf");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FunctionSpec parse_function_spec(std::string_view text) {
  return FunctionSpec(detail::DslParser(text).parse(), std::string(text));
}

/// One spec per line; '#' starts a comment; blank lines are skipped.
inline std::vector<FunctionSpec> parse_function_file(std::istream& in) {
  std::vector<FunctionSpec> specs;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    specs.push_back(parse_function_spec(line.substr(b, e - b + 1)));
  }
  return specs;
}

inline std::vector<FunctionSpec> load_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return parse_function_file(in);
}

}  // namespace ultra
