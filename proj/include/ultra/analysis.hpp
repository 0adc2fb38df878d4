#pragma once

// Structural (symbolic) facts about function trees. Every rule here is a
// sufficient condition; `false` / nullopt means "not provable by structure",
// never "provably false".

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ultra/cantor.hpp"
#include "ultra/function_spec.hpp"

namespace ultra::analysis {

/// f(t) >= 0 for every t >= 0.
inline bool nonnegative(const Node& n) {
  switch (n.kind) {
    case NodeKind::Const: return n.number >= 0.0;
    case NodeKind::Var: return true;
    case NodeKind::CantorHat: return nonnegative(*n.args[0]);
    case NodeKind::StepAbove: return n.number >= 0.0;
    case NodeKind::Add:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Min: return nonnegative(*n.args[0]) && nonnegative(*n.args[1]);
    case NodeKind::Max: return nonnegative(*n.args[0]) || nonnegative(*n.args[1]);
    case NodeKind::Pow: return nonnegative(*n.args[0]);
    case NodeKind::Sub: return false;
    case NodeKind::Piecewise:
      return std::all_of(n.pieces.begin(), n.pieces.end(), [](const Piece& p) { return nonnegative(*p.body); });
  }
  return false;
}

/// f(t) > 0 for every t > 0.
inline bool positive_on_open(const Node& n) {
  switch (n.kind) {
    case NodeKind::Const: return n.number > 0.0;
    case NodeKind::Var: return true;
    case NodeKind::StepAbove: return n.number > 0.0;
    case NodeKind::Add: {
      const Node &a = *n.args[0], &b = *n.args[1];
      return (positive_on_open(a) && nonnegative(b)) || (nonnegative(a) && positive_on_open(b));
    }
    case NodeKind::Mul: return positive_on_open(*n.args[0]) && positive_on_open(*n.args[1]);
    case NodeKind::Div: return positive_on_open(*n.args[0]);  // divisor is a positive constant
    case NodeKind::Pow: return n.number == 0.0 || positive_on_open(*n.args[0]);
    case NodeKind::Min: return positive_on_open(*n.args[0]) && positive_on_open(*n.args[1]);
    case NodeKind::Max: return positive_on_open(*n.args[0]) || positive_on_open(*n.args[1]);
    case NodeKind::CantorHat: return positive_on_open(*n.args[0]);
    case NodeKind::Sub: return false;
    case NodeKind::Piecewise:
      return std::all_of(n.pieces.begin(), n.pieces.end(), [](const Piece& p) {
        const bool only_zero = p.domain.hi == 0.0;
        return only_zero || positive_on_open(*p.body);
      });
  }
  return false;
}

/// Nondecreasing on all of [0, inf).
inline bool nondecreasing(const Node& n) {
  switch (n.kind) {
    case NodeKind::Const:
    case NodeKind::Var: return true;
    case NodeKind::StepAbove: return n.number >= 0.0;
    case NodeKind::Add:
    case NodeKind::Min:
    case NodeKind::Max: return nondecreasing(*n.args[0]) && nondecreasing(*n.args[1]);
    case NodeKind::Sub: return nondecreasing(*n.args[0]) && n.args[1]->kind == NodeKind::Const;
    case NodeKind::Div: return nondecreasing(*n.args[0]);  // divisor is a positive constant
    case NodeKind::Mul:
      return nondecreasing(*n.args[0]) && nondecreasing(*n.args[1]) && nonnegative(*n.args[0]) &&
             nonnegative(*n.args[1]);
    case NodeKind::Pow:
      return n.number == 0.0 || (nondecreasing(*n.args[0]) && nonnegative(*n.args[0]));
    case NodeKind::CantorHat: return nondecreasing(*n.args[0]) && nonnegative(*n.args[0]);
    case NodeKind::Piecewise: {
      // Each body is globally nondecreasing, so sup over a piece is at most
      // the body's value at the right end and inf over the next piece is at
      // least the next body's value there.
      for (std::size_t k = 0; k < n.pieces.size(); ++k) {
        if (!nondecreasing(*n.pieces[k].body)) return false;
        if (k + 1 == n.pieces.size()) break;
        const double b = n.pieces[k].domain.hi;
        const double left = eval_raw(*n.pieces[k].body, b);
        const double right = eval_raw(*n.pieces[k + 1].body, b);
        if (!(left <= right)) return false;
      }
      return true;
    }
  }
  return false;
}

/// Right limit at 0, when every operator on the path is continuous.
inline std::optional<double> limit_at_zero(const Node& n) {
  auto both = [&](auto op) -> std::optional<double> {
    const auto a = limit_at_zero(*n.args[0]);
    const auto b = limit_at_zero(*n.args[1]);
    if (!a || !b) return std::nullopt;
    const double v = op(*a, *b);
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  };
  switch (n.kind) {
    case NodeKind::Const: return n.number;
    case NodeKind::Var: return 0.0;
    case NodeKind::StepAbove: return n.number;
    case NodeKind::Add: return both([](double a, double b) { return a + b; });
    case NodeKind::Sub: return both([](double a, double b) { return a - b; });
    case NodeKind::Mul: return both([](double a, double b) { return a * b; });
    case NodeKind::Div: return both([](double a, double b) { return a / b; });
    case NodeKind::Min: return both([](double a, double b) { return std::min(a, b); });
    case NodeKind::Max: return both([](double a, double b) { return std::max(a, b); });
    case NodeKind::Pow: {
      const auto a = limit_at_zero(*n.args[0]);
      if (!a || *a < 0.0) return std::nullopt;
      if (n.number == 0.0) return 1.0;
      return std::pow(*a, n.number);
    }
    case NodeKind::CantorHat: {
      const auto a = limit_at_zero(*n.args[0]);
      if (!a || *a < 0.0) return std::nullopt;
      return cantor_hat(*a);
    }
    case NodeKind::Piecewise:
      for (const auto& p : n.pieces)
        if (p.domain.hi > 0.0) return limit_at_zero(*p.body);
      return std::nullopt;
  }
  return std::nullopt;
}

/// Limit at +inf; +inf when the function provably diverges.
inline std::optional<double> limit_at_infinity(const Node& n) {
  const auto lim = [](const NodePtr& c) { return limit_at_infinity(*c); };
  switch (n.kind) {
    case NodeKind::Const:
    case NodeKind::StepAbove: return n.number;
    case NodeKind::Var: return kInf;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Min:
    case NodeKind::Max: {
      const auto a = lim(n.args[0]);
      const auto b = lim(n.args[1]);
      if (!a || !b) return std::nullopt;
      double v = 0.0;
      switch (n.kind) {
        case NodeKind::Add: v = *a + *b; break;
        case NodeKind::Sub: v = *a - *b; break;
        case NodeKind::Mul: v = *a * *b; break;
        case NodeKind::Div: v = *a / *b; break;
        case NodeKind::Min: v = std::min(*a, *b); break;
        default: v = std::max(*a, *b); break;
      }
      if (std::isnan(v) || v < 0.0) return std::nullopt;  // inf-inf, 0*inf, or a negative limit
      return v;
    }
    case NodeKind::Pow: {
      const auto a = lim(n.args[0]);
      if (!a || *a < 0.0) return std::nullopt;
      if (n.number == 0.0) return 1.0;
      return std::pow(*a, n.number);
    }
    case NodeKind::CantorHat: {
      const auto a = lim(n.args[0]);
      if (!a || *a < 0.0) return std::nullopt;
      return *a == kInf ? 1.0 : cantor_hat(*a);
    }
    case NodeKind::Piecewise: return limit_at_infinity(*n.pieces.back().body);
  }
  return std::nullopt;
}

/// f(x+y) <= f(x) + f(y) for all x, y >= 0, from closure rules over
/// nonnegative nondecreasing subadditive atoms (t, constants, step levels,
/// cantor_hat): sums, nonnegative scalings, max, min with a constant,
/// powers with exponent in [0, 1], and cantor_hat of such a function.
inline bool subadditive(const Node& n) {
  auto good = [](const Node& c) { return subadditive(c) && nondecreasing(c) && nonnegative(c); };
  switch (n.kind) {
    case NodeKind::Const: return n.number >= 0.0;
    case NodeKind::Var: return true;
    case NodeKind::StepAbove: return n.number >= 0.0;
    case NodeKind::Add:
    case NodeKind::Max: return good(*n.args[0]) && good(*n.args[1]);
    case NodeKind::Mul: {
      const Node &a = *n.args[0], &b = *n.args[1];
      return (a.kind == NodeKind::Const && a.number >= 0.0 && good(b)) ||
             (b.kind == NodeKind::Const && b.number >= 0.0 && good(a));
    }
    case NodeKind::Div: return good(*n.args[0]);
    case NodeKind::Min: {
      const Node &a = *n.args[0], &b = *n.args[1];
      return (a.kind == NodeKind::Const && a.number >= 0.0 && good(b)) ||
             (b.kind == NodeKind::Const && b.number >= 0.0 && good(a));
    }
    case NodeKind::Pow: return n.number == 0.0 || (n.number <= 1.0 && good(*n.args[0]));
    case NodeKind::CantorHat: return good(*n.args[0]);
    case NodeKind::Sub:
    case NodeKind::Piecewise: return false;
  }
  return false;
}

/// Coefficients c[0] + c[1] t + c[2] t^2 + ...
using Polynomial = std::vector<double>;

inline double poly_eval(const Polynomial& p, double t) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
  return v;
}

inline Polynomial poly_derivative(const Polynomial& p) {
  Polynomial d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<double>(i));
  return d;
}

inline void poly_trim(Polynomial& p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
}

/// The tree as a polynomial in t, if it is one (integer exponents up to 16).
inline std::optional<Polynomial> as_polynomial(const Node& n) {
  switch (n.kind) {
    case NodeKind::Const: return Polynomial{n.number};
    case NodeKind::Var: return Polynomial{0.0, 1.0};
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul: {
      auto a = as_polynomial(*n.args[0]);
      auto b = as_polynomial(*n.args[1]);
      if (!a || !b) return std::nullopt;
      Polynomial out;
      if (n.kind == NodeKind::Mul) {
        out.assign(a->size() + b->size() - 1, 0.0);
        for (std::size_t i = 0; i < a->size(); ++i)
          for (std::size_t j = 0; j < b->size(); ++j) out[i + j] += (*a)[i] * (*b)[j];
      } else {
        out.assign(std::max(a->size(), b->size()), 0.0);
        for (std::size_t i = 0; i < a->size(); ++i) out[i] += (*a)[i];
        const double sign = n.kind == NodeKind::Add ? 1.0 : -1.0;
        for (std::size_t i = 0; i < b->size(); ++i) out[i] += sign * (*b)[i];
      }
      poly_trim(out);
      return out;
    }
    case NodeKind::Div: {
      auto a = as_polynomial(*n.args[0]);
      if (!a || n.args[1]->kind != NodeKind::Const) return std::nullopt;
      for (double& c : *a) c /= n.args[1]->number;
      return a;
    }
    case NodeKind::Pow: {
      const double e = n.number;
      if (e != std::floor(e) || e > 16.0) return std::nullopt;
      auto base = as_polynomial(*n.args[0]);
      if (!base) return std::nullopt;
      Polynomial out{1.0};
      for (int k = 0; k < static_cast<int>(e); ++k) {
        Polynomial next(out.size() + base->size() - 1, 0.0);
        for (std::size_t i = 0; i < out.size(); ++i)
          for (std::size_t j = 0; j < base->size(); ++j) next[i + j] += out[i] * (*base)[j];
        out = std::move(next);
      }
      poly_trim(out);
      return out;
    }
    default: return std::nullopt;
  }
}

namespace detail {

/// Roots of p in [lo, hi] found by isolating monotone runs between the
/// critical points (roots of p'), then bisecting each sign change.
inline std::vector<double> real_roots(const Polynomial& p, double lo, double hi) {
  if (p.size() <= 1) return {};
  if (p.size() == 2) {
    const double r = -p[0] / p[1];
    return (r >= lo && r <= hi) ? std::vector<double>{r} : std::vector<double>{};
  }
  std::vector<double> cuts{lo};
  for (double c : real_roots(poly_derivative(p), lo, hi)) cuts.push_back(c);
  cuts.push_back(hi);
  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double a = cuts[k], b = cuts[k + 1];
    double fa = poly_eval(p, a), fb = poly_eval(p, b);
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if ((fa < 0.0) == (fb < 0.0) || fb == 0.0) continue;
    for (int it = 0; it < 200 && a < b; ++it) {
      const double m = a + (b - a) / 2;
      if (m <= a || m >= b) break;
      const double fm = poly_eval(p, m);
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    roots.push_back(b);
  }
  if (poly_eval(p, hi) == 0.0) roots.push_back(hi);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace detail

/// Candidate points in `domain` (t > 0) where a polynomial body may reach
/// zero or dip below it: its real roots and critical points.
inline std::vector<double> polynomial_zero_candidates(const Polynomial& p, const Interval& domain) {
  double lo = std::max(domain.lo, 0.0);
  double hi = domain.hi;
  if (hi == kInf) {
    // Cauchy bound on the roots of p and p'
    double bound = 1.0;
    const double lead = p.back();
    if (lead != 0.0)
      for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, 1.0 + std::abs(p[i] / lead));
    hi = std::max(lo, 0.0) + bound + 1.0;
  }
  std::vector<double> out = detail::real_roots(p, lo, hi);
  for (double c : detail::real_roots(poly_derivative(p), lo, hi)) out.push_back(c);
  std::erase_if(out, [&](double c) { return !(c > 0.0) || !domain.contains(c); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ultra::analysis
