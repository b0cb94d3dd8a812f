#pragma once

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "uhp/core.hpp"
#include "uhp/errors.hpp"
#include "uhp/mobius.hpp"

namespace uhp {

// Branch data for a complex power: the plane is cut along the ray
// arg(z - branch_point) = theta_cut, and the continuous argument is taken
// in (theta_cut - 2*pi, theta_cut).  theta_cut = pi, branch_point = 0 is
// the principal branch.
struct BranchSpec {
  double theta_cut = pi;
  cplx branch_point{0.0, 0.0};

  static BranchSpec principal() { return BranchSpec{}; }
  static BranchSpec principal_at(cplx b) { return BranchSpec{pi, b}; }
};

namespace detail {

inline bool integer_exponent(cplx nu, long& n) {
  if (nu.imag() != 0.0) return false;
  const double r = nu.real();
  if (r != std::floor(r) || std::abs(r) > 64.0) return false;
  n = static_cast<long>(r);
  return true;
}

inline cplx int_pow(cplx z, long n) {
  if (n == 0) return cplx{1.0};
  const bool neg = n < 0;
  unsigned long k = neg ? static_cast<unsigned long>(-n)
                        : static_cast<unsigned long>(n);
  cplx acc{1.0};
  cplx base = z;
  while (k) {
    if (k & 1ul) acc *= base;
    base *= base;
    k >>= 1;
  }
  return neg ? cplx{1.0} / acc : acc;
}

}  // namespace detail

// exp(nu * (ln|z - b| + i arg_theta(z - b))) with arg_theta continuous off
// the cut ray.  Integer exponents never touch the cut: they reduce to
// repeated multiplication, which is branch-independent.
inline cplx pow_branch(cplx base, cplx nu, const BranchSpec& branch) {
  const cplx z = base - branch.branch_point;
  long n = 0;
  if (detail::integer_exponent(nu, n)) {
    if (z == 0.0 && n < 0) throw PoleHit("pow_branch", base);
    return detail::int_pow(z, n);
  }
  if (z == 0.0) {
    if (nu == 0.0) return cplx{1.0};
    if (nu.real() > 0.0) return cplx{0.0};
    throw PoleHit("pow_branch", base);
  }
  double a = std::arg(z);  // in (-pi, pi]
  // Shift into (theta_cut - 2*pi, theta_cut]; the endpoint is the cut.
  if (a > branch.theta_cut) a -= 2.0 * pi;
  if (a == branch.theta_cut || a == branch.theta_cut - 2.0 * pi)
    throw BranchCutHit("pow_branch", base);
  const cplx log_z{std::log(std::abs(z)), a};
  return std::exp(nu * log_z);
}

enum class ExprKind {
  constant,
  variable,
  sum,
  product,
  mobius_comp,
  power,
  scale_arg,
  shift_arg,
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

// Immutable expression tree for analytic functions: constants, the
// identity, sums, products, Moebius composites, branch-tagged complex
// powers, and argument scaling/shifts.  Values are shared; evaluation is
// pure, so trees are safe to use from many threads.
struct ExprNode {
  ExprKind kind;
  cplx value{};       // constant value / scale factor / shift / exponent
  BranchSpec branch;  // power nodes only
  MobiusMap map;      // mobius_comp nodes only
  std::vector<Expr> children;
};

inline Expr constant(cplx c) {
  return std::make_shared<ExprNode>(ExprNode{ExprKind::constant, c, {}, {}, {}});
}

inline Expr variable() {
  return std::make_shared<ExprNode>(ExprNode{ExprKind::variable, {}, {}, {}, {}});
}

inline Expr sum(std::vector<Expr> terms) {
  return std::make_shared<ExprNode>(
      ExprNode{ExprKind::sum, {}, {}, {}, std::move(terms)});
}

inline Expr product(std::vector<Expr> factors) {
  return std::make_shared<ExprNode>(
      ExprNode{ExprKind::product, {}, {}, {}, std::move(factors)});
}

inline Expr mobius_comp(const MobiusMap& m, Expr child) {
  return std::make_shared<ExprNode>(
      ExprNode{ExprKind::mobius_comp, {}, {}, m, {std::move(child)}});
}

inline Expr power(Expr child, cplx nu,
                  const BranchSpec& branch = BranchSpec::principal()) {
  return std::make_shared<ExprNode>(
      ExprNode{ExprKind::power, nu, branch, {}, {std::move(child)}});
}

inline Expr scale_arg(cplx s, Expr child) {
  return std::make_shared<ExprNode>(
      ExprNode{ExprKind::scale_arg, s, {}, {}, {std::move(child)}});
}

inline Expr shift_arg(cplx c, Expr child) {
  return std::make_shared<ExprNode>(
      ExprNode{ExprKind::shift_arg, c, {}, {}, {std::move(child)}});
}

inline Expr operator+(Expr lhs, Expr rhs) {
  return sum({std::move(lhs), std::move(rhs)});
}

inline Expr operator*(Expr lhs, Expr rhs) {
  return product({std::move(lhs), std::move(rhs)});
}

inline Expr operator*(cplx c, Expr rhs) {
  return product({constant(c), std::move(rhs)});
}

inline Expr operator-(Expr lhs, Expr rhs) {
  return sum({std::move(lhs), cplx{-1.0} * std::move(rhs)});
}

inline cplx eval(const Expr& e, cplx w) {
  switch (e->kind) {
    case ExprKind::constant:
      return e->value;
    case ExprKind::variable:
      return w;
    case ExprKind::sum: {
      cplx acc{0.0};
      for (const auto& t : e->children) acc += eval(t, w);
      return acc;
    }
    case ExprKind::product: {
      cplx acc{1.0};
      for (const auto& f : e->children) acc *= eval(f, w);
      return acc;
    }
    case ExprKind::mobius_comp:
      return eval(e->children[0], e->map(w));
    case ExprKind::power:
      return pow_branch(eval(e->children[0], w), e->value, e->branch);
    case ExprKind::scale_arg:
      return eval(e->children[0], e->value * w);
    case ExprKind::shift_arg:
      return eval(e->children[0], w + e->value);
  }
  throw NumericError("eval: corrupt expression node");
}

namespace detail {

inline bool is_zero_const(const Expr& e) {
  return e->kind == ExprKind::constant && e->value == 0.0;
}

inline bool is_one_const(const Expr& e) {
  return e->kind == ExprKind::constant && e->value == cplx{1.0};
}

// Sum/product builders used while assembling derivatives; they drop exact
// zero terms and unit factors so repeated differentiation stays compact.
// User-built trees are never rewritten.
inline Expr dsum(std::vector<Expr> terms) {
  std::vector<Expr> kept;
  for (auto& t : terms)
    if (!is_zero_const(t)) kept.push_back(std::move(t));
  if (kept.empty()) return constant(0.0);
  if (kept.size() == 1) return kept[0];
  return sum(std::move(kept));
}

inline Expr dprod(std::vector<Expr> factors) {
  std::vector<Expr> kept;
  for (auto& f : factors) {
    if (is_zero_const(f)) return constant(0.0);
    if (!is_one_const(f)) kept.push_back(std::move(f));
  }
  if (kept.empty()) return constant(1.0);
  if (kept.size() == 1) return kept[0];
  return product(std::move(kept));
}

// (ad - bc) / (cz + d)^2 as an expression.
inline Expr mobius_derivative_expr(const MobiusMap& m) {
  if (m.c == 0.0) return constant(m.det() / (m.d * m.d));
  const Expr den = sum({product({constant(m.c), variable()}), constant(m.d)});
  return dprod({constant(m.det()), power(den, cplx{-2.0})});
}

}  // namespace detail

// Exact symbolic derivative; total on well-formed trees and closed over
// the node kinds above.
inline Expr derive(const Expr& e) {
  using detail::dprod;
  using detail::dsum;
  switch (e->kind) {
    case ExprKind::constant:
      return constant(0.0);
    case ExprKind::variable:
      return constant(1.0);
    case ExprKind::sum: {
      std::vector<Expr> terms;
      terms.reserve(e->children.size());
      for (const auto& t : e->children) terms.push_back(derive(t));
      return dsum(std::move(terms));
    }
    case ExprKind::product: {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        std::vector<Expr> factors = e->children;
        factors[i] = derive(e->children[i]);
        terms.push_back(dprod(std::move(factors)));
      }
      return dsum(std::move(terms));
    }
    case ExprKind::mobius_comp:
      return dprod({mobius_comp(e->map, derive(e->children[0])),
                    detail::mobius_derivative_expr(e->map)});
    case ExprKind::power: {
      if (e->value == 0.0) return constant(0.0);
      return dprod({constant(e->value),
                    power(e->children[0], e->value - 1.0, e->branch),
                    derive(e->children[0])});
    }
    case ExprKind::scale_arg:
      return dprod({constant(e->value),
                    scale_arg(e->value, derive(e->children[0]))});
    case ExprKind::shift_arg:
      return shift_arg(e->value, derive(e->children[0]));
  }
  throw NumericError("derive: corrupt expression node");
}

// reflect(f)(w) = conj(f(-conj(w))): the anti-holomorphic reflection
// through the imaginary axis, again a holomorphic expression.  It
// preserves the half-plane and is used by the resolvent symmetry checks.
inline Expr reflect(const Expr& e) {
  switch (e->kind) {
    case ExprKind::constant:
      return constant(std::conj(e->value));
    case ExprKind::variable:
      return product({constant(-1.0), variable()});
    case ExprKind::sum: {
      std::vector<Expr> terms;
      terms.reserve(e->children.size());
      for (const auto& t : e->children) terms.push_back(reflect(t));
      return sum(std::move(terms));
    }
    case ExprKind::product: {
      std::vector<Expr> factors;
      factors.reserve(e->children.size());
      for (const auto& f : e->children) factors.push_back(reflect(f));
      return product(std::move(factors));
    }
    case ExprKind::mobius_comp: {
      const MobiusMap& m = e->map;
      const MobiusMap mr(std::conj(m.a), -std::conj(m.b), -std::conj(m.c),
                         std::conj(m.d));
      return mobius_comp(mr, reflect(e->children[0]));
    }
    case ExprKind::power: {
      BranchSpec br;
      br.theta_cut = wrap_angle(pi - e->branch.theta_cut);
      br.branch_point = -std::conj(e->branch.branch_point);
      return power(reflect(e->children[0]), std::conj(e->value), br);
    }
    case ExprKind::scale_arg:
      return scale_arg(std::conj(e->value), reflect(e->children[0]));
    case ExprKind::shift_arg:
      return shift_arg(-std::conj(e->value), reflect(e->children[0]));
  }
  throw NumericError("reflect: corrupt expression node");
}

}  // namespace uhp
