#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "uhp/expr.hpp"
#include "uhp/parse.hpp"

using namespace uhp;

namespace {

cplx cdiff(const Expr& e, cplx w, double h) {
  return (eval(e, w + h) - eval(e, w - h)) / (2.0 * h);
}

// Random expressions analytic on a band of the upper half-plane: shifts go
// upward, scales are positive reals, powers act on arguments with Im >= 1.
Expr random_expr(Rng& rng, int depth) {
  const double pick = rng.uniform01();
  if (depth <= 0 || pick < 0.15) {
    if (rng.uniform01() < 0.5) return variable();
    return constant(rng.complex_in_box(-2.0, 2.0, -2.0, 2.0));
  }
  if (pick < 0.35)
    return sum({random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
  if (pick < 0.55)
    return product({random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
  if (pick < 0.70) {
    const double nu_choice = rng.uniform01();
    cplx nu;
    if (nu_choice < 0.5)
      nu = cplx{std::floor(rng.uniform(-3.0, 4.0))};
    else
      nu = rng.complex_in_box(-1.5, 1.5, -0.5, 0.5);
    return power(shift_arg(cplx{0.0, rng.uniform(1.0, 2.0)}, variable()), nu);
  }
  if (pick < 0.80)
    return shift_arg(cplx{rng.uniform(-1.0, 1.0), rng.uniform(0.0, 1.0)},
                     random_expr(rng, depth - 1));
  if (pick < 0.90)
    return scale_arg(cplx{rng.uniform(0.5, 2.0)}, random_expr(rng, depth - 1));
  return mobius_comp(cayley_inverse_map(), random_expr(rng, depth - 1));
}

}  // namespace

TEST_CASE("eval of basic nodes") {
  CHECK(eval(variable(), cplx{2.0, 3.0}) == cplx{2.0, 3.0});
  CHECK(eval(constant(cplx{1.5, -2.0}), cplx{9.0, 9.0}) == cplx{1.5, -2.0});

  // (w + i)^-1 at w = i is (2i)^-1 = -i/2
  const Expr f = power(shift_arg(imag_unit, variable()), cplx{-1.0});
  CHECK(std::abs(eval(f, imag_unit) - cplx{0.0, -0.5}) < 1e-15);

  // w^{i} at w = i: e^{i Log i} = e^{-pi/2}
  const Expr g = power(variable(), imag_unit);
  const cplx got = eval(g, imag_unit);
  const cplx want = oracle::pow_principal_ld(imag_unit, imag_unit);
  CHECK(std::abs(got - want) < 1e-14);
  CHECK(got.real() == doctest::Approx(0.20787957635076193).epsilon(1e-12));
}

TEST_CASE("eval is deterministic") {
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const Expr e = random_expr(rng, 3);
    const cplx w = rng.complex_in_box(-2.0, 2.0, 0.3, 3.0);
    const cplx a = eval(e, w);
    const cplx b = eval(e, w);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
  }
}

TEST_CASE("pow_branch values and errors") {
  for (cplx nu : {cplx{2.5, 0.0}, cplx{-1.0, 0.0}, cplx{0.0, 1.0}, cplx{3.0, -2.0}})
    CHECK(std::abs(pow_branch(cplx{1.0}, nu, BranchSpec::principal()) - 1.0) < 1e-15);

  CHECK(pow_branch(imag_unit, cplx{-2.0}, BranchSpec::principal()) == cplx{-1.0, 0.0});

  const cplx s = pow_branch(cplx{-1.0, 0.01}, cplx{0.5}, BranchSpec::principal());
  CHECK(std::abs(s - oracle::pow_principal_ld(cplx{-1.0, 0.01}, cplx{0.5})) < 1e-14);
  CHECK(s.real() == doctest::Approx(0.005).epsilon(2e-3));
  CHECK(s.imag() == doctest::Approx(1.0).epsilon(1e-4));

  CHECK_THROWS_AS(pow_branch(cplx{-2.0, 0.0}, cplx{0.5}, BranchSpec::principal()),
                  BranchCutHit);
  CHECK_THROWS_AS(pow_branch(cplx{0.0, 0.0}, cplx{-1.5}, BranchSpec::principal()),
                  PoleHit);
  // Integer exponents never see the cut.
  CHECK(std::abs(pow_branch(cplx{-2.0, 0.0}, cplx{2.0}, BranchSpec::principal()) -
                 4.0) < 1e-15);
}

TEST_CASE("pow_branch with integer exponent matches repeated multiplication") {
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const cplx z = rng.complex_in_box(-2.0, 2.0, -2.0, 2.0);
    if (std::abs(z) < 0.1) continue;
    const int n = static_cast<int>(std::floor(rng.uniform(-6.0, 7.0)));
    cplx manual{1.0};
    for (int j = 0; j < std::abs(n); ++j) manual *= z;
    if (n < 0) manual = 1.0 / manual;
    // Any cut direction gives the same integer power.
    BranchSpec rotated{wrap_angle(rng.uniform(-3.0, 3.0)), cplx{0.0}};
    const cplx a = pow_branch(z, cplx{double(n)}, BranchSpec::principal());
    const cplx b = pow_branch(z, cplx{double(n)}, rotated);
    CHECK(std::abs(a - manual) <= 1e-12 * std::abs(manual));
    CHECK(std::abs(b - manual) <= 1e-12 * std::abs(manual));
  }
}

TEST_CASE("evaluation at a Moebius pole errors") {
  // psi has its pole at z = 1
  const Expr via_psi = mobius_comp(cayley_map(), variable());
  CHECK_THROWS_AS(eval(via_psi, cplx{1.0, 0.0}), PoleHit);
}

TEST_CASE("derive basics") {
  CHECK(eval(derive(constant(cplx{3.0, 1.0})), cplx{0.5, 0.5}) == cplx{0.0});

  // d/dw (w+i)^-1 = -(w+i)^-2
  const Expr f = power(shift_arg(imag_unit, variable()), cplx{-1.0});
  const Expr df = derive(f);
  for (cplx w : {cplx{0.3, 0.7}, cplx{-1.0, 2.0}, cplx{2.0, 0.1}}) {
    const cplx want = -pow_branch(w + imag_unit, cplx{-2.0}, BranchSpec::principal());
    CHECK(std::abs(eval(df, w) - want) < 1e-13);
  }
}

TEST_CASE("derive of the scaling disk automorphism power") {
  // h_a(z) = (z - a)/(1 - conj(a) z), a = (1-e^t)/(1+e^t);
  // (h_a^n)' = n h_a^{n-1} (1 - a conj(a)) / (1 - conj(a) z)^2.
  const double t = 0.8;
  const cplx a = scaling_disk_parameter(t);
  const MobiusMap h = scaling_disk_automorphism(t);
  for (int n : {1, 2, 5}) {
    const Expr hn = power(mobius_comp(h, variable()), cplx{double(n)});
    const Expr dhn = derive(hn);
    for (cplx z : {cplx{0.2, 0.1}, cplx{-0.5, 0.4}, cplx{0.0, -0.6}}) {
      const cplx hz = h(z);
      const cplx den = 1.0 - std::conj(a) * z;
      const cplx want = double(n) *
                        pow_branch(hz, cplx{double(n - 1)}, BranchSpec::principal()) *
                        (1.0 - a * std::conj(a)) / (den * den);
      CHECK(std::abs(eval(dhn, z) - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("derivative matches central differences on random expressions") {
  Rng rng(42);
  int tested = 0;
  while (tested < 200) {
    const Expr e = random_expr(rng, 3);
    const Expr de = derive(e);
    const cplx w = rng.complex_in_box(-2.0, 2.0, 0.4, 3.0);
    const double h = 1e-5 * (1.0 + std::abs(w));
    cplx sym, fd;
    try {
      sym = eval(de, w);
      fd = cdiff(e, w, h);
    } catch (const NumericError&) {
      continue;  // rare pole/cut draw; resample
    }
    if (!is_finite(sym) || !is_finite(fd)) continue;
    if (std::abs(sym) > 1e6) continue;  // FD step no longer resolves these
    ++tested;
    CHECK(std::abs(sym - fd) <= 1e-6 * (1.0 + std::abs(sym)));
  }
}

TEST_CASE("reflect is the half-plane reflection conjugation") {
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const Expr e = random_expr(rng, 3);
    const Expr er = reflect(e);
    const cplx w = rng.complex_in_box(-2.0, 2.0, 0.4, 3.0);
    cplx lhs, rhs;
    try {
      lhs = eval(er, w);
      rhs = std::conj(eval(e, -std::conj(w)));
    } catch (const NumericError&) {
      continue;
    }
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("expression grammar parses and round-trips") {
  const Expr p = parse_expr("pow(shift(i, var), -1)");
  CHECK(std::abs(eval(p, imag_unit) - cplx{0.0, -0.5}) < 1e-15);

  const Expr q = parse_expr("prod(cayley_inv, pow(shift(2i, var), -0.5))");
  CHECK(is_finite(eval(q, cplx{1.0, 1.0})));

  const Expr c = parse_expr("sum(const(1+2i), scale(2, var), -0.5)");
  // 1+2i + 2w - 0.5 at w = 1: 2.5 + 2i
  CHECK(std::abs(eval(c, cplx{1.0}) - cplx{2.5, 2.0}) < 1e-15);

  const Expr cut = parse_expr("pow(var, -1, cut(-1.5707963267948966, i))");
  CHECK(cut->branch.branch_point == imag_unit);

  Rng rng(99);
  for (int k = 0; k < 40; ++k) {
    const Expr e = random_expr(rng, 3);
    const Expr back = parse_expr(to_string(e));
    const cplx w = rng.complex_in_box(-1.5, 1.5, 0.5, 2.5);
    cplx a, b;
    try {
      a = eval(e, w);
      b = eval(back, w);
    } catch (const NumericError&) {
      continue;
    }
    CHECK(std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a)));
  }

  CHECK_THROWS_AS(parse_expr("pow(var"), ParseError);
  CHECK_THROWS_AS(parse_expr("frob(var)"), ParseError);
  CHECK_THROWS_AS(parse_expr("var extra"), ParseError);
}
