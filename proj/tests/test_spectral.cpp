#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uhp/battery.hpp"
#include "uhp/spectral.hpp"

using namespace uhp;

namespace {
const std::vector<cplx> kProbes = {{0.0, 2.0}, {0.0, 2.2}, {0.0, 1.8},
                                   {0.3, 2.0}, {-0.3, 2.0}};
}

TEST_CASE("closed-form resolvent values") {
  QuadSpec q;
  const ResolventQuery zero{cplx{2.0}, constant(cplx{0.0}), kProbes, q};
  for (cplx v : resolvent_closed(zero)) CHECK(std::abs(v) < 1e-12);

  // lambda = 2, h = z^-1 at omega = 2i: -i/6 by the antiderivative
  const ResolventQuery inv{cplx{2.0}, power(variable(), cplx{-1.0}),
                           {cplx{0.0, 2.0}}, q};
  const auto vals = resolvent_closed(inv);
  CHECK(std::abs(vals[0] - cplx{0.0, -1.0 / 6.0}) < 1e-10);

  ResolventQuery bad{cplx{0.0, 1.0}, power(variable(), cplx{-1.0}), kProbes, q};
  CHECK_THROWS_AS(bad.validate(), InvalidSpec);
  ResolventQuery outside{cplx{1.0}, power(variable(), cplx{-1.0}),
                         {cplx{0.0, -1.0}}, q};
  CHECK_THROWS_AS(outside.validate(), InvalidSpec);
}

TEST_CASE("resolvent agrees with Laplace quadrature across cases") {
  QuadSpec q;
  const Expr h = power(shift_arg(imag_unit, variable()), cplx{-2.0});
  for (cplx lam : {cplx{1.0, 1.0}, cplx{2.0, 0.0}, cplx{-2.0, 0.0}}) {
    for (cplx w : kProbes) {
      const cplx closed =
          scaling_resolvent([&](cplx z) { return eval(h, z); }, w, lam, q);
      cplx laplace;
      if (lam.real() > 0.0)
        laplace = laplace_resolvent_quad(
            [&](double t) { return eval(h, std::exp(t) * w); }, lam, q);
      else
        laplace = laplace_resolvent_quad(
            [&](double t) { return eval(h, std::exp(-t) * w); }, lam, q);
      CHECK(std::abs(closed - laplace) < 1e-8);
    }
  }
}

TEST_CASE("cross-check at lambda = 1+i on the probe triple") {
  QuadSpec q;
  const Expr h = power(shift_arg(imag_unit, variable()), cplx{-2.0});
  const cplx lam{1.0, 1.0};
  for (cplx w : {cplx{0.0, 1.0}, cplx{1.0, 1.0}, cplx{0.0, 2.0}}) {
    const cplx closed =
        scaling_resolvent([&](cplx z) { return eval(h, z); }, w, lam, q);
    const cplx laplace = laplace_resolvent_quad(
        [&](double t) { return eval(h, std::exp(t) * w); }, lam, q);
    CHECK(std::abs(closed - laplace) < 1e-8);
  }
}

TEST_CASE("resolvent identity residual via stencil derivative") {
  QuadSpec q;
  const Expr hs[] = {power(shift_arg(imag_unit, variable()), cplx{-2.0}),
                     power(shift_arg(imag_unit, variable()), cplx{-1.0})};
  for (const Expr& h : hs) {
    for (cplx lam : {cplx{2.0, 0.0}, cplx{1.0, 1.0}, cplx{-2.0, 0.0}}) {
      ResolventQuery query{lam, h, kProbes, q};
      CHECK(resolvent_identity_residual(query) < 1e-6);
    }
  }
  ResolventQuery zero{cplx{2.0}, constant(cplx{0.0}), kProbes, q};
  CHECK(resolvent_identity_residual(zero) < 1e-12);
}

TEST_CASE("spectral circle deviation") {
  CHECK(spectral_circle_check(cplx{1.0}, {0.0}) < 1e-15);
  CHECK(spectral_circle_check(cplx{1.0}, {1.0}) < 1e-15);

  Rng rng(61);
  std::vector<double> rs(1000);
  for (double& r : rs) r = rng.uniform(-50.0, 50.0);
  for (cplx lam : {cplx{2.0, 3.0}, cplx{-0.5, 1.0}, cplx{1.0, 0.0}})
    CHECK(spectral_circle_check(lam, rs) <= 1e-12);

  CHECK_THROWS_AS(spectral_circle_check(cplx{0.0, 1.0}, {0.0}), InvalidSpec);
}

TEST_CASE("resolvent norm bound 1/|Re lambda|") {
  QuadSpec q;
  std::vector<Expr> battery;
  const auto items = default_predual_battery();
  for (std::size_t k = 0; k < 4; ++k) battery.push_back(items[k].f);

  for (cplx lam : {cplx{2.0, 0.0}, cplx{-1.0, 0.0}}) {
    std::vector<double> ratios;
    const SpectralReport rep = resolvent_norm_probe(lam, battery, q, &ratios);
    CHECK(rep.norm_bound == doctest::Approx(1.0 / std::abs(lam.real())));
    REQUIRE(ratios.size() == battery.size());
    for (double r : ratios) CHECK(r <= rep.norm_bound + 1e-4);
    CHECK(rep.max_observed_ratio > 0.0);
  }

  std::vector<Expr> zero_battery = {constant(cplx{0.0})};
  CHECK_THROWS_AS(resolvent_norm_probe(cplx{2.0}, zero_battery, q), NonPositiveNorm);
}

TEST_CASE("first resolvent identity") {
  QuadSpec q;
  const Expr h = power(shift_arg(imag_unit, variable()), cplx{-2.0});
  auto h_eval = [&](cplx z) { return eval(h, z); };
  const cplx l1{1.0}, l2{2.0};
  for (cplx w : {cplx{0.0, 1.0}, cplx{1.0, 1.0}, cplx{0.0, 2.0}}) {
    const cplx r1 = scaling_resolvent(h_eval, w, l1, q);
    const cplx r2 = scaling_resolvent(h_eval, w, l2, q);
    const cplx nested = scaling_resolvent(
        [&](cplx z) { return scaling_resolvent(h_eval, z, l2, q); }, w, l1, q);
    CHECK(std::abs(r1 - r2 - (l2 - l1) * nested) < 1e-6);
  }
}

TEST_CASE("resolvent reflection symmetry") {
  QuadSpec q;
  const Expr h = power(shift_arg(imag_unit, variable()), cplx{-2.0});
  const Expr hr = reflect(h);
  const cplx lam{1.0, 0.7};
  for (cplx w : {cplx{0.0, 1.0}, cplx{0.5, 1.2}}) {
    const cplx lhs = scaling_resolvent([&](cplx z) { return eval(hr, z); }, w,
                                       std::conj(lam), q);
    const cplx rhs = std::conj(scaling_resolvent(
        [&](cplx z) { return eval(h, z); }, -std::conj(w), lam, q));
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("translation resolvent plumbing") {
  QuadSpec q;
  const Expr h = power(shift_arg(imag_unit, variable()), cplx{-1.0});
  // Re > 0 and Re < 0 both reduce to decaying Laplace integrals.
  const cplx a = translation_resolvent(h, imag_unit, cplx{1.0}, q);
  CHECK(is_finite(a));
  const cplx b = translation_resolvent(h, imag_unit, cplx{-1.0}, q);
  CHECK(is_finite(b));
  // (lambda - Gamma) R h = h with Gamma = -d/dw, checked by stencil
  for (cplx lam : {cplx{1.0}, cplx{-1.0}}) {
    auto rh = [&](cplx w) { return translation_resolvent(h, w, lam, q); };
    const cplx w{0.3, 1.5};
    const cplx d = stencil_derivative(rh, w, 1e-4);
    const cplx residual = lam * rh(w) + d - eval(h, w);
    CHECK(std::abs(residual) < 1e-6);
  }
}

TEST_CASE("eigenfunction candidates are rejected") {
  QuadSpec q;
  // lambda = 0: constant c, fails vanishing at i
  const auto r0 = eigen_candidate_check(cplx{0.0}, cplx{2.0, 1.0}, q);
  CHECK(r0.ode_holds);
  CHECK_FALSE(r0.verdict.in_predual);

  // lambda = i: |g(i)| = e^{-pi/2}
  const auto ri = eigen_candidate_check(imag_unit, cplx{1.0}, q);
  CHECK(ri.ode_holds);
  CHECK(ri.value_at_i == doctest::Approx(std::exp(-pi / 2.0)).epsilon(1e-10));
  CHECK(ri.verdict.value_at_i == doctest::Approx(ri.value_at_i).epsilon(1e-9));
  CHECK_FALSE(ri.verdict.in_predual);

  // lambda = 1: Bloch seminorm diverges
  const auto r1 = eigen_candidate_check(cplx{1.0}, cplx{1.0}, q);
  CHECK(r1.ode_holds);
  CHECK_FALSE(r1.verdict.bloch_finite);
  CHECK_FALSE(r1.verdict.in_predual);

  CHECK_THROWS_AS(eigen_candidate_check(cplx{1.0}, cplx{0.0}, q), InvalidSpec);
}
