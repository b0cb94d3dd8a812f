#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "uhp/battery.hpp"
#include "uhp/groups.hpp"
#include "uhp/spaces.hpp"

using namespace uhp;

namespace {
Expr shifted_inverse_power(double nu) {
  const cplx at_i = pow_branch(2.0 * imag_unit, cplx{nu}, BranchSpec::principal());
  return sum({power(shift_arg(imag_unit, variable()), cplx{nu}), constant(-at_i)});
}
}  // namespace

TEST_CASE("l1 norm values") {
  QuadSpec q;
  const MeasureSpec m(0.0, Domain::halfplane);
  CHECK(l1_norm(constant(cplx{0.0}), m, q).value < 1e-12);

  const Expr f = power(shift_arg(imag_unit, variable()), cplx{-4.0});
  CHECK(std::abs(l1_norm(f, m, q).value - 0.25) < 1e-6);
}

TEST_CASE("l1 transport factor at alpha = 1") {
  QuadSpec q;
  const double alpha = 1.0;
  const Expr f = power(shift_arg(imag_unit, variable()), cplx{-4.0});
  const double direct = l1_norm(f, MeasureSpec(alpha, Domain::halfplane), q).value;
  const Expr pulled = weighted_composition(cayley_map(), alpha + 2.0, f);
  const double transported =
      std::pow(2.0, -alpha) * l1_norm_disk(pulled, alpha, q).value;
  CHECK(std::abs(direct - transported) <= 1e-6 * (1.0 + direct));
}

TEST_CASE("bloch seminorm of (w+i)^-1 is 1/4") {
  QuadSpec q;
  CHECK(bloch_seminorm(constant(cplx{2.0, 1.0}), Domain::halfplane, q).value <
        1e-14);

  const Expr f = power(shift_arg(imag_unit, variable()), cplx{-1.0});
  const NormReport rep = bloch_seminorm(f, Domain::halfplane, q);
  CHECK(rep.method == "sup-search");
  CHECK(std::abs(rep.value - 0.25) < 1e-9);

  // dense 2-d oracle over y/(x^2 + (y+1)^2)
  const double dense = oracle::grid_max(
      [](double x, double y) { return y / (x * x + (y + 1.0) * (y + 1.0)); }, -3.0,
      3.0, 1e-4, 6.0);
  CHECK(std::abs(rep.value - dense) < 1e-3);  // oracle grid is coarse
  CHECK(rep.value >= dense - 1e-12);
}

TEST_CASE("bloch transport halves the seminorm") {
  QuadSpec q;
  for (const auto& item : default_predual_battery()) {
    const double on_u = bloch_seminorm(item.f, Domain::halfplane, q).value;
    const double on_d =
        bloch_seminorm(mobius_comp(cayley_map(), item.f), Domain::disk, q).value;
    CHECK(std::abs(on_u - 0.5 * on_d) <= 1e-6 * (1.0 + on_u));
  }
}

TEST_CASE("seminorm homogeneity and triangle inequality") {
  QuadSpec q;
  Rng rng(31);
  const auto battery = default_predual_battery();
  for (int k = 0; k < 6; ++k) {
    const Expr& f = battery[k % battery.size()].f;
    const Expr& g = battery[(k + 3) % battery.size()].f;
    const cplx a = rng.complex_in_box(-2.0, 2.0, -2.0, 2.0);
    const double nf = bloch_seminorm(f, Domain::halfplane, q).value;
    const double ng = bloch_seminorm(g, Domain::halfplane, q).value;
    const double naf =
        bloch_seminorm(product({constant(a), f}), Domain::halfplane, q).value;
    CHECK(std::abs(naf - std::abs(a) * nf) <= 1e-8 * (1.0 + std::abs(a) * nf));
    const double nsum = bloch_seminorm(sum({f, g}), Domain::halfplane, q).value;
    CHECK(nsum <= nf + ng + 1e-8 * (1.0 + nf + ng));
  }
}

TEST_CASE("unbounded weighted derivative diverges") {
  QuadSpec q;
  // f(w) = w: Im(w) |f'| = Im(w) is unbounded on U.
  CHECK_THROWS_AS(bloch_seminorm(variable(), Domain::halfplane, q), SupDiverging);
  const MembershipVerdict v = membership(variable(), q);
  CHECK_FALSE(v.bloch_finite);
  CHECK_FALSE(v.in_predual);
  // The sampled boundary rings stay bounded for f(w) = w (the weighted
  // derivative blows up toward infinity, not along the finite boundary),
  // so the decay table itself still exists.
  const auto profile = little_bloch_profile(variable(), q);
  CHECK(!profile.empty());
}

TEST_CASE("little Bloch profiles decay for the battery") {
  QuadSpec q;
  const Expr f = power(shift_arg(imag_unit, variable()), cplx{-1.0});
  const auto profile = little_bloch_profile(f, q);
  REQUIRE(profile.size() >= 3);
  CHECK(profile.back().second < profile.front().second);
  const MembershipVerdict v = membership(f, q);
  CHECK(v.bloch_finite);
  CHECK(v.little_bloch);
  CHECK_FALSE(v.vanishes_at_i);  // (2i)^-1 != 0

  // psi^{-1} vanishes at i and is little Bloch: in the predual.
  const MembershipVerdict vk =
      membership(mobius_comp(cayley_inverse_map(), variable()), q);
  CHECK(vk.in_predual);
  CHECK(vk.value_at_i < 1e-14);
}

TEST_CASE("membership of power probes") {
  QuadSpec q;
  for (double nu : {-0.5, -1.0, -2.0}) {
    const Expr f = power(shift_arg(imag_unit, variable()), cplx{nu});
    const MembershipVerdict v = membership(f, q);
    CHECK(v.bloch_finite);
    CHECK(v.little_bloch);
    const MembershipVerdict vs = membership(shifted_inverse_power(nu), q);
    CHECK(vs.in_predual);
  }
  for (double nu : {0.5, 1.0}) {
    const Expr f = power(shift_arg(imag_unit, variable()), cplx{nu});
    const MembershipVerdict v = membership(f, q);
    CHECK_FALSE(v.bloch_finite);
  }
  // c w^{i}: bounded seminorm but |g(i)| = |c| e^{-pi/2} > 0.
  for (cplx c : {cplx{1.0, 0.0}, cplx{0.0, 2.0}}) {
    const Expr g = product({constant(c), power(variable(), imag_unit)});
    const MembershipVerdict v = membership(g, q);
    CHECK_FALSE(v.in_predual);
    CHECK(v.value_at_i ==
          doctest::Approx(std::abs(c) * std::exp(-pi / 2.0)).epsilon(1e-9));
  }
}

TEST_CASE("growth ratio") {
  QuadSpec q;
  CHECK_THROWS_AS(growth_ratio(constant(cplx{0.0}), 0.0, q), NonPositiveNorm);

  const Expr f = power(shift_arg(imag_unit, variable()), cplx{-4.0});
  const double k1 = growth_ratio(f, 0.0, q);
  CHECK(k1 > 0.0);
  CHECK(k1 < 10.0);
  QuadSpec fine = q;
  fine.radial_nodes *= 2;
  fine.angular_nodes *= 2;
  const double k2 = growth_ratio(f, 0.0, fine, 10);
  CHECK(std::abs(k1 - k2) <= 0.01 * k1);

  const double k_scaled = growth_ratio(product({constant(cplx{10.0}), f}), 0.0, q,
                                       8, RingPolicy::full);
  const double k_base = growth_ratio(f, 0.0, q, 8, RingPolicy::full);
  CHECK(std::abs(k_scaled - k_base) <= 1e-10 * k_base);
}

TEST_CASE("pairing values and sesquilinearity") {
  QuadSpec q;
  const Expr zero = constant(cplx{0.0});
  const Expr f = power(shift_arg(imag_unit, variable()), cplx{-4.0});
  const Expr g = mobius_comp(cayley_inverse_map(), variable());
  CHECK(std::abs(pairing(zero, f, 0.0, q)) < 1e-14);

  const cplx v = pairing(g, f, 0.0, q);
  // independent dense log-polar oracle
  const cplx o = oracle::halfplane_weighted(
      [&](cplx w) { return eval(g, w) * std::conj(eval(f, w)); }, 0.0);
  CHECK(std::abs(v - o) < 1e-6);

  const cplx a{1.3, -0.4};
  const cplx v_full = pairing(g, f, 0.0, q, RingPolicy::full);
  const cplx va = pairing(g, product({constant(a), f}), 0.0, q, RingPolicy::full);
  CHECK(std::abs(va - std::conj(a) * v_full) <= 1e-10 * (1.0 + std::abs(v_full)));
}

TEST_CASE("pairing is bounded by the product of norms over the battery") {
  QuadSpec q;
  const auto gs = default_predual_battery();
  const auto fs = default_bergman_battery();
  double worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const cplx v = pairing(gs[k].f, fs[k].f, 0.0, q);
    const double gn = bloch_seminorm(gs[k].f, Domain::halfplane, q).value;
    const double fn = l1_norm(fs[k].f, MeasureSpec(0.0, Domain::halfplane), q).value;
    worst = std::max(worst, std::abs(v) / (gn * fn));
  }
  CHECK(worst > 0.0);
  CHECK(worst < 100.0);  // empirical constant stays moderate
}

TEST_CASE("sector-restricted seminorm handles the cut power") {
  QuadSpec q;
  // (w - i)^-1 with the cut pointing down from i: finite sup on the sector
  // Re(w) > 0 even though the function is singular at i.
  const Expr f = power(variable(), cplx{-1.0}, BranchSpec{-pi / 2.0, imag_unit});
  const NormReport rep = bloch_seminorm_sector(f, q, {0.05, pi / 2.0});
  CHECK(rep.value > 0.0);
  CHECK(is_finite(cplx{rep.value}));
}
