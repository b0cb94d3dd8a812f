#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "uhp/core.hpp"
#include "uhp/errors.hpp"
#include "uhp/expr.hpp"
#include "uhp/grid.hpp"
#include "uhp/quadrature.hpp"

namespace uhp {

struct NormReport {
  double value = 0.0;
  std::string method;      // "quadrature" or "sup-search"
  std::string resolution;  // grid description for the record
  double estimated_error = 0.0;
};

struct MembershipVerdict {
  bool bloch_finite = false;
  bool little_bloch = false;
  bool vanishes_at_i = false;
  bool in_predual = false;  // B_inf,o(U, i): all three predicates
  double seminorm = std::numeric_limits<double>::infinity();
  double value_at_i = 0.0;  // |f(i)|
  std::vector<std::pair<double, double>> boundary_profile;  // (delta, ring sup)
};

namespace space_detail {

// Golden-section maximization on [a, b]; returns the best value seen and
// writes the argument back.  The target is assumed unimodal on the bracket
// (brackets come from a dense grid argmax).
inline double golden_max(const std::function<double(double)>& f, double a,
                         double b, double& arg) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::max(f1, f2);
  arg = f1 >= f2 ? x1 : x2;
  for (int iter = 0; iter < 80 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b));
       ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
    if (f1 > best) best = f1, arg = x1;
    if (f2 > best) best = f2, arg = x2;
  }
  return best;
}

struct SupResult {
  double value = 0.0;
  cplx arg{};
  std::size_t samples = 0;
};

// Shell-wise maxima growing toward the sampling frontier mean the sup is
// escaping to the boundary/infinity: report divergence instead of a value.
inline void check_diverging(const std::vector<double>& shell_max, double interior_max) {
  const std::size_t n = shell_max.size();
  if (n < 3) return;
  const double last = shell_max[n - 1];
  if (last <= 4.0 * std::max(interior_max, 1e-300)) return;
  if (shell_max[n - 1] > shell_max[n - 2] && shell_max[n - 2] > shell_max[n - 3])
    throw SupDiverging(last);
}

// Sup of a weighted-derivative magnitude over the disk, grid seeding plus
// alternating golden-section refinement in (r, theta).
inline SupResult sup_over_disk(const std::function<double(cplx)>& h,
                               const DomainGrid& grid) {
  SupResult res;
  auto consider = [&](cplx z) {
    const double v = h(z);
    ++res.samples;
    if (v > res.value) {
      res.value = v;
      res.arg = z;
    }
    return v;
  };
  for (cplx z : grid.points) consider(z);
  const double interior_max = res.value;
  std::vector<double> shell_max;
  for (const auto& ring : grid.rings) {
    double m = 0.0;
    for (cplx z : ring.points) m = std::max(m, consider(z));
    shell_max.push_back(m);
  }
  check_diverging(shell_max, interior_max);

  double r = std::abs(res.arg);
  double theta = std::arg(res.arg);
  for (int round = 0; round < 8; ++round) {
    const double before = res.value;
    const double dr = std::min(0.08, 0.9 * (1.0 - r));
    double best_r = r;
    golden_max([&](double rr) { return consider(std::polar(rr, theta)); },
               std::max(0.0, r - dr), std::min(r + dr, 1.0 - 1e-12), best_r);
    r = best_r;
    const double dtheta = 0.3 / (1 << round);
    double best_t = theta;
    golden_max([&](double tt) { return consider(std::polar(r, tt)); },
               theta - dtheta, theta + dtheta, best_t);
    theta = best_t;
    if (res.value - before <= 1e-12 * (1.0 + res.value)) break;
  }
  return res;
}

// Same on the half-plane, searching in log-polar coordinates; phi_range
// restricts the angular sector (used by the cut-restricted probes).
inline SupResult sup_over_halfplane(const std::function<double(cplx)>& h,
                                    const DomainGrid& grid,
                                    std::pair<double, double> phi_range = {0.0, pi}) {
  SupResult res;
  auto inside = [&](cplx w) {
    const double phi = std::arg(w);
    return phi > phi_range.first && phi < phi_range.second;
  };
  auto consider = [&](cplx w) {
    if (!(w.imag() > 0.0) || !inside(w)) return -1.0;
    const double v = h(w);
    ++res.samples;
    if (v > res.value) {
      res.value = v;
      res.arg = w;
    }
    return v;
  };
  for (cplx w : grid.points) consider(w);
  const double interior_max = res.value;

  std::vector<double> shell_max;
  for (const auto& ring : grid.rings) {
    double m = 0.0;
    for (cplx w : ring.points) m = std::max(m, consider(w));
    shell_max.push_back(m);
  }
  check_diverging(shell_max, interior_max);

  // Ray points grouped into |log rho| shells moving out from rho ~ 1.
  const int shells = 6;
  std::vector<double> ray_shell(shells, 0.0);
  for (cplx w : grid.ray_points) {
    const double v = consider(w);
    const double a = std::abs(std::log10(std::abs(w)));
    int s = std::min(shells - 1, static_cast<int>(a));
    ray_shell[static_cast<std::size_t>(s)] =
        std::max(ray_shell[static_cast<std::size_t>(s)], v);
  }
  check_diverging(ray_shell, interior_max);

  double u = std::log(std::abs(res.arg));
  double phi = std::arg(res.arg);
  for (int round = 0; round < 8; ++round) {
    const double before = res.value;
    const double du = 0.4 / (1 << round);
    double best_u = u;
    golden_max([&](double uu) { return consider(std::polar(std::exp(uu), phi)); },
               u - du, u + du, best_u);
    u = best_u;
    const double margin = 0.9 * std::min(phi - phi_range.first, phi_range.second - phi);
    const double dphi = std::min(0.3 / (1 << round), margin);
    if (dphi > 0.0) {
      double best_p = phi;
      golden_max([&](double pp) { return consider(std::polar(std::exp(u), pp)); },
                 phi - dphi, phi + dphi, best_p);
      phi = best_p;
    }
    if (res.value - before <= 1e-12 * (1.0 + res.value)) break;
  }
  return res;
}

inline std::string grid_resolution_tag(const QuadSpec& q, int depth) {
  return std::to_string(q.radial_nodes) + "x" + std::to_string(q.angular_nodes) +
         "+" + std::to_string(depth) + "r";
}

}  // namespace space_detail

// ||f||_{L^1_a(U, mu_alpha)} = int_U |f| dmu_alpha.
inline NormReport l1_norm(const Expr& f, const MeasureSpec& m, const QuadSpec& q,
                          RingPolicy policy = RingPolicy::adaptive) {
  if (m.domain != Domain::halfplane)
    throw InvalidSpec("l1_norm: measure must live on the half-plane");
  const cplx v =
      integrate_halfplane([&](cplx w) { return cplx{std::abs(eval(f, w))}; },
                          m.alpha, q, policy);
  NormReport rep;
  rep.value = v.real();
  rep.method = "quadrature";
  rep.resolution = space_detail::grid_resolution_tag(q, q.max_depth);
  rep.estimated_error = q.tolerance * (1.0 + rep.value);
  return rep;
}

// L^1 norm of S_psi f on the disk:  int_D |g| dm_alpha.
inline NormReport l1_norm_disk(const Expr& g, double alpha, const QuadSpec& q) {
  const cplx v = integrate_disk([&](cplx z) { return cplx{std::abs(eval(g, z))}; },
                                alpha, q);
  NormReport rep;
  rep.value = v.real();
  rep.method = "quadrature";
  rep.resolution = space_detail::grid_resolution_tag(q, q.max_depth);
  rep.estimated_error = q.tolerance * (1.0 + rep.value);
  return rep;
}

// Bloch seminorm: sup of (1-|z|^2)|f'(z)| over D or Im(w)|f'(w)| over U.
// Throws SupDiverging when the weighted derivative is still growing at the
// sampling frontier.
inline NormReport bloch_seminorm(const Expr& f, Domain domain, const QuadSpec& q,
                                 int grid_depth = 8) {
  const Expr df = derive(f);
  const DomainGrid grid = sample_domain(domain, q, grid_depth);
  space_detail::SupResult sup;
  if (domain == Domain::disk) {
    sup = space_detail::sup_over_disk(
        [&](cplx z) { return (1.0 - std::norm(z)) * std::abs(eval(df, z)); }, grid);
  } else {
    sup = space_detail::sup_over_halfplane(
        [&](cplx w) { return w.imag() * std::abs(eval(df, w)); }, grid);
  }
  NormReport rep;
  rep.value = sup.value;
  rep.method = "sup-search";
  rep.resolution = space_detail::grid_resolution_tag(q, grid_depth);
  rep.estimated_error = 1e-10 * (1.0 + sup.value);
  return rep;
}

// Seminorm restricted to an angular sector of the half-plane; used for
// probes whose branch cut excludes part of the domain.
inline NormReport bloch_seminorm_sector(const Expr& f, const QuadSpec& q,
                                        std::pair<double, double> phi_range,
                                        int grid_depth = 8) {
  const Expr df = derive(f);
  const DomainGrid grid = sample_domain(Domain::halfplane, q, grid_depth);
  const auto sup = space_detail::sup_over_halfplane(
      [&](cplx w) { return w.imag() * std::abs(eval(df, w)); }, grid, phi_range);
  NormReport rep;
  rep.value = sup.value;
  rep.method = "sup-search";
  rep.resolution = space_detail::grid_resolution_tag(q, grid_depth);
  rep.estimated_error = 1e-10 * (1.0 + sup.value);
  return rep;
}

// Boundary decay table: ring boundary distance -> sup of Im(w)|f'(w)| over
// the Cayley image of that ring.  A profile that keeps growing ring over
// ring means the weighted derivative diverges at the sampling frontier.
inline std::vector<std::pair<double, double>> little_bloch_profile(
    const Expr& f, const QuadSpec& q, int grid_depth = 8,
    std::pair<double, double> phi_range = {0.0, pi}) {
  const Expr df = derive(f);
  const DomainGrid grid = sample_domain(Domain::halfplane, q, grid_depth);
  std::vector<std::pair<double, double>> profile;
  profile.reserve(grid.rings.size());
  for (const auto& ring : grid.rings) {
    double m = 0.0;
    for (cplx w : ring.points) {
      const double phi = std::arg(w);
      if (!(phi > phi_range.first && phi < phi_range.second)) continue;
      m = std::max(m, w.imag() * std::abs(eval(df, w)));
    }
    profile.emplace_back(ring.boundary_distance, m);
  }
  const std::size_t n = profile.size();
  if (n >= 3 && profile[n - 1].second > 1.5 * profile[n - 2].second &&
      profile[n - 2].second > 1.5 * profile[n - 3].second &&
      profile[n - 1].second > 10.0 * (profile[0].second + 1e-300))
    throw SupDiverging(profile[n - 1].second);
  return profile;
}

// Full membership check for B_inf(U), B_inf,o(U) and B_inf,o(U, i).
inline MembershipVerdict membership(const Expr& f, const QuadSpec& q,
                                    int grid_depth = 8) {
  MembershipVerdict v;
  try {
    v.seminorm = bloch_seminorm(f, Domain::halfplane, q, grid_depth).value;
    v.bloch_finite = true;
  } catch (const SupDiverging&) {
    v.bloch_finite = false;
    v.seminorm = std::numeric_limits<double>::infinity();
  }
  try {
    v.boundary_profile = little_bloch_profile(f, q, grid_depth);
  } catch (const SupDiverging&) {
    v.bloch_finite = false;
    v.little_bloch = false;
    v.seminorm = std::numeric_limits<double>::infinity();
  }
  if (v.bloch_finite && !v.boundary_profile.empty()) {
    const std::size_t n = v.boundary_profile.size();
    bool decreasing = true;
    for (std::size_t k = n >= 3 ? n - 3 : 0; k + 1 < n; ++k)
      decreasing = decreasing &&
                   v.boundary_profile[k + 1].second <= v.boundary_profile[k].second;
    const double last = v.boundary_profile[n - 1].second;
    v.little_bloch = decreasing && last <= 1e-3 * v.seminorm;
  }
  v.value_at_i = std::abs(eval(f, imag_unit));
  if (v.bloch_finite)
    v.vanishes_at_i = v.value_at_i <= 1e-10 * (1.0 + v.seminorm);
  v.in_predual = v.bloch_finite && v.little_bloch && v.vanishes_at_i;
  return v;
}

// Empirical growth constant: sup over the sampling grid of
// |f(w)| Im(w)^gamma / ||f||_{L^1_a}.
inline double growth_ratio(const Expr& f, double alpha, const QuadSpec& q,
                           int grid_depth = 8,
                           RingPolicy policy = RingPolicy::adaptive) {
  const MeasureSpec m(alpha, Domain::halfplane);
  const double norm = l1_norm(f, m, q, policy).value;
  if (!(norm > 0.0))
    throw NonPositiveNorm("growth_ratio: L1 norm is not positive");
  const double gamma = m.gamma();
  const DomainGrid grid = sample_domain(Domain::halfplane, q, grid_depth);
  double sup = 0.0;
  auto consider = [&](cplx w) {
    sup = std::max(sup, std::abs(eval(f, w)) * std::pow(w.imag(), gamma));
  };
  for (cplx w : grid.points) consider(w);
  for (const auto& ring : grid.rings)
    for (cplx w : ring.points) consider(w);
  for (cplx w : grid.ray_points) consider(w);
  return sup / norm;
}

// Duality pairing <g, f> = int_U g conj(f) dmu_alpha; linear in g and
// conjugate-linear in f.
inline cplx pairing(const Expr& g, const Expr& f, double alpha, const QuadSpec& q,
                    RingPolicy policy = RingPolicy::adaptive) {
  return integrate_halfplane(
      [&](cplx w) { return eval(g, w) * std::conj(eval(f, w)); }, alpha, q, policy);
}

}  // namespace uhp
