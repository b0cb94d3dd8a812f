#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "uhp/core.hpp"
#include "uhp/errors.hpp"
#include "uhp/expr.hpp"
#include "uhp/mobius.hpp"

namespace uhp {

// Weight exponent and domain for the measures (1-|z|^2)^alpha dA on the
// disk and Im(w)^alpha dA on the half-plane.  gamma = alpha + 2 is the
// p = 1 growth/weight exponent.
struct MeasureSpec {
  double alpha = 0.0;
  Domain domain = Domain::halfplane;

  MeasureSpec() = default;
  MeasureSpec(double a, Domain d) : alpha(a), domain(d) {
    if (!(alpha > -1.0)) throw InvalidSpec("measure weight requires alpha > -1");
  }

  double gamma() const { return alpha + 2.0; }
};

struct QuadSpec {
  int radial_nodes = 64;
  int angular_nodes = 256;
  double eps = 1e-3;        // boundary truncation for the base grid
  int path_nodes = 48;      // per-panel nodes for ray/Laplace integrals
  double tolerance = 1e-9;  // adaptive refinement target
  int max_depth = 40;       // cap on boundary-refinement rings
  // Angular corner refinement near theta = 0 on boundary annuli.  Needed
  // for Cayley-transported integrands (w -> infinity lands there); turn it
  // off for integrands that are smooth on the whole circle, where the
  // uniform rule is spectrally accurate on its own.
  bool corner_patch = true;

  void validate() const {
    if (radial_nodes < 4 || angular_nodes < 4 || path_nodes < 4)
      throw InvalidSpec("QuadSpec: node counts must be >= 4");
    if (!(tolerance > 0.0)) throw InvalidSpec("QuadSpec: tolerance must be > 0");
    if (!(eps > 0.0 && eps < 0.5)) throw InvalidSpec("QuadSpec: eps must be in (0, 0.5)");
    if (max_depth < 1) throw InvalidSpec("QuadSpec: max_depth must be >= 1");
  }
};

// ---------------------------------------------------------------------------
// Gauss-Legendre rules
// ---------------------------------------------------------------------------

struct Rule1d {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Newton iteration on the Legendre recurrence; nodes accurate to machine
// precision and fully deterministic.
inline const Rule1d& gauss_legendre(int n) {
  static std::map<int, Rule1d> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Rule1d rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[n - 1 - i] = rule.w[i];
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

// Fixed Gauss-Legendre quadrature of f over [a, b].
template <typename F>
auto gl_integrate(F&& f, double a, double b, int n) -> decltype(f(a)) {
  const Rule1d& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  using R = decltype(f(a));
  std::vector<R> contrib(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    contrib[i] = rule.w[i] * half * f(mid + half * rule.x[i]);
  return pairwise_sum(contrib);
}

// ---------------------------------------------------------------------------
// Disk rule: nodes and weights for  (1/pi) iint G(z) (1-|z|^2)^alpha dx dy
// ---------------------------------------------------------------------------

struct WeightedNode {
  cplx z;
  double w;
};

// Base panels cover [0, 1-eps] radially (geometric subdivision toward the
// boundary), followed by refinement rings [1-eps 2^-k, 1-eps 2^-k-1].
// Summing base + rings in order gives the adaptive estimates.
struct DiskRule {
  std::vector<WeightedNode> nodes;
  std::size_t base_count = 0;
  std::vector<std::pair<double, std::size_t>> ring_ends;  // (delta_k, end index)
};

namespace quad_detail {

// Boundary annuli need extra angular resolution near theta = 0: under the
// Cayley pullback that corner carries w -> infinity, where transported
// integrands oscillate at the scale of the boundary distance.  Cells next
// to theta = 0 are replaced by a geometric subdivision down to that scale.
inline void append_annulus(DiskRule& rule, double r_lo, double r_hi, int n_rad,
                           int n_ang, double alpha, bool corner_patch) {
  const Rule1d& gl = gauss_legendre(n_rad);
  const double mid = 0.5 * (r_lo + r_hi);
  const double half = 0.5 * (r_hi - r_lo);
  const double h = 2.0 * pi / n_ang;
  const double delta = 1.0 - r_hi;

  int patch_cells = 0;
  if (corner_patch && delta < 0.05) {
    const double target = std::min(0.2, std::max(4.0 * h, 64.0 * (1.0 - r_lo)));
    patch_cells = std::min(n_ang / 2, static_cast<int>(std::ceil(target / h)));
  }
  const double theta_c = patch_cells * h;

  for (int i = 0; i < n_rad; ++i) {
    const double r = mid + half * gl.x[i];
    const double radial_w = gl.w[i] * half * std::pow(1.0 - r * r, alpha) * r;
    for (int j = 0; j < n_ang; ++j) {
      const double theta = h * (j + 0.5);
      if (patch_cells > 0 && (theta < theta_c || theta > 2.0 * pi - theta_c))
        continue;
      rule.nodes.push_back({std::polar(r, theta), radial_w * h / pi});
    }
    if (patch_cells == 0) continue;
    // Geometric panels from the feature scale out to the patch edge,
    // mirrored about theta = 0; 4-point Gauss per panel.
    const Rule1d& sub = gauss_legendre(4);
    double lo = 0.0;
    double width = std::max(0.5 * delta, theta_c * 1e-9);
    while (lo < theta_c) {
      const double hi = std::min(lo + width, theta_c);
      const double pm = 0.5 * (lo + hi);
      const double ph = 0.5 * (hi - lo);
      for (std::size_t k = 0; k < sub.x.size(); ++k) {
        const double th = pm + ph * sub.x[k];
        const double w = radial_w * sub.w[k] * ph / pi;
        rule.nodes.push_back({std::polar(r, th), w});
        rule.nodes.push_back({std::polar(r, -th), w});
      }
      lo = hi;
      width *= 2.0;
    }
  }
}

inline DiskRule build_disk_rule(double alpha, const QuadSpec& q) {
  DiskRule rule;
  const int per_panel = std::max(8, q.radial_nodes / 4);

  // Geometric breaks 0, 1/2, 3/4, ... down to the truncation radius.
  std::vector<double> breaks{0.0};
  for (double d = 0.5; d > q.eps; d *= 0.5) breaks.push_back(1.0 - d);
  breaks.push_back(1.0 - q.eps);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const int n_rad = (k == 0) ? std::max(per_panel, q.radial_nodes / 2) : per_panel;
    if (breaks[k + 1] > breaks[k])
      append_annulus(rule, breaks[k], breaks[k + 1], n_rad, q.angular_nodes, alpha,
                     q.corner_patch);
  }
  rule.base_count = rule.nodes.size();

  double delta = q.eps;
  for (int k = 0; k < q.max_depth; ++k) {
    append_annulus(rule, 1.0 - delta, 1.0 - 0.5 * delta, per_panel,
                   q.angular_nodes, alpha, q.corner_patch);
    rule.ring_ends.emplace_back(delta, rule.nodes.size());
    delta *= 0.5;
  }
  return rule;
}

inline const DiskRule& disk_rule(double alpha, const QuadSpec& q) {
  using Key = std::tuple<double, int, int, double, int, bool>;
  static std::map<Key, DiskRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const Key key{alpha, q.radial_nodes, q.angular_nodes, q.eps, q.max_depth,
                q.corner_patch};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, build_disk_rule(alpha, q)).first->second;
}

}  // namespace quad_detail

// `adaptive` stops once a refinement ring no longer moves the estimate;
// `full` always consumes every ring, which keeps the quadrature exactly
// homogeneous and is what algebraic-identity checks want.
enum class RingPolicy { adaptive, full };

// (1/pi) iint_D G(z) (1-|z|^2)^alpha dx dy, refining toward the boundary
// until the newest ring moves the estimate by at most the tolerance.
template <typename G>
  requires std::invocable<G&, cplx>
cplx integrate_disk(G&& g, double alpha, const QuadSpec& q,
                    RingPolicy policy = RingPolicy::adaptive) {
  q.validate();
  if (!(alpha > -1.0)) throw InvalidSpec("integrate_disk requires alpha > -1");
  const DiskRule& rule = quad_detail::disk_rule(alpha, q);

  std::vector<cplx> contrib;
  contrib.reserve(rule.base_count);
  for (std::size_t i = 0; i < rule.base_count; ++i)
    contrib.push_back(rule.nodes[i].w * g(rule.nodes[i].z));
  cplx total = pairwise_sum(contrib);

  double prev_abs = std::abs(total);
  std::size_t begin = rule.base_count;
  for (std::size_t k = 0; k < rule.ring_ends.size(); ++k) {
    const std::size_t end = rule.ring_ends[k].second;
    contrib.clear();
    for (std::size_t i = begin; i < end; ++i)
      contrib.push_back(rule.nodes[i].w * g(rule.nodes[i].z));
    const cplx ring = pairwise_sum(contrib);
    prev_abs = std::abs(total);
    total += ring;
    // The leftover tail is at most a small multiple of the last ring.  The
    // small absolute floor keeps genuinely tiny integrals convergent while
    // leaving the stopping decision essentially scale-invariant, so that
    // proportional integrands truncate at matching depths.
    if (policy == RingPolicy::adaptive &&
        std::abs(ring) <= 0.25 * q.tolerance * (1e-3 + std::abs(total)))
      return total;
    begin = end;
  }
  if (policy == RingPolicy::full) return total;
  throw NonConvergent(prev_abs, std::abs(total), static_cast<int>(rule.ring_ends.size()));
}

// int_U F(w) Im(w)^alpha dA(w) by Cayley pullback: boundary and infinity
// collapse onto the unit circle and one ring-refinement mechanism covers
// both.
template <typename F>
  requires std::invocable<F&, cplx>
cplx integrate_halfplane(F&& f, double alpha, const QuadSpec& q,
                         RingPolicy policy = RingPolicy::adaptive) {
  const MobiusMap psi = cayley_map();
  auto g = [&](cplx z) -> cplx {
    const double n2 = std::norm(1.0 - z);
    return f(psi(z)) * 4.0 * std::pow(n2, -(2.0 + alpha));
  };
  return integrate_disk(g, alpha, q, policy);
}

template <typename F>
  requires std::invocable<F&, cplx>
cplx integrate_weighted(F&& f, const MeasureSpec& m, const QuadSpec& q,
                        RingPolicy policy = RingPolicy::adaptive) {
  if (m.domain == Domain::disk)
    return integrate_disk(std::forward<F>(f), m.alpha, q, policy);
  return integrate_halfplane(std::forward<F>(f), m.alpha, q, policy);
}

inline cplx integrate_weighted(const Expr& f, const MeasureSpec& m, const QuadSpec& q,
                               RingPolicy policy = RingPolicy::adaptive) {
  return integrate_weighted([&](cplx z) { return eval(f, z); }, m, q, policy);
}

// ---------------------------------------------------------------------------
// Ray and Laplace-transform quadrature
// ---------------------------------------------------------------------------

namespace quad_detail {

// int_0^infty phi(u) du for integrands decaying like e^{-rate u}; panels
// [0,1], [1,2], [2,4], ... are added until both the running panel and the
// integrand magnitude fall below the truncation threshold.
template <typename Phi>
cplx semi_infinite(Phi&& phi, double rate, double head_scale, const QuadSpec& q,
                   int nodes_per_panel) {
  const double cutoff = q.tolerance * 1e-2;
  cplx total{0.0};
  double lo = 0.0, hi = 1.0;
  const double u_max = 80.0 / rate + 80.0;
  int panels = 0;
  while (true) {
    const cplx piece = gl_integrate(phi, lo, hi, nodes_per_panel);
    total += piece;
    ++panels;
    const double edge = std::abs(phi(hi));
    if (edge <= cutoff * head_scale &&
        std::abs(piece) <= cutoff * head_scale * (hi - lo) + cutoff)
      return total;
    if (hi >= u_max)
      throw NonConvergent(std::abs(total - piece), std::abs(total), panels);
    lo = hi;
    hi = std::min(2.0 * hi, u_max);
  }
}

}  // namespace quad_detail

enum class RayKind { outward, to_origin };

// Ray integral for the scaling-group resolvent, in the Laplace-transform
// normalization:
//   outward:    w^lambda int_w^infty z^{-(lambda+1)} h(z) dz
//   to_origin:  w^lambda int_0^w     z^{-(lambda+1)} h(z) dz
// parameterized by z = e^s w.  arg z is constant along the ray, so the
// power never meets a cut; the quadrature works on the literal ray
// integrand, which keeps this route independent of the Laplace-transform
// quadrature it is cross-checked against.
template <typename H>
  requires std::invocable<H&, cplx>
cplx integrate_ray(H&& h, cplx w, RayKind kind, cplx lambda, const QuadSpec& q) {
  q.validate();
  if (!(w.imag() > 0.0)) throw OutsideDomain("integrate_ray: base point not in U");
  const double sigma = (kind == RayKind::outward) ? 1.0 : -1.0;
  const double rate = sigma * lambda.real();
  if (!(rate > 0.0))
    throw DivergentTail("integrate_ray: exponent gives no decay for this ray kind");

  const double theta = std::arg(w);  // branch: constant argument on the ray
  auto phi = [&](double u) -> cplx {
    const cplx z = std::exp(sigma * u) * w;
    const cplx log_z{std::log(std::abs(z)), theta};
    return std::exp(-(lambda + 1.0) * log_z) * h(z) * z;
  };
  // Decay pre-check: the integrand must not be growing far out.
  const double head = std::abs(phi(0.0)) + 1.0;
  const double probe_u = 40.0 / rate;
  if (std::abs(phi(probe_u)) > 10.0 * head || std::abs(phi(2.0 * probe_u)) > 10.0 * head)
    throw DivergentTail("integrate_ray: integrand growing along the ray");
  const cplx raw = quad_detail::semi_infinite(phi, rate, head, q, q.path_nodes);
  return pow_branch(w, lambda, BranchSpec::principal()) * raw;
}

inline cplx integrate_ray(const Expr& h, cplx w, RayKind kind, cplx lambda,
                          const QuadSpec& q) {
  return integrate_ray([&](cplx z) { return eval(h, z); }, w, kind, lambda, q);
}

// Resolvent by Laplace transform: int_0^inf e^{-lambda t} orbit(t) dt.
// For Re(lambda) < 0 the caller must pass the inverse orbit t -> S_{-t}h,
// and the reflection R(lambda) = -R(-lambda, -Gamma) is applied here.
inline cplx laplace_resolvent_quad(const std::function<cplx(double)>& orbit,
                                   cplx lambda, const QuadSpec& q) {
  q.validate();
  if (lambda.real() == 0.0)
    throw InvalidSpec("laplace_resolvent_quad: Re(lambda) must be nonzero");
  const bool flipped = lambda.real() < 0.0;
  const cplx lam = flipped ? -lambda : lambda;

  auto phi = [&](double t) -> cplx { return std::exp(-lam * t) * orbit(t); };
  const double head = std::abs(orbit(0.0)) + 1.0;
  // Deliberately a different panel order than integrate_ray, so the two
  // resolvent routes do not share a discretization.
  const int nodes = std::max(12, (3 * q.path_nodes) / 4);
  const cplx value = quad_detail::semi_infinite(phi, lam.real(), head, q, nodes);
  return flipped ? -value : value;
}

}  // namespace uhp
