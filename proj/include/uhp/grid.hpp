#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "uhp/core.hpp"
#include "uhp/errors.hpp"
#include "uhp/mobius.hpp"
#include "uhp/quadrature.hpp"

namespace uhp {

// Sampling grids for sup searches and boundary-limit probes.  Base points
// carry plain (alpha = 0) quadrature weights so grids can double as crude
// rules when exported; ring and ray points are search points with weight 0.
struct GridRing {
  double boundary_distance = 0.0;
  std::vector<cplx> points;
};

struct DomainGrid {
  Domain domain = Domain::disk;
  double eps = 1e-3;
  std::vector<cplx> points;    // base grid, strictly inside the domain
  std::vector<double> weights; // parallel to points
  std::vector<GridRing> rings; // geometric boundary refinement
  std::vector<cplx> ray_points;  // half-plane only: log-polar rays

  std::vector<double> boundary_profile() const {
    std::vector<double> p;
    p.reserve(rings.size());
    for (const auto& r : rings) p.push_back(r.boundary_distance);
    return p;
  }

  std::vector<cplx> all_points() const {
    std::vector<cplx> all = points;
    for (const auto& r : rings) all.insert(all.end(), r.points.begin(), r.points.end());
    all.insert(all.end(), ray_points.begin(), ray_points.end());
    return all;
  }
};

namespace grid_detail {

inline DomainGrid sample_disk(const QuadSpec& q, int depth) {
  DomainGrid grid;
  grid.domain = Domain::disk;
  grid.eps = q.eps;
  const Rule1d& gl = gauss_legendre(q.radial_nodes);
  const double half = 0.5 * (1.0 - q.eps);
  const double dtheta = 2.0 * pi / q.angular_nodes;
  for (int i = 0; i < q.radial_nodes; ++i) {
    const double r = half + half * gl.x[i];
    const double w = gl.w[i] * half * r * (2.0 / q.angular_nodes);
    for (int j = 0; j < q.angular_nodes; ++j) {
      grid.points.push_back(std::polar(r, dtheta * (j + 0.5)));
      grid.weights.push_back(w);
    }
  }
  for (int k = 0; k <= depth; ++k) {
    GridRing ring;
    ring.boundary_distance = q.eps * std::pow(2.0, -k);
    const double r = 1.0 - ring.boundary_distance;
    for (int j = 0; j < q.angular_nodes; ++j)
      ring.points.push_back(std::polar(r, dtheta * (j + 0.5)));
    grid.rings.push_back(std::move(ring));
  }
  return grid;
}

}  // namespace grid_detail

// Disk: Gauss-Legendre radial nodes on [0, 1-eps] x uniform angles, plus
// geometric boundary-refinement rings at 1 - eps 2^-k, k = 0..depth.
// Half-plane: the Cayley image of the disk grid, plus log-polar rays that
// reach toward 0 and infinity for sup searches.
inline DomainGrid sample_domain(Domain domain, const QuadSpec& q, int depth = 8) {
  q.validate();
  if (depth < 0) throw InvalidSpec("sample_domain: depth must be >= 0");
  DomainGrid disk = grid_detail::sample_disk(q, depth);
  if (domain == Domain::disk) return disk;

  DomainGrid grid;
  grid.domain = Domain::halfplane;
  grid.eps = q.eps;
  const MobiusMap psi = cayley_map();
  grid.points.reserve(disk.points.size());
  for (std::size_t i = 0; i < disk.points.size(); ++i) {
    grid.points.push_back(psi(disk.points[i]));
    grid.weights.push_back(disk.weights[i]);
  }
  for (const auto& ring : disk.rings) {
    GridRing image;
    image.boundary_distance = ring.boundary_distance;
    image.points.reserve(ring.points.size());
    for (cplx z : ring.points) image.points.push_back(psi(z));
    grid.rings.push_back(std::move(image));
  }
  const int n_rays = 16;
  const int per_ray = 33;
  for (int m = 0; m < n_rays; ++m) {
    const double phi = pi * (m + 0.5) / n_rays;
    for (int j = 0; j < per_ray; ++j) {
      const double log10_rho = -6.0 + 12.0 * j / (per_ray - 1.0);
      grid.ray_points.push_back(std::polar(std::pow(10.0, log10_rho), phi));
    }
  }
  return grid;
}

// CSV export (`re,im,weight`) for external plotting.
inline std::string grid_to_csv(const DomainGrid& grid) {
  std::string out = "re,im,weight\n";
  auto line = [&](cplx z, double w) {
    out += format_real(z.real());
    out += ",";
    out += format_real(z.imag());
    out += ",";
    out += format_real(w);
    out += "\n";
  };
  for (std::size_t i = 0; i < grid.points.size(); ++i)
    line(grid.points[i], grid.weights[i]);
  for (const auto& ring : grid.rings)
    for (cplx z : ring.points) line(z, 0.0);
  for (cplx z : grid.ray_points) line(z, 0.0);
  return out;
}

}  // namespace uhp
