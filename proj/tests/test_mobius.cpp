#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uhp/grid.hpp"
#include "uhp/mobius.hpp"

using namespace uhp;

TEST_CASE("cayley transform values") {
  CHECK(std::abs(cayley(cplx{0.0}, CayleyDirection::disk_to_halfplane) - imag_unit) <
        1e-15);
  CHECK(std::abs(cayley(imag_unit, CayleyDirection::halfplane_to_disk)) < 1e-15);
  CHECK(std::abs(cayley(cplx{0.5}, CayleyDirection::disk_to_halfplane) -
                 cplx{0.0, 3.0}) < 1e-14);

  CHECK_THROWS_AS(cayley(cplx{1.2, 0.0}, CayleyDirection::disk_to_halfplane),
                  OutsideDomain);
  CHECK_THROWS_AS(cayley(cplx{0.0, -0.1}, CayleyDirection::halfplane_to_disk),
                  OutsideDomain);
}

TEST_CASE("compose with inverse is the identity") {
  Rng rng(3);
  const MobiusMap maps[] = {cayley_map(), scaling_automorphism(0.7),
                            translation_automorphism(-1.3),
                            scaling_disk_automorphism(0.4),
                            translation_disk_automorphism(2.0)};
  for (const MobiusMap& m : maps) {
    const MobiusMap id = mobius_compose(m, mobius_invert(m));
    for (int k = 0; k < 100; ++k) {
      const cplx z = rng.in_disk(0.95);
      CHECK(std::abs(id(z) - z) < 1e-12);
    }
  }
}

TEST_CASE("composing the Cayley transform with its inverse") {
  const MobiusMap id = mobius_compose(cayley_inverse_map(), cayley_map());
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const cplx z = rng.in_disk(0.95);
    CHECK(std::abs(id(z) - z) < 1e-12);
  }
}

TEST_CASE("degenerate maps are rejected") {
  CHECK_THROWS_AS(MobiusMap(cplx{1.0}, cplx{2.0}, cplx{2.0}, cplx{4.0}),
                  DegenerateMap);
}

TEST_CASE("conjugated scaling automorphism") {
  // psi^{-1} . phi_{-t} . psi = (z - a_t)/(1 - conj(a_t) z), a_t = (1-e^t)/(1+e^t)
  const double t = std::log(3.0);
  CHECK(std::abs(scaling_disk_parameter(t) - cplx{-0.5}) < 1e-15);
  const MobiusMap closed = scaling_disk_automorphism(t);
  CHECK(std::abs(closed(cplx{0.0}) - cplx{0.5}) < 1e-15);

  const MobiusMap composed = mobius_compose(
      cayley_inverse_map(),
      mobius_compose(scaling_automorphism(-t), cayley_map()));
  Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const cplx z = rng.in_disk(0.9);
    CHECK(std::abs(closed(z) - composed(z)) < 1e-13);
  }
}

TEST_CASE("conjugated translation automorphism") {
  // a_t = t/(2i+t), b_t = (2i-t)/(2i+t); the map kills a_t.
  const double t = 2.0;
  const cplx at = translation_disk_parameter_a(t);
  CHECK(std::abs(at - cplx{0.5, -0.5}) < 1e-15);
  const MobiusMap closed = translation_disk_automorphism(t);
  CHECK(std::abs(closed(at)) < 1e-15);

  const MobiusMap composed = mobius_compose(
      cayley_inverse_map(),
      mobius_compose(translation_automorphism(-t), cayley_map()));
  Rng rng(29);
  for (int k = 0; k < 50; ++k) {
    const cplx z = rng.in_disk(0.9);
    CHECK(std::abs(closed(z) - composed(z)) < 1e-13);
  }
}

TEST_CASE("automorphism parameters vanish as t -> 0") {
  for (int k = 1; k <= 6; ++k) {
    const double t = std::pow(10.0, -k);
    CHECK(std::abs(scaling_disk_parameter(t)) <= t);
  }
  for (double t : {0.1, 0.05, 0.01, 0.001}) {
    const cplx at = translation_disk_parameter_a(t);
    const cplx bt = translation_disk_parameter_b(t);
    CHECK(std::abs(at) <= t);
    CHECK(std::abs(bt - 1.0) <= t);
    // |a_t| + |b_t - 1| = 3t/sqrt(4+t^2): bounded by 1.5 t, not by t.
    CHECK(std::abs(at) + std::abs(bt - 1.0) <= 1.5 * t);
  }
}

TEST_CASE("sample_domain on the disk") {
  QuadSpec q;
  q.radial_nodes = 4;
  q.angular_nodes = 8;
  q.eps = 0.1;
  const DomainGrid grid = sample_domain(Domain::disk, q, 3);
  CHECK(grid.points.size() == 32);
  for (cplx z : grid.points) CHECK(std::abs(z) <= 0.9 + 1e-15);
  REQUIRE(grid.rings.size() == 4);
  const auto profile = grid.boundary_profile();
  for (std::size_t k = 0; k + 1 < profile.size(); ++k)
    CHECK(profile[k + 1] < profile[k]);
  CHECK(profile[0] == doctest::Approx(0.1));

  QuadSpec bad = q;
  bad.eps = 0.7;
  CHECK_THROWS_AS(sample_domain(Domain::disk, bad), InvalidSpec);
}

TEST_CASE("sample_domain on the half-plane is the Cayley image") {
  QuadSpec q;
  q.radial_nodes = 8;
  q.angular_nodes = 16;
  q.eps = 0.05;
  const DomainGrid grid = sample_domain(Domain::halfplane, q, 4);
  for (cplx w : grid.points) CHECK(w.imag() > 0.0);
  for (const auto& ring : grid.rings)
    for (cplx w : ring.points) CHECK(w.imag() > 0.0);
  for (cplx w : grid.ray_points) CHECK(w.imag() > 0.0);

  // psi . psi^{-1} = id on all grid points.  Far out (|w| huge) the round
  // trip through z ~ 1 loses eps*|w|^2 to cancellation in doubles, so the
  // absolute identity is asserted at moderate heights and the identity in
  // well-conditioned disk coordinates everywhere.
  const MobiusMap psi = cayley_map();
  const MobiusMap psi_inv = cayley_inverse_map();
  for (cplx w : grid.all_points()) {
    if (std::abs(w) <= 1e3)
      CHECK(std::abs(psi(psi_inv(w)) - w) <= 1e-12 * (1.0 + std::abs(w)));
    const cplx z = psi_inv(w);
    CHECK(std::abs(psi_inv(psi(z)) - z) <= 1e-12);
  }
}

TEST_CASE("grid CSV export") {
  QuadSpec q;
  q.radial_nodes = 4;
  q.angular_nodes = 4;
  q.eps = 0.2;
  const DomainGrid grid = sample_domain(Domain::disk, q, 1);
  const std::string csv = grid_to_csv(grid);
  CHECK(csv.rfind("re,im,weight\n", 0) == 0);
  // one line per point plus header
  std::size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + grid.points.size() + grid.rings.size() * 4);
}
