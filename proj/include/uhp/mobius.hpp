#pragma once

#include <cmath>
#include <complex>

#include "uhp/core.hpp"
#include "uhp/errors.hpp"

namespace uhp {

// z |-> (a z + b) / (c z + d).  Coefficients are normalized to ad - bc = 1
// on construction so long composition chains stay well scaled.
struct MobiusMap {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  MobiusMap() = default;

  MobiusMap(cplx a_, cplx b_, cplx c_, cplx d_) {
    const cplx det = a_ * d_ - b_ * c_;
    if (std::abs(det) == 0.0 || !is_finite(det))
      throw DegenerateMap("mobius map with zero or non-finite determinant");
    const cplx s = std::sqrt(det);
    a = a_ / s;
    b = b_ / s;
    c = c_ / s;
    d = d_ / s;
  }

  cplx det() const { return a * d - b * c; }

  cplx operator()(cplx z) const {
    const cplx den = c * z + d;
    if (den == 0.0) throw PoleHit("mobius apply", z);
    return (a * z + b) / den;
  }

  // m'(z) = (ad - bc) / (cz + d)^2
  cplx derivative(cplx z) const {
    const cplx den = c * z + d;
    if (den == 0.0) throw PoleHit("mobius derivative", z);
    return det() / (den * den);
  }

  static MobiusMap identity() { return MobiusMap(); }
};

inline MobiusMap mobius_compose(const MobiusMap& m1, const MobiusMap& m2) {
  // compose(m1, m2)(z) = m1(m2(z)); coefficient matrices multiply.
  return MobiusMap(m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                   m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d);
}

inline MobiusMap mobius_invert(const MobiusMap& m) {
  return MobiusMap(m.d, -m.b, -m.c, m.a);
}

// psi(z) = i(1+z)/(1-z), the conformal map of the disk onto the half-plane.
inline MobiusMap cayley_map() {
  return MobiusMap(imag_unit, imag_unit, cplx{-1.0}, cplx{1.0});
}

// psi^{-1}(w) = (w - i)/(w + i)
inline MobiusMap cayley_inverse_map() {
  return MobiusMap(cplx{1.0}, -imag_unit, cplx{1.0}, imag_unit);
}

// Half-plane automorphism families.
inline MobiusMap scaling_automorphism(double t) {
  // phi_t(w) = e^{-t} w
  return MobiusMap(cplx{std::exp(-t)}, cplx{0.0}, cplx{0.0}, cplx{1.0});
}

inline MobiusMap translation_automorphism(double t) {
  // phi_t(w) = w + t
  return MobiusMap(cplx{1.0}, cplx{t}, cplx{0.0}, cplx{1.0});
}

// Conjugated disk automorphisms psi^{-1} . phi_{-t} . psi for the two
// families, in closed form; both are checked against coefficient-level
// composition in the tests.
inline cplx scaling_disk_parameter(double t) {
  // a_t = (1 - e^t)/(1 + e^t)
  const double et = std::exp(t);
  return cplx{(1.0 - et) / (1.0 + et)};
}

inline MobiusMap scaling_disk_automorphism(double t) {
  const cplx at = scaling_disk_parameter(t);
  // (z - a_t)/(1 - conj(a_t) z); a_t is real here.
  return MobiusMap(cplx{1.0}, -at, -std::conj(at), cplx{1.0});
}

inline cplx translation_disk_parameter_a(double t) {
  return cplx{t} / (2.0 * imag_unit + t);
}

inline cplx translation_disk_parameter_b(double t) {
  return (2.0 * imag_unit - t) / (2.0 * imag_unit + t);
}

inline MobiusMap translation_disk_automorphism(double t) {
  const cplx at = translation_disk_parameter_a(t);
  const cplx bt = translation_disk_parameter_b(t);
  // (z - a_t)/(b_t + a_t z)
  return MobiusMap(cplx{1.0}, -at, at, bt);
}

enum class CayleyDirection { disk_to_halfplane, halfplane_to_disk };

// Apply the Cayley transform with a strict domain check on the input.
inline cplx cayley(cplx z, CayleyDirection dir) {
  if (dir == CayleyDirection::disk_to_halfplane) {
    if (!in_disk(z))
      throw OutsideDomain("cayley: input not strictly inside the disk");
    return cayley_map()(z);
  }
  if (!in_halfplane(z))
    throw OutsideDomain("cayley: input not strictly inside the half-plane");
  return cayley_inverse_map()(z);
}

// |psi'(z)| = 2/|1-z|^2; used by transport-weighted integrands.
inline cplx cayley_derivative(cplx z) { return cayley_map().derivative(z); }

}  // namespace uhp
