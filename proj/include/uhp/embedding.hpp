#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "uhp/core.hpp"
#include "uhp/errors.hpp"
#include "uhp/mobius.hpp"
#include "uhp/quadrature.hpp"

namespace uhp {

// The integral operator
//   T f(z) = (1-|z|^2)^t int_D f(w) (1 - z conj(w))^{-(2+t+alpha)} dm_alpha(w)
// evaluated by one weighted disk quadrature per requested point.  For
// iterated applications the inner function can be tabulated on the rule
// nodes once and reused for every outer point.
class EmbeddingT {
 public:
  // The corner patch of the quadrature settings matters here: evaluation
  // points close to the boundary need it (the rotated kernel peaks at the
  // patched angle), while for moderate z the plain uniform rule is already
  // spectrally accurate and the patch only adds its seam error.
  EmbeddingT(double t, double alpha, QuadSpec q)
      : t_(t), alpha_(alpha), q_(q) {
    if (!(t > 0.0)) throw InvalidSpec("EmbeddingT requires t > 0");
    if (!(alpha > -1.0)) throw InvalidSpec("EmbeddingT requires alpha > -1");
    q_.validate();
  }

  double t() const { return t_; }
  double alpha() const { return alpha_; }
  double kernel_exponent() const { return 2.0 + t_ + alpha_; }

  const DiskRule& rule() const { return quad_detail::disk_rule(alpha_, q_); }

  // dm_alpha is rotation invariant, so the integral is evaluated in
  // coordinates where z sits on the positive real axis; the kernel peak
  // then falls on the angular corner refinement of the rule, which keeps
  // the quadrature usable even for z close to the boundary.
  cplx apply(const std::function<cplx(cplx)>& f, cplx z,
             RingPolicy policy = RingPolicy::adaptive) const {
    if (!in_disk(z)) throw OutsideDomain("EmbeddingT: point not in the disk");
    const double s = kernel_exponent();
    const double rho = std::abs(z);
    const cplx phase = rho == 0.0 ? cplx{1.0} : z / rho;
    const cplx integral = integrate_disk(
        [&](cplx u) { return f(phase * u) * kernel(cplx{rho}, u, s); }, alpha_,
        q_, policy);
    return std::pow(1.0 - std::norm(z), t_) * integral;
  }

  // Same integral with f already sampled on rule() nodes (full rule sum).
  cplx apply_values(std::span<const cplx> values, cplx z) const {
    const DiskRule& r = rule();
    if (values.size() != r.nodes.size())
      throw InvalidSpec("EmbeddingT::apply_values: size mismatch with rule");
    const double s = kernel_exponent();
    std::vector<cplx> contrib(r.nodes.size());
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      contrib[i] = r.nodes[i].w * values[i] * kernel(z, r.nodes[i].z, s);
    return std::pow(1.0 - std::norm(z), t_) * pairwise_sum(contrib);
  }

 private:
  static cplx kernel(cplx z, cplx w, double s) {
    // 1 - z conj(w) stays in the right half-plane, so the principal power
    // never meets a cut.
    return std::pow(cplx{1.0} - z * std::conj(w), cplx{-s});
  }

  double t_;
  double alpha_;
  QuadSpec q_;
};

// S = C_{psi^{-1}} T C_psi on functions of the half-plane.
class EmbeddingS {
 public:
  EmbeddingS(double t, double alpha, QuadSpec q) : inner_(t, alpha, q) {}

  const EmbeddingT& disk_operator() const { return inner_; }

  cplx apply(const std::function<cplx(cplx)>& f, cplx omega,
             RingPolicy policy = RingPolicy::adaptive) const {
    if (!in_halfplane(omega))
      throw OutsideDomain("EmbeddingS: point not in the half-plane");
    const MobiusMap psi = cayley_map();
    auto pulled = [&](cplx w) { return f(psi(w)); };
    return inner_.apply(pulled, cayley_inverse_map()(omega), policy);
  }

 private:
  EmbeddingT inner_;
};

}  // namespace uhp
