#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "uhp/core.hpp"
#include "uhp/errors.hpp"
#include "uhp/expr.hpp"
#include "uhp/spaces.hpp"

namespace uhp {

enum class GroupKind { scaling, translation };
enum class SpaceTag { l1_bergman, predual_bloch };

inline const char* group_name(GroupKind k) {
  return k == GroupKind::scaling ? "scaling" : "translation";
}

// One group element: which automorphism family, which space it acts on,
// the parameter t, and (for the L1 scaling group) the weight gamma = alpha+2.
struct GroupDescriptor {
  GroupKind kind = GroupKind::scaling;
  SpaceTag space = SpaceTag::predual_bloch;
  double t = 0.0;
  double gamma = 2.0;

  GroupDescriptor with_t(double new_t) const {
    GroupDescriptor d = *this;
    d.t = new_t;
    return d;
  }
};

// Symbolic application of the group element:
//   scaling   / predual: S_t g(w) = g(e^t w)
//   scaling   / L1:      T_t f(w) = e^{-t gamma} f(e^{-t} w)
//   translation / predual: S_t g(w) = g(w - t)
//   translation / L1:      T_t f(w) = f(w + t)
inline Expr apply_group(const GroupDescriptor& d, const Expr& f) {
  if (d.kind == GroupKind::scaling) {
    if (d.space == SpaceTag::predual_bloch)
      return scale_arg(cplx{std::exp(d.t)}, f);
    return product({constant(cplx{std::exp(-d.t * d.gamma)}),
                    scale_arg(cplx{std::exp(-d.t)}, f)});
  }
  if (d.space == SpaceTag::predual_bloch) return shift_arg(cplx{-d.t}, f);
  return shift_arg(cplx{d.t}, f);
}

// Weighted composition S_g f = (g')^gamma (f . g) with the principal branch
// for the power; the derivative of a Moebius map never meets the cut on the
// domains used here except on a measure-zero set, where evaluation errors.
inline Expr weighted_composition(const MobiusMap& g, double gamma, const Expr& f) {
  const Expr composed = mobius_comp(g, f);
  if (gamma == 0.0) return composed;
  Expr dg;
  if (g.c == 0.0) {
    dg = constant(g.det() / (g.d * g.d));
  } else {
    dg = product({constant(g.det()),
                  power(sum({product({constant(g.c), variable()}), constant(g.d)}),
                        cplx{-2.0})});
  }
  return product({power(dg, cplx{gamma}), composed});
}

// Infinitesimal generators: Gamma g = w g'(w) (scaling) or -g'(w)
// (translation), as expression trees.
inline Expr generator_symbolic(GroupKind kind, const Expr& g) {
  if (kind == GroupKind::scaling) return product({variable(), derive(g)});
  return product({constant(cplx{-1.0}), derive(g)});
}

struct GeneratorProbe {
  std::vector<double> ladder;     // strictly decreasing positive t values
  std::vector<double> residuals;  // ||(S_t g - g)/t - Gamma g||_{B_inf,1}
  double fitted_order = 0.0;      // slope of log residual vs log t
};

namespace group_detail {

inline Expr difference_quotient_residual(const GroupDescriptor& d, const Expr& g,
                                         const Expr& gamma_g, double t) {
  const Expr moved = apply_group(d.with_t(t), g);
  return sum({product({constant(cplx{1.0 / t}), moved}),
              product({constant(cplx{-1.0 / t}), g}),
              product({constant(cplx{-1.0}), gamma_g})});
}

inline double fit_log_slope(const std::vector<double>& t,
                            const std::vector<double>& r) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(r[i] > 0.0)) continue;
    const double x = std::log(t[i]);
    const double y = std::log(r[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace group_detail

// Difference-quotient probe of the generator on the predual seminorm.
// The ladder must be strictly decreasing and positive.
inline GeneratorProbe generator_fd(const GroupDescriptor& d, const Expr& g,
                                   const std::vector<double>& ladder,
                                   const QuadSpec& q) {
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0) || (i > 0 && !(ladder[i] < ladder[i - 1])))
      throw InvalidSpec("generator_fd: ladder must be strictly decreasing and > 0");
  }
  const Expr gamma_g = generator_symbolic(d.kind, g);
  GeneratorProbe probe;
  probe.ladder = ladder;
  for (double t : ladder) {
    const Expr res = group_detail::difference_quotient_residual(d, g, gamma_g, t);
    probe.residuals.push_back(bloch_seminorm(res, Domain::halfplane, q).value);
  }
  probe.fitted_order = group_detail::fit_log_slope(probe.ladder, probe.residuals);
  return probe;
}

// Decay table ||S_t g - g||_{B_inf,1} along the ladder.
inline std::vector<std::pair<double, double>> continuity_probe(
    const GroupDescriptor& d, const Expr& g, const std::vector<double>& ladder,
    const QuadSpec& q) {
  std::vector<std::pair<double, double>> table;
  table.reserve(ladder.size());
  for (double t : ladder) {
    const Expr diff =
        sum({apply_group(d.with_t(t), g), product({constant(cplx{-1.0}), g})});
    table.emplace_back(t, bloch_seminorm(diff, Domain::halfplane, q).value);
  }
  return table;
}

}  // namespace uhp
