#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "uhp/battery.hpp"
#include "uhp/core.hpp"
#include "uhp/embedding.hpp"
#include "uhp/errors.hpp"
#include "uhp/expr.hpp"
#include "uhp/groups.hpp"
#include "uhp/parse.hpp"
#include "uhp/quadrature.hpp"
#include "uhp/report.hpp"
#include "uhp/spaces.hpp"
#include "uhp/spectral.hpp"

namespace uhp {

struct SuiteConfig {
  std::string suite;
  double alpha = 0.0;
  std::vector<double> t_values;  // group parameters; suite defaults if empty
  std::vector<cplx> lambdas;     // spectral parameters; defaults if empty
  QuadSpec quad;
  std::string battery_path;  // empty -> builtin battery
  std::string probes_path;   // optional probe list for spectral
  double check_tol = 0.0;    // > 0 overrides the primary per-check tolerance
  std::uint64_t seed = 42;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "transport", "isometry",  "group-law",  "adjoint", "generator",
      "continuity", "embedding", "spectral",   "membership", "pairing",
      "growth"};
  return names;
}

namespace suite_detail {

inline std::string fmt(double x) { return parse_detail::render_real(x); }
inline std::string fmt(cplx z) { return parse_detail::render_complex(z); }

// Every record is computed inside this guard: numeric errors become
// failing records, never a crash.
template <typename Fn>
void guarded(VerificationReport& rep, const std::string& name, Fn&& fn) {
  try {
    fn();
  } catch (const NumericError& err) {
    rep.records.push_back(CheckRecord::failure(name, err.what()));
  }
}

inline double primary_tol(const SuiteConfig& cfg, double spec_default) {
  return cfg.check_tol > 0.0 ? cfg.check_tol : spec_default;
}

inline std::vector<BatteryItem> battery_or(const SuiteConfig& cfg,
                                           std::vector<BatteryItem> builtin,
                                           VerificationReport& rep) {
  if (cfg.battery_path.empty()) return builtin;
  rep.battery_source = cfg.battery_path;
  auto items = load_battery(cfg.battery_path);
  if (items.empty()) rep.warning_empty_battery = true;
  return items;
}

inline std::vector<cplx> load_probes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open probes file: " + path);
  std::vector<cplx> probes;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos || line[b] == '#') continue;
    for (char& ch : line)
      if (ch == ',') ch = '+';  // allow "re,im" rows; '+-' still parses
    std::string cleaned = line;
    // "re,im" became "re+im"; append the imaginary marker.
    if (cleaned.find('i') == std::string::npos) cleaned += "i";
    probes.push_back(parse_complex(cleaned));
  }
  return probes;
}

inline std::vector<double> default_ts(const SuiteConfig& cfg,
                                      std::vector<double> fallback) {
  return cfg.t_values.empty() ? fallback : cfg.t_values;
}

// ---------------------------------------------------------------------------

inline VerificationReport suite_transport(const SuiteConfig& cfg,
                                          VerificationReport rep) {
  const double tol_scale = primary_tol(cfg, 1e-6);
  const auto bloch_battery = battery_or(cfg, default_predual_battery(), rep);
  for (const auto& item : bloch_battery) {
    const std::string name = "bloch-transport " + item.name;
    guarded(rep, name, [&] {
      const double on_u = bloch_seminorm(item.f, Domain::halfplane, cfg.quad).value;
      const Expr pulled = mobius_comp(cayley_map(), item.f);
      const double on_d = bloch_seminorm(pulled, Domain::disk, cfg.quad).value;
      rep.records.push_back(CheckRecord::equal(name, cplx{0.5 * on_d}, cplx{on_u},
                                               tol_scale * (1.0 + on_u)));
    });
  }
  const auto l1_battery = cfg.battery_path.empty() ? default_bergman_battery()
                                                   : bloch_battery;
  const double gamma = cfg.alpha + 2.0;
  const double factor = std::pow(2.0, -cfg.alpha);
  for (const auto& item : l1_battery) {
    const std::string name =
        "l1-transport alpha=" + fmt(cfg.alpha) + " " + item.name;
    guarded(rep, name, [&] {
      const MeasureSpec m(cfg.alpha, Domain::halfplane);
      const double direct = l1_norm(item.f, m, cfg.quad).value;
      const Expr s_psi_f = weighted_composition(cayley_map(), gamma, item.f);
      const double transported =
          factor * l1_norm_disk(s_psi_f, cfg.alpha, cfg.quad).value;
      rep.records.push_back(CheckRecord::equal(
          name, cplx{transported}, cplx{direct}, tol_scale * std::max(direct, 1e-12)));
    });
  }
  return rep;
}

inline VerificationReport suite_isometry(const SuiteConfig& cfg,
                                         VerificationReport rep) {
  const double tol_scale = primary_tol(cfg, 1e-6);
  const auto battery = battery_or(cfg, default_predual_battery(), rep);
  const auto ts = default_ts(cfg, {1.0, 0.5, 0.1, -0.1, -0.5, -1.0});
  for (const auto& item : battery) {
    double base = 0.0;
    guarded(rep, "isometry base " + item.name, [&] {
      base = bloch_seminorm(item.f, Domain::halfplane, cfg.quad).value;
    });
    for (GroupKind kind : {GroupKind::scaling, GroupKind::translation}) {
      for (double t : ts) {
        const std::string name = std::string("isometry ") + group_name(kind) +
                                 " t=" + fmt(t) + " " + item.name;
        guarded(rep, name, [&] {
          GroupDescriptor d{kind, SpaceTag::predual_bloch, t, cfg.alpha + 2.0};
          const Expr moved = apply_group(d, item.f);
          const double v = bloch_seminorm(moved, Domain::halfplane, cfg.quad).value;
          rep.records.push_back(CheckRecord::equal(
              name, cplx{base}, cplx{v}, tol_scale * std::max(base, 1e-12)));
        });
      }
    }
  }
  return rep;
}

inline VerificationReport suite_group_law(const SuiteConfig& cfg,
                                          VerificationReport rep) {
  const double tol = primary_tol(cfg, 1e-12);
  auto battery = battery_or(cfg, default_predual_battery(), rep);
  if (battery.size() > 5) battery.resize(5);
  Rng rng(cfg.seed);
  std::vector<cplx> probes;
  for (int k = 0; k < 40; ++k)
    probes.push_back(rng.complex_in_box(-3.0, 3.0, 0.1, 4.0));

  const std::vector<std::pair<double, double>> steps = {
      {0.3, 0.4}, {1.0, -0.5}, {-0.2, -0.3}};
  for (const auto& item : battery) {
    for (GroupKind kind : {GroupKind::scaling, GroupKind::translation}) {
      for (SpaceTag space : {SpaceTag::predual_bloch, SpaceTag::l1_bergman}) {
        for (auto [t, s] : steps) {
          const std::string name = std::string("group-law ") + group_name(kind) +
                                   (space == SpaceTag::l1_bergman ? " L1" : " predual") +
                                   " t=" + fmt(t) + " s=" + fmt(s) + " " + item.name;
          guarded(rep, name, [&] {
            GroupDescriptor d{kind, space, 0.0, cfg.alpha + 2.0};
            const Expr two_step =
                apply_group(d.with_t(t), apply_group(d.with_t(s), item.f));
            const Expr one_step = apply_group(d.with_t(t + s), item.f);
            double worst = 0.0;
            for (cplx w : probes)
              worst = std::max(worst,
                               std::abs(eval(two_step, w) - eval(one_step, w)));
            rep.records.push_back(
                CheckRecord::equal(name, cplx{0.0}, cplx{worst}, tol));
          });
        }
      }
    }
  }
  return rep;
}

inline VerificationReport suite_adjoint(const SuiteConfig& cfg,
                                        VerificationReport rep) {
  const double tol_scale = primary_tol(cfg, 1e-5);
  const auto g_side = battery_or(cfg, default_predual_battery(), rep);
  const auto f_side = default_bergman_battery();
  const auto ts = default_ts(cfg, {0.5, 1.0});
  const double gamma = cfg.alpha + 2.0;
  const std::size_t pairs = std::min(g_side.size(), f_side.size());
  for (std::size_t k = 0; k < pairs; ++k) {
    const Expr& g = g_side[k].f;
    const Expr& f = f_side[k].f;
    cplx base{0.0};
    guarded(rep, "adjoint base pairing " + g_side[k].name, [&] {
      base = pairing(g, f, cfg.alpha, cfg.quad);
    });
    for (GroupKind kind : {GroupKind::scaling, GroupKind::translation}) {
      for (double t : ts) {
        const std::string name = std::string("adjoint ") + group_name(kind) +
                                 " t=" + fmt(t) + " <" + g_side[k].name + ", " +
                                 f_side[k].name + ">";
        guarded(rep, name, [&] {
          GroupDescriptor on_l1{kind, SpaceTag::l1_bergman, t, gamma};
          GroupDescriptor on_predual{kind, SpaceTag::predual_bloch, t, gamma};
          const cplx lhs = pairing(g, apply_group(on_l1, f), cfg.alpha, cfg.quad);
          const cplx rhs = pairing(apply_group(on_predual, g), f, cfg.alpha, cfg.quad);
          rep.records.push_back(CheckRecord::equal(
              name, lhs, rhs, tol_scale * (1.0 + std::abs(base))));
        });
      }
    }
  }
  return rep;
}

inline VerificationReport suite_generator(const SuiteConfig& cfg,
                                          VerificationReport rep) {
  const double order_tol = primary_tol(cfg, 0.1);
  auto battery = battery_or(cfg, default_predual_battery(), rep);
  if (battery.size() > 4) battery.resize(4);
  const std::vector<double> ladder = {1e-1, 1e-2, 1e-3, 1e-4};
  for (const auto& item : battery) {
    for (GroupKind kind : {GroupKind::scaling, GroupKind::translation}) {
      const std::string name =
          std::string("generator ") + group_name(kind) + " " + item.name;
      guarded(rep, name, [&] {
        GroupDescriptor d{kind, SpaceTag::predual_bloch, 0.0, cfg.alpha + 2.0};
        const GeneratorProbe probe = generator_fd(d, item.f, ladder, cfg.quad);
        rep.records.push_back(CheckRecord::equal(name + " order", cplx{1.0},
                                                 cplx{probe.fitted_order}, order_tol));
        bool decreasing = true;
        for (std::size_t i = 0; i + 1 < probe.residuals.size(); ++i)
          decreasing = decreasing && probe.residuals[i + 1] < probe.residuals[i];
        rep.records.push_back(
            CheckRecord::flag(name + " residuals decreasing", true, decreasing));
        rep.records.push_back(CheckRecord::info(
            name + " residual at t=1e-4", cplx{0.0}, cplx{probe.residuals.back()}));
      });
    }
  }
  return rep;
}

inline VerificationReport suite_continuity(const SuiteConfig& cfg,
                                           VerificationReport rep) {
  auto battery = battery_or(cfg, default_predual_battery(), rep);
  if (battery.size() > 5) battery.resize(5);
  const auto ladder = default_ts(cfg, {1.0, 0.1, 0.01, 0.001});
  for (const auto& item : battery) {
    for (GroupKind kind : {GroupKind::scaling, GroupKind::translation}) {
      const std::string name =
          std::string("continuity ") + group_name(kind) + " " + item.name;
      guarded(rep, name, [&] {
        GroupDescriptor d{kind, SpaceTag::predual_bloch, 0.0, cfg.alpha + 2.0};
        const double base = bloch_seminorm(item.f, Domain::halfplane, cfg.quad).value;
        const auto table = continuity_probe(d, item.f, ladder, cfg.quad);
        bool decreasing = true;
        for (std::size_t i = 0; i + 1 < table.size(); ++i)
          decreasing = decreasing && table[i + 1].second < table[i].second;
        rep.records.push_back(
            CheckRecord::flag(name + " decreasing", true, decreasing));
        rep.records.push_back(CheckRecord::upper_bound(
            name + " final <= 1e-2*seminorm", 1e-2 * base, table.back().second, 0.0));
      });
    }
  }
  return rep;
}

inline VerificationReport suite_embedding(const SuiteConfig& cfg,
                                          VerificationReport rep) {
  const double t = cfg.t_values.empty() ? 0.7 : cfg.t_values.front();
  if (!(t > 0.0)) throw ConfigInvalid("embedding suite needs t > 0");
  const double tol = primary_tol(cfg, 1e-6);

  // Single-point records run on a rule deep enough for 1e-7 truncation;
  // the nested S/S^2 fit runs on a lighter rule (its tolerance is 1%), and
  // the tabulated inner integrals on a lighter rule still.
  // Single-point records evaluate at moderate z, where the plain uniform
  // angular rule is spectrally accurate: no corner patch.  The nested fit
  // has a 1% budget; its outer rule is light and patchless, while the
  // tabulation rule keeps the patch because it is evaluated on the rings.
  QuadSpec eq_point = cfg.quad;
  eq_point.radial_nodes = std::min(cfg.quad.radial_nodes, 24);
  eq_point.angular_nodes = std::min(cfg.quad.angular_nodes, 64);
  eq_point.max_depth = std::min(cfg.quad.max_depth, 18);
  eq_point.tolerance = std::max(cfg.quad.tolerance, 1e-7);
  eq_point.corner_patch = false;

  QuadSpec eq_nested = eq_point;
  eq_nested.radial_nodes = 16;
  eq_nested.angular_nodes = 40;
  eq_nested.eps = 5e-3;
  eq_nested.max_depth = 8;
  eq_nested.tolerance = 2e-4;

  QuadSpec eq_inner = eq_nested;
  eq_inner.radial_nodes = 12;
  eq_inner.angular_nodes = 64;
  eq_inner.eps = 2e-3;
  eq_inner.max_depth = 8;
  eq_inner.corner_patch = true;

  guarded(rep, "embedding T(1)(0)", [&] {
    EmbeddingT T(t, cfg.alpha, eq_point);
    const cplx got = T.apply([](cplx) { return cplx{1.0}; }, cplx{0.0});
    rep.records.push_back(CheckRecord::equal("embedding T(1)(0)",
                                             cplx{1.0 / (cfg.alpha + 1.0)}, got, tol));
  });
  guarded(rep, "embedding T(0)", [&] {
    EmbeddingT T(t, cfg.alpha, eq_point);
    const cplx got = T.apply([](cplx) { return cplx{0.0}; }, cplx{0.35, 0.2});
    rep.records.push_back(
        CheckRecord::equal("embedding T(0) = 0", cplx{0.0}, got, 1e-14));
  });

  const std::vector<cplx> probes = {
      {0.0, 0.3}, {0.0, 1.0}, {0.0, 2.0},  {0.5, 0.8}, {-0.5, 0.8},
      {1.0, 1.5}, {-1.0, 1.5}, {0.2, 0.4}, {-0.3, 2.5}, {0.8, 0.6}};

  guarded(rep, "embedding S(1) constant case", [&] {
    EmbeddingS S(t, cfg.alpha, eq_point);
    const cplx w = probes[3];
    const cplx got = S.apply([](cplx) { return cplx{1.0}; }, w);
    const double z2 = std::norm(cayley_inverse_map()(w));
    const cplx want{std::pow(1.0 - z2, t) / (cfg.alpha + 1.0)};
    rep.records.push_back(CheckRecord::equal("embedding S(1) constant case", want,
                                             got, 10.0 * tol * (1.0 + std::abs(want))));
  });

  guarded(rep, "embedding scalar fit", [&] {
    EmbeddingT T(t, cfg.alpha, eq_nested);
    EmbeddingT T_inner(t, cfg.alpha, eq_inner);
    const MobiusMap psi_inv = cayley_inverse_map();
    auto one = [](cplx) { return cplx{1.0}; };

    // S^2 f(w) = T(z -> T(f. psi)(z))(psi^{-1}(w)): tabulate the inner
    // operator once on the rule nodes, then every probe is a single sum.
    // Full summation in the tabulation: values on the deepest rings carry
    // negligible outer weight but must never abort the sweep.
    const DiskRule& rule = T.rule();
    std::vector<cplx> inner(rule.nodes.size());
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      inner[j] = T_inner.apply(one, rule.nodes[j].z, RingPolicy::full);

    std::vector<cplx> ratio;
    for (cplx w : probes) {
      const cplx z = psi_inv(w);
      const cplx s1 = T.apply(one, z);
      const cplx s2 = T.apply_values(inner, z);
      ratio.push_back(s1 / s2);
    }
    cplx c_star{0.0};
    for (cplx c : ratio) c_star += c;
    c_star /= static_cast<double>(ratio.size());
    double spread = 0.0;
    for (cplx c : ratio)
      spread = std::max(spread, std::abs(c - c_star) / std::abs(c_star));
    rep.records.push_back(
        CheckRecord::upper_bound("embedding scalar spread <= 1%", 0.01, spread, 0.0));
    rep.records.push_back(CheckRecord::info("embedding scalar c* vs alpha+t+1",
                                            cplx{cfg.alpha + t + 1.0}, c_star));
  });
  return rep;
}

inline VerificationReport suite_spectral(const SuiteConfig& cfg,
                                         VerificationReport rep) {
  for (cplx lam : cfg.lambdas)
    if (lam.real() == 0.0)
      throw ConfigInvalid("spectral suite: Re(lambda) = 0 lies in the spectrum");

  const std::vector<cplx> circle_lams =
      cfg.lambdas.empty() ? std::vector<cplx>{{1.0, 0.0}, {2.0, 3.0}, {-0.5, 1.0}}
                          : cfg.lambdas;
  const std::vector<cplx> resolvent_lams =
      cfg.lambdas.empty() ? std::vector<cplx>{{2.0, 0.0}, {1.0, 1.0}, {-2.0, 0.0}}
                          : cfg.lambdas;
  const std::vector<cplx> norm_lams =
      cfg.lambdas.empty() ? std::vector<cplx>{{2.0, 0.0}, {-1.0, 0.0}}
                          : cfg.lambdas;

  Rng rng(cfg.seed);

  // Spectral circle: exact algebra, machine-precision deviation.
  for (cplx lam : circle_lams) {
    const std::string name = "spectral-circle lambda=" + fmt(lam);
    guarded(rep, name, [&] {
      std::vector<double> rs(1000);
      for (double& r : rs) r = rng.uniform(-40.0, 40.0);
      const double dev = spectral_circle_check(lam, rs);
      rep.records.push_back(
          CheckRecord::equal(name, cplx{0.0}, cplx{dev}, primary_tol(cfg, 1e-12)));
      rep.records.push_back(CheckRecord::info(
          name + " center,radius", cplx{1.0 / (2.0 * lam.real())},
          cplx{1.0 / (2.0 * std::abs(lam.real()))}));
    });
  }

  std::vector<cplx> probes = {{0.0, 2.0}, {0.0, 2.2}, {0.0, 1.8},
                              {0.3, 2.0}, {-0.3, 2.0}};
  if (!cfg.probes_path.empty()) probes = load_probes(cfg.probes_path);
  for (cplx w : probes)
    if (!(w.imag() > 0.0))
      throw ConfigInvalid("spectral probes must lie in the upper half-plane");

  std::vector<BatteryItem> h_items;
  {
    auto add = [&](const std::string& n, Expr e) {
      BatteryItem it;
      it.name = n;
      it.f = std::move(e);
      h_items.push_back(std::move(it));
    };
    add("(w+i)^-2", power(shift_arg(imag_unit, variable()), cplx{-2.0}));
    add("(w+i)^-1", power(shift_arg(imag_unit, variable()), cplx{-1.0}));
    add("cayley_inv * (w+i)^-1",
        product({mobius_comp(cayley_inverse_map(), variable()),
                 power(shift_arg(imag_unit, variable()), cplx{-1.0})}));
  }

  for (cplx lam : resolvent_lams) {
    for (const auto& item : h_items) {
      const std::string name =
          "resolvent-ode lambda=" + fmt(lam) + " h=" + item.name;
      guarded(rep, name, [&] {
        ResolventQuery query{lam, item.f, probes, cfg.quad};
        const double residual = resolvent_identity_residual(query);
        rep.records.push_back(CheckRecord::equal(name, cplx{0.0}, cplx{residual},
                                                 primary_tol(cfg, 1e-5)));
      });
      const std::string xname =
          "resolvent-cross-oracle lambda=" + fmt(lam) + " h=" + item.name;
      guarded(rep, xname, [&] {
        double worst = 0.0;
        for (cplx w : probes) {
          const cplx closed = scaling_resolvent(
              [&](cplx z) { return eval(item.f, z); }, w, lam, cfg.quad);
          cplx laplace;
          if (lam.real() > 0.0) {
            laplace = laplace_resolvent_quad(
                [&](double s) { return eval(item.f, std::exp(s) * w); }, lam,
                cfg.quad);
          } else {
            laplace = laplace_resolvent_quad(
                [&](double s) { return eval(item.f, std::exp(-s) * w); }, lam,
                cfg.quad);
          }
          worst = std::max(worst, std::abs(closed - laplace));
        }
        rep.records.push_back(
            CheckRecord::equal(xname, cplx{0.0}, cplx{worst}, 1e-8));
      });
    }
  }

  // Norm bound ||R(lambda)|| <= 1/|Re lambda| over the predual battery.
  const auto battery = battery_or(cfg, default_predual_battery(), rep);
  for (cplx lam : norm_lams) {
    const std::string name = "resolvent-norm lambda=" + fmt(lam);
    guarded(rep, name, [&] {
      std::vector<Expr> hs;
      for (const auto& item : battery) hs.push_back(item.f);
      std::vector<double> ratios;
      const SpectralReport sr = resolvent_norm_probe(lam, hs, cfg.quad, &ratios);
      for (std::size_t k = 0; k < ratios.size(); ++k)
        rep.records.push_back(CheckRecord::upper_bound(
            name + " ratio " + battery[k].name, sr.norm_bound, ratios[k],
            primary_tol(cfg, 1e-4)));
      rep.records.push_back(CheckRecord::info(name + " max ratio vs bound",
                                              cplx{sr.norm_bound},
                                              cplx{sr.max_observed_ratio}));
    });
  }

  // First resolvent identity R(l1) - R(l2) = (l2 - l1) R(l1) R(l2).
  guarded(rep, "first-resolvent-identity", [&] {
    const cplx l1{1.0}, l2{2.0};
    QuadSpec inner = cfg.quad;
    inner.tolerance = std::max(1e-10, cfg.quad.tolerance);
    const Expr h = h_items[0].f;
    auto h_eval = [&](cplx z) { return eval(h, z); };
    double worst = 0.0;
    for (cplx w : std::vector<cplx>{{0.0, 1.0}, {1.0, 1.0}, {0.0, 2.0}}) {
      const cplx r1 = scaling_resolvent(h_eval, w, l1, cfg.quad);
      const cplx r2 = scaling_resolvent(h_eval, w, l2, cfg.quad);
      const cplx nested = scaling_resolvent(
          [&](cplx z) { return scaling_resolvent(h_eval, z, l2, inner); }, w, l1,
          cfg.quad);
      worst = std::max(worst, std::abs(r1 - r2 - (l2 - l1) * nested));
    }
    rep.records.push_back(CheckRecord::equal("first-resolvent-identity", cplx{0.0},
                                             cplx{worst}, 1e-6));
  });

  // Reflection symmetry R(conj lambda)(reflect h) = reflect(R(lambda) h).
  guarded(rep, "resolvent-reflection-symmetry", [&] {
    const cplx lam{1.0, 0.7};
    const Expr h = h_items[0].f;
    const Expr hr = reflect(h);
    double worst = 0.0;
    for (cplx w : std::vector<cplx>{{0.0, 1.0}, {0.5, 1.2}}) {
      const cplx lhs = scaling_resolvent([&](cplx z) { return eval(hr, z); }, w,
                                         std::conj(lam), cfg.quad);
      const cplx rhs = std::conj(scaling_resolvent(
          [&](cplx z) { return eval(h, z); }, -std::conj(w), lam, cfg.quad));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rep.records.push_back(CheckRecord::equal("resolvent-reflection-symmetry",
                                             cplx{0.0}, cplx{worst}, 1e-8));
  });

  // Candidate eigenfunctions c w^lambda must be rejected.
  for (int k = 0; k < 20; ++k) {
    const cplx lam = rng.complex_in_box(-2.0, 2.0, -2.0, 2.0);
    const cplx c = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * pi));
    const std::string name =
        "eigen-reject lambda=" + fmt(lam) + " c=" + fmt(c);
    guarded(rep, name, [&] {
      const EigenCandidateResult res = eigen_candidate_check(lam, c, cfg.quad);
      const bool rejected = res.ode_holds && !res.verdict.in_predual;
      rep.records.push_back(CheckRecord::flag(name, true, rejected));
      rep.records.push_back(CheckRecord::equal(
          name + " |g(i)|", cplx{res.value_at_i}, cplx{res.verdict.value_at_i},
          1e-10 * (1.0 + res.value_at_i)));
    });
  }
  return rep;
}

inline VerificationReport suite_membership(const SuiteConfig& cfg,
                                           VerificationReport rep) {
  const auto battery = battery_or(cfg, default_predual_battery(), rep);
  for (const auto& item : battery) {
    const std::string name = "membership " + item.name;
    guarded(rep, name, [&] {
      const MembershipVerdict v = membership(item.f, cfg.quad);
      if (item.expect.count("in_predual"))
        rep.records.push_back(CheckRecord::flag(name + " in_predual",
                                                item.expect.at("in_predual"),
                                                v.in_predual));
      if (item.expect.count("bloch"))
        rep.records.push_back(
            CheckRecord::flag(name + " bloch", item.expect.at("bloch"), v.bloch_finite));
      if (item.expect.count("little_bloch"))
        rep.records.push_back(CheckRecord::flag(
            name + " little_bloch", item.expect.at("little_bloch"), v.little_bloch));
      if (item.expect.count("vanishes_at_i"))
        rep.records.push_back(CheckRecord::flag(name + " vanishes_at_i",
                                                item.expect.at("vanishes_at_i"),
                                                v.vanishes_at_i));
      if (item.expect.empty())
        rep.records.push_back(CheckRecord::info(
            name + " in_predual (unasserted)", cplx{1.0}, cplx{v.in_predual ? 1.0 : 0.0}));
    });
  }

  // Pure-power probes: c w^{i beta} is never in the predual.
  for (cplx c : std::vector<cplx>{{1.0, 0.0}, {0.0, 2.0}, {-0.3, 0.0}}) {
    const std::string name = "membership c*w^i c=" + fmt(c);
    guarded(rep, name, [&] {
      const Expr g = product({constant(c), power(variable(), imag_unit)});
      const MembershipVerdict v = membership(g, cfg.quad);
      rep.records.push_back(CheckRecord::flag(name + " rejected", true, !v.in_predual));
      rep.records.push_back(CheckRecord::equal(
          name + " |g(i)|", cplx{std::abs(c) * std::exp(-pi / 2.0)},
          cplx{v.value_at_i}, 1e-10));
    });
  }

  // Surrogate power probes (w+i)^nu: in B_inf,o(U) iff Re(nu) < 0; the
  // i-shifted versions land in the predual.
  for (double nu : {-0.5, -1.0, -2.0}) {
    const std::string name = "membership (w+i)^" + fmt(nu);
    guarded(rep, name, [&] {
      const Expr f = power(shift_arg(imag_unit, variable()), cplx{nu});
      const MembershipVerdict v = membership(f, cfg.quad);
      rep.records.push_back(CheckRecord::flag(name + " little-bloch", true,
                                              v.bloch_finite && v.little_bloch));
      const Expr shifted = battery_detail::shifted_power(imag_unit, cplx{nu});
      const MembershipVerdict vs = membership(shifted, cfg.quad);
      rep.records.push_back(
          CheckRecord::flag(name + " shifted in_predual", true, vs.in_predual));
    });
  }
  for (double nu : {0.5, 1.0}) {
    const std::string name = "membership (w+i)^" + fmt(nu);
    guarded(rep, name, [&] {
      const Expr f = power(shift_arg(imag_unit, variable()), cplx{nu});
      const MembershipVerdict v = membership(f, cfg.quad);
      rep.records.push_back(
          CheckRecord::flag(name + " bloch diverges", true, !v.bloch_finite));
    });
  }

  // (w - i)^nu is singular at i; both behaviors are recorded on the sector
  // Re(w) > 0 that avoids the cut, without asserting either reading.
  for (double nu : {-1.0, -0.5}) {
    const std::string name = "membership (w-i)^" + fmt(nu) + " sector";
    guarded(rep, name, [&] {
      const BranchSpec cut{-pi / 2.0, imag_unit};
      const Expr f = power(variable(), cplx{nu}, cut);
      const auto sector = std::make_pair(0.05, pi / 2.0);
      double semi = std::numeric_limits<double>::infinity();
      try {
        semi = bloch_seminorm_sector(f, cfg.quad, sector).value;
      } catch (const SupDiverging& d) {
        semi = d.last_value;
      }
      rep.records.push_back(
          CheckRecord::info(name + " seminorm", cplx{0.0}, cplx{semi}));
      double last_ring = std::numeric_limits<double>::infinity();
      try {
        const auto profile = little_bloch_profile(f, cfg.quad, 8, sector);
        last_ring = profile.back().second;
      } catch (const SupDiverging& d) {
        last_ring = d.last_value;
      }
      rep.records.push_back(
          CheckRecord::info(name + " last ring sup", cplx{0.0}, cplx{last_ring}));
    });
  }
  return rep;
}

inline VerificationReport suite_pairing(const SuiteConfig& cfg,
                                        VerificationReport rep) {
  const auto g_side = battery_or(cfg, default_predual_battery(), rep);
  const auto f_side = default_bergman_battery();
  const std::size_t pairs = std::min(g_side.size(), f_side.size());
  double max_ratio = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const Expr& g = g_side[k].f;
    const Expr& f = f_side[k].f;
    const std::string name = "pairing <" + g_side[k].name + ", " + f_side[k].name + ">";
    guarded(rep, name, [&] {
      const cplx v = pairing(g, f, cfg.alpha, cfg.quad);
      rep.records.push_back(CheckRecord::info(name, cplx{0.0}, v));

      // Algebraic identities compare quadratures of rescaled integrands;
      // the fixed full rule keeps the two sides node-for-node identical.
      const cplx a{0.7, -0.3};
      const cplx v_full = pairing(g, f, cfg.alpha, cfg.quad, RingPolicy::full);
      const cplx scaled_f =
          pairing(g, product({constant(a), f}), cfg.alpha, cfg.quad, RingPolicy::full);
      rep.records.push_back(CheckRecord::equal(
          name + " sesquilinear", std::conj(a) * v_full, scaled_f,
          primary_tol(cfg, 1e-10) * (1.0 + std::abs(v_full))));
      const cplx scaled_g =
          pairing(product({constant(a), g}), f, cfg.alpha, cfg.quad, RingPolicy::full);
      rep.records.push_back(
          CheckRecord::equal(name + " linear in g", a * v_full, scaled_g,
                             primary_tol(cfg, 1e-10) * (1.0 + std::abs(v_full))));

      const double gn = bloch_seminorm(g, Domain::halfplane, cfg.quad).value;
      const double fn = l1_norm(f, MeasureSpec(cfg.alpha, Domain::halfplane),
                                cfg.quad).value;
      if (gn > 0.0 && fn > 0.0)
        max_ratio = std::max(max_ratio, std::abs(v) / (gn * fn));
    });
  }
  rep.records.push_back(CheckRecord::info(
      "pairing empirical boundedness constant", cplx{0.0}, cplx{max_ratio}));

  // Tail stability: refined grid shifts the value only inside tolerance.
  for (std::size_t k = 0; k < std::min<std::size_t>(3, pairs); ++k) {
    const std::string name = "pairing tail " + g_side[k].name;
    guarded(rep, name, [&] {
      const cplx v = pairing(g_side[k].f, f_side[k].f, cfg.alpha, cfg.quad);
      QuadSpec fine = cfg.quad;
      fine.radial_nodes = cfg.quad.radial_nodes * 2;
      fine.angular_nodes = cfg.quad.angular_nodes * 2;
      const cplx vf = pairing(g_side[k].f, f_side[k].f, cfg.alpha, fine);
      rep.records.push_back(CheckRecord::info(name + " refinement drift",
                                              cplx{0.0}, cplx{std::abs(v - vf)}));
    });
  }
  return rep;
}

inline VerificationReport suite_growth(const SuiteConfig& cfg,
                                       VerificationReport rep) {
  const auto battery = battery_or(cfg, default_bergman_battery(), rep);
  for (const auto& item : battery) {
    const std::string name = "growth " + item.name;
    guarded(rep, name, [&] {
      const double k1 = growth_ratio(item.f, cfg.alpha, cfg.quad);
      QuadSpec fine = cfg.quad;
      fine.radial_nodes = cfg.quad.radial_nodes * 2;
      fine.angular_nodes = cfg.quad.angular_nodes * 2;
      const double k2 = growth_ratio(item.f, cfg.alpha, fine, 10);
      rep.records.push_back(
          CheckRecord::equal(name + " grid stability", cplx{k1}, cplx{k2},
                             primary_tol(cfg, 0.01) * k1));
      const double k_base =
          growth_ratio(item.f, cfg.alpha, cfg.quad, 8, RingPolicy::full);
      const double k_scaled =
          growth_ratio(product({constant(cplx{10.0}), item.f}), cfg.alpha, cfg.quad,
                       8, RingPolicy::full);
      rep.records.push_back(CheckRecord::equal(name + " scale invariance", cplx{k_base},
                                               cplx{k_scaled}, 1e-10 * k_base));
      rep.records.push_back(CheckRecord::info(name + " empirical K", cplx{0.0},
                                              cplx{k1}));
    });
  }
  return rep;
}

}  // namespace suite_detail

// Execute one verification suite.  Configuration errors throw; numeric
// failures inside checks surface as failing records.
inline VerificationReport run_suite(const SuiteConfig& cfg) {
  if (!(cfg.alpha > -1.0)) throw ConfigInvalid("alpha must be > -1");
  try {
    cfg.quad.validate();
  } catch (const InvalidSpec& e) {
    throw ConfigInvalid(e.what());
  }
  if (!cfg.battery_path.empty()) {
    std::ifstream probe(cfg.battery_path);
    if (!probe) throw ConfigInvalid("battery file not found: " + cfg.battery_path);
  }

  VerificationReport rep;
  rep.suite = cfg.suite;
  rep.alpha = cfg.alpha;
  rep.seed = cfg.seed;
  rep.quad = cfg.quad;

  using Runner = VerificationReport (*)(const SuiteConfig&, VerificationReport);
  static const std::map<std::string, Runner> table = {
      {"transport", suite_detail::suite_transport},
      {"isometry", suite_detail::suite_isometry},
      {"group-law", suite_detail::suite_group_law},
      {"adjoint", suite_detail::suite_adjoint},
      {"generator", suite_detail::suite_generator},
      {"continuity", suite_detail::suite_continuity},
      {"embedding", suite_detail::suite_embedding},
      {"spectral", suite_detail::suite_spectral},
      {"membership", suite_detail::suite_membership},
      {"pairing", suite_detail::suite_pairing},
      {"growth", suite_detail::suite_growth},
  };
  auto it = table.find(cfg.suite);
  if (it == table.end()) throw UnknownSuite(cfg.suite);
  return it->second(cfg, std::move(rep));
}

}  // namespace uhp
