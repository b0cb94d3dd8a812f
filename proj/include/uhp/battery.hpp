#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "uhp/errors.hpp"
#include "uhp/expr.hpp"
#include "uhp/parse.hpp"

namespace uhp {

// One battery entry: an expression plus optional expected-membership
// annotations from the file (`# expect: key=true ...`).
struct BatteryItem {
  std::string name;
  Expr f;
  std::map<std::string, bool> expect;
};

// Battery files carry one expression literal per line; `#` starts a
// comment, and a trailing `# expect: k=v ...` annotates expectations.
inline std::vector<BatteryItem> load_battery(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open battery file: " + path);
  std::vector<BatteryItem> items;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string expr_part = line;
    std::string annot;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      expr_part = line.substr(0, hash);
      annot = line.substr(hash + 1);
    }
    // Trim.
    const auto b = expr_part.find_first_not_of(" \t\r\n");
    const auto e = expr_part.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    expr_part = expr_part.substr(b, e - b + 1);

    BatteryItem item;
    item.name = expr_part;
    try {
      item.f = parse_expr(expr_part);
    } catch (const ParseError& err) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + err.what());
    }
    if (auto pos = annot.find("expect:"); pos != std::string::npos) {
      std::istringstream kvs(annot.substr(pos + 7));
      std::string kv;
      while (kvs >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw ParseError(path + ":" + std::to_string(lineno) +
                           ": bad expect annotation '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (val != "true" && val != "false")
          throw ParseError(path + ":" + std::to_string(lineno) +
                           ": expect values must be true/false");
        item.expect[key] = val == "true";
      }
    }
    items.push_back(std::move(item));
  }
  return items;
}

namespace battery_detail {

inline Expr cayley_inv_expr() { return mobius_comp(cayley_inverse_map(), variable()); }

inline Expr shifted_power(cplx shift, cplx nu) {
  // (w + shift)^nu - (i + shift)^nu: vanishes at i by construction.
  const cplx at_i = pow_branch(imag_unit + shift, nu, BranchSpec::principal());
  return sum({power(shift_arg(shift, variable()), nu), constant(-at_i)});
}

}  // namespace battery_detail

// Predual-side battery: rational functions built from the inverse Cayley
// transform and decaying shifted powers, all vanishing at i.  These are
// exactly the pullbacks of disk polynomials plus shifted-power probes.
inline std::vector<BatteryItem> default_predual_battery() {
  using battery_detail::cayley_inv_expr;
  using battery_detail::shifted_power;
  const Expr k = cayley_inv_expr();
  std::vector<BatteryItem> items;
  auto add = [&](const std::string& name, Expr f) {
    BatteryItem item;
    item.name = name;
    item.f = std::move(f);
    item.expect["in_predual"] = true;
    items.push_back(std::move(item));
  };
  add("cayley_inv", k);
  add("pow(cayley_inv, 2)", power(k, cplx{2.0}));
  add("pow(cayley_inv, 3)", power(k, cplx{3.0}));
  add("shifted (w+i)^-1", shifted_power(imag_unit, cplx{-1.0}));
  add("shifted (w+i)^-2", shifted_power(imag_unit, cplx{-2.0}));
  add("shifted (w+i)^-0.5", shifted_power(imag_unit, cplx{-0.5}));
  add("cayley_inv * (w+i)^-1",
      product({k, power(shift_arg(imag_unit, variable()), cplx{-1.0})}));
  add("shifted (w+i)^-3", shifted_power(imag_unit, cplx{-3.0}));
  {
    // psi^{-1}(2w) - psi^{-1}(2i)
    const MobiusMap doubled(cplx{2.0}, -imag_unit, cplx{2.0}, imag_unit);
    add("mobius (2w-i)/(2w+i) - 1/3",
        sum({mobius_comp(doubled, variable()), constant(cplx{-1.0 / 3.0})}));
  }
  add("0.3i*cayley_inv + 0.7*cayley_inv^3",
      sum({product({constant(cplx{0.0, 0.3}), k}),
           product({constant(cplx{0.7}), power(k, cplx{3.0})})}));
  return items;
}

// Bergman-side battery: analytic functions decaying fast enough to be
// integrable against Im(w)^alpha for every alpha in [0, 1].
inline std::vector<BatteryItem> default_bergman_battery() {
  std::vector<BatteryItem> items;
  auto add = [&](const std::string& name, Expr f) {
    BatteryItem item;
    item.name = name;
    item.f = std::move(f);
    items.push_back(std::move(item));
  };
  auto spow = [](cplx shift, cplx nu) {
    return power(shift_arg(shift, variable()), nu);
  };
  const cplx i = imag_unit;
  add("(w+i)^-4", spow(i, cplx{-4.0}));
  add("(w+i)^-5", spow(i, cplx{-5.0}));
  add("(w+2i)^-4", spow(2.0 * i, cplx{-4.0}));
  add("(w+i)^-6", spow(i, cplx{-6.0}));
  add("(w+i)^-2 * (w+2i)^-2",
      product({spow(i, cplx{-2.0}), spow(2.0 * i, cplx{-2.0})}));
  add("cayley_inv * (w+i)^-4",
      product({battery_detail::cayley_inv_expr(), spow(i, cplx{-4.0})}));
  add("(w+i)^-3.5", spow(i, cplx{-3.5}));
  add("2i * (w+i)^-4", product({constant(2.0 * i), spow(i, cplx{-4.0})}));
  add("(w+i)^-4 + (w+2i)^-4",
      sum({spow(i, cplx{-4.0}), spow(2.0 * i, cplx{-4.0})}));
  add("(w+i)^-3 * (w+3i)^-1",
      product({spow(i, cplx{-3.0}), spow(3.0 * i, cplx{-1.0})}));
  return items;
}

}  // namespace uhp
