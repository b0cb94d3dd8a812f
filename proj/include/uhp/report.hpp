#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "uhp/core.hpp"
#include "uhp/errors.hpp"
#include "uhp/parse.hpp"
#include "uhp/quadrature.hpp"

namespace uhp {

// One verification record.  `tolerance` is the absolute slack already
// scaled by whatever the check prescribes; +infinity marks a report-only
// record (always passes, carries data for the reader).
struct CheckRecord {
  std::string name;
  cplx claimed{};
  cplx computed{};
  double tolerance = 0.0;
  bool pass = false;

  static CheckRecord equal(std::string name, cplx claimed, cplx computed,
                           double tol) {
    CheckRecord r;
    r.name = std::move(name);
    r.claimed = claimed;
    r.computed = computed;
    r.tolerance = tol;
    r.pass = std::abs(claimed - computed) <= tol;
    return r;
  }

  static CheckRecord upper_bound(std::string name, double bound, double computed,
                                 double slack) {
    CheckRecord r;
    r.name = std::move(name);
    r.claimed = cplx{bound};
    r.computed = cplx{computed};
    r.tolerance = slack;
    r.pass = computed <= bound + slack;
    return r;
  }

  static CheckRecord flag(std::string name, bool expected, bool got) {
    CheckRecord r;
    r.name = std::move(name);
    r.claimed = cplx{expected ? 1.0 : 0.0};
    r.computed = cplx{got ? 1.0 : 0.0};
    r.tolerance = 0.0;
    r.pass = expected == got;
    return r;
  }

  static CheckRecord info(std::string name, cplx claimed, cplx computed) {
    CheckRecord r;
    r.name = std::move(name);
    r.claimed = claimed;
    r.computed = computed;
    r.tolerance = std::numeric_limits<double>::infinity();
    r.pass = true;
    return r;
  }

  static CheckRecord failure(std::string name, const std::string& why) {
    CheckRecord r;
    r.name = std::move(name) + " [error: " + why + "]";
    r.claimed = cplx{0.0};
    r.computed = cplx{std::numeric_limits<double>::quiet_NaN()};
    r.tolerance = 0.0;
    r.pass = false;
    return r;
  }
};

struct VerificationReport {
  std::string suite;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  QuadSpec quad;
  std::string battery_source = "builtin";
  bool warning_empty_battery = false;
  std::vector<CheckRecord> records;

  bool overall_pass() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return true;
  }

  // Bit-stable serialization: keys emitted in sorted order, every float
  // rendered with %.12e.  Reports with identical content are identical
  // byte-for-byte.
  std::string to_json() const {
    std::string out = "{\n";
    out += "  \"alpha\": \"" + format_real(alpha) + "\",\n";
    out += "  \"checks\": [";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const CheckRecord& r = records[i];
      out += i ? ",\n    {" : "\n    {";
      out += "\"claimed\": \"" + format_cplx(r.claimed) + "\", ";
      out += "\"computed\": \"" + format_cplx(r.computed) + "\", ";
      out += "\"name\": " + nlohmann::json(r.name).dump() + ", ";
      out += std::string("\"pass\": ") + (r.pass ? "true" : "false") + ", ";
      out += "\"tolerance\": \"" + format_real(r.tolerance) + "\"}";
    }
    out += records.empty() ? "],\n" : "\n  ],\n";
    out += "  \"environment\": {";
    out += "\"angular_nodes\": " + std::to_string(quad.angular_nodes) + ", ";
    out += "\"battery\": " + nlohmann::json(battery_source).dump() + ", ";
    out += "\"eps\": \"" + format_real(quad.eps) + "\", ";
    out += "\"max_depth\": " + std::to_string(quad.max_depth) + ", ";
    out += "\"path_nodes\": " + std::to_string(quad.path_nodes) + ", ";
    out += "\"radial_nodes\": " + std::to_string(quad.radial_nodes) + ", ";
    out += "\"seed\": " + std::to_string(seed) + ", ";
    out += "\"tolerance\": \"" + format_real(quad.tolerance) + "\"},\n";
    out += std::string("  \"overall_pass\": ") + (overall_pass() ? "true" : "false") +
           ",\n";
    out += "  \"suite\": " + nlohmann::json(suite).dump() + ",\n";
    out += std::string("  \"warning_empty_battery\": ") +
           (warning_empty_battery ? "true" : "false") + "\n";
    out += "}\n";
    return out;
  }

  std::string to_csv() const {
    std::string out = "suite,check,claimed,computed,tolerance,pass\n";
    for (const auto& r : records) {
      std::string name = r.name;
      for (char& c : name)
        if (c == ',') c = ';';
      out += suite + "," + name + "," + format_cplx(r.claimed) + "," +
             format_cplx(r.computed) + "," + format_real(r.tolerance) + "," +
             (r.pass ? "true" : "false") + "\n";
    }
    return out;
  }
};

inline cplx parse_formatted_cplx(const std::string& s) {
  if (s == "inf") return cplx{std::numeric_limits<double>::infinity()};
  return parse_complex(s);
}

inline VerificationReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  VerificationReport rep;
  rep.suite = j.at("suite").get<std::string>();
  rep.alpha = parse_formatted_cplx(j.at("alpha").get<std::string>()).real();
  rep.warning_empty_battery = j.at("warning_empty_battery").get<bool>();
  const auto& env = j.at("environment");
  rep.quad.angular_nodes = env.at("angular_nodes").get<int>();
  rep.quad.radial_nodes = env.at("radial_nodes").get<int>();
  rep.quad.max_depth = env.at("max_depth").get<int>();
  rep.quad.path_nodes = env.at("path_nodes").get<int>();
  rep.quad.eps = parse_formatted_cplx(env.at("eps").get<std::string>()).real();
  rep.quad.tolerance =
      parse_formatted_cplx(env.at("tolerance").get<std::string>()).real();
  rep.battery_source = env.at("battery").get<std::string>();
  rep.seed = env.at("seed").get<std::uint64_t>();
  for (const auto& c : j.at("checks")) {
    CheckRecord r;
    r.name = c.at("name").get<std::string>();
    r.claimed = parse_formatted_cplx(c.at("claimed").get<std::string>());
    r.computed = parse_formatted_cplx(c.at("computed").get<std::string>());
    const std::string tol = c.at("tolerance").get<std::string>();
    r.tolerance = tol == "inf" ? std::numeric_limits<double>::infinity()
                               : parse_formatted_cplx(tol).real();
    r.pass = c.at("pass").get<bool>();
    rep.records.push_back(std::move(r));
  }
  return rep;
}

enum class ReportFormat { json, csv };

inline void emit(const VerificationReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << (format == ReportFormat::json ? report.to_json() : report.to_csv());
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace uhp
