// verify: suite runner for the half-plane Bergman/Bloch duality toolkit.
//
//   verify <suite> [--alpha A] [--t T...] [--lambda RE,IM...] [--battery FILE]
//          [--probes FILE] [--tol T] [--radial-nodes N] [--angular-nodes N]
//          [--eps E] [--out FILE] [--format json|csv] [--seed S]
//
// Exit status is 0 exactly when every record in the suite passes.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uhp/report.hpp"
#include "uhp/suites.hpp"

namespace {

uhp::cplx parse_lambda(const std::string& text) {
  // "re,im" or any complex literal the expression grammar accepts.
  const auto comma = text.find(',');
  if (comma != std::string::npos) {
    const double re = std::stod(text.substr(0, comma));
    const double im = std::stod(text.substr(comma + 1));
    return {re, im};
  }
  return uhp::parse_complex(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification suites for the Bergman space of the "
               "upper half-plane and its predual"};
  app.require_subcommand(1);

  uhp::SuiteConfig cfg;
  std::vector<std::string> lambda_args;
  std::string out_path;
  std::string format = "json";
  bool show_timing = false;

  for (const std::string& name : uhp::suite_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the '" + name + "' suite");
    sub->add_option("--alpha", cfg.alpha, "weight exponent alpha (> -1)");
    sub->add_option("--t", cfg.t_values, "group parameter(s) t");
    sub->add_option("--lambda", lambda_args, "resolvent parameter(s), re,im");
    sub->add_option("--battery", cfg.battery_path, "battery file of expression literals");
    sub->add_option("--probes", cfg.probes_path, "probe-point file (re,im per line)");
    sub->add_option("--tol", cfg.quad.tolerance, "adaptive quadrature tolerance");
    sub->add_option("--check-tol", cfg.check_tol, "override per-check tolerance");
    sub->add_option("--radial-nodes", cfg.quad.radial_nodes, "radial quadrature nodes");
    sub->add_option("--angular-nodes", cfg.quad.angular_nodes, "angular quadrature nodes");
    sub->add_option("--eps", cfg.quad.eps, "boundary truncation epsilon");
    sub->add_option("--out", out_path, "write the report to this file");
    sub->add_option("--format", format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_flag("--timing", show_timing, "print wall time to stderr");
    sub->callback([&cfg, name] { cfg.suite = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (const std::string& s : lambda_args)
      cfg.lambdas.push_back(parse_lambda(s));

    const auto start = std::chrono::steady_clock::now();
    const uhp::VerificationReport report = uhp::run_suite(cfg);
    const auto stop = std::chrono::steady_clock::now();

    const std::string rendered =
        format == "csv" ? report.to_csv() : report.to_json();
    if (out_path.empty()) {
      std::cout << rendered;
    } else {
      uhp::emit(report,
                format == "csv" ? uhp::ReportFormat::csv : uhp::ReportFormat::json,
                out_path);
    }

    int failed = 0;
    for (const auto& r : report.records)
      if (!r.pass) ++failed;
    std::fprintf(stderr, "%s: %zu checks, %d failed\n", cfg.suite.c_str(),
                 report.records.size(), failed);
    if (show_timing)
      std::fprintf(stderr, "wall time: %.3f s\n",
                   std::chrono::duration<double>(stop - start).count());
    return report.overall_pass() ? 0 : 1;
  } catch (const uhp::UnknownSuite& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const uhp::ConfigInvalid& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
