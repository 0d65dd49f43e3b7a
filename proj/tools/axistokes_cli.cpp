#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "axistokes/domain.hpp"
#include "axistokes/errors.hpp"
#include "axistokes/experiment.hpp"
#include "axistokes/grading.hpp"

namespace {

std::map<int, double> parse_overrides(const std::vector<std::string>& raw) {
  std::map<int, double> out;
  for (const auto& s : raw) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--vertex-omega expects index=value");
    out[std::stoi(s.substr(0, eq))] = std::stod(s.substr(eq + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axisymmetric Stokes experiments on graded meshes"};
  app.set_config("--config")->configurable(false);

  axistokes::ExperimentConfig cfg;
  cfg.out_dir = "out";
  std::vector<std::string> omega_raw;
  std::vector<std::string> emit = {"markdown", "csv"};

  auto* run = app.add_subcommand("run", "Run a convergence study");
  run->add_option("--domain", cfg.domain,
                  "Built-in name (omega1, omega2, unit_square) or JSON file");
  run->add_option("--kappa", cfg.kappa, "Grading parameter in (0, 1/2] or 'auto'");
  run->add_option("--k", cfg.k, "Pressure degree (velocity degree k+1)");
  run->add_option("--levels", cfg.levels, "Deepest refinement level (>= 2)");
  run->add_option("--data", cfg.data, "Forcing: paper | manufactured | zero");
  run->add_option("--tol", cfg.rel_tol, "Solver relative tolerance");
  run->add_option("--direct-threshold", cfg.direct_threshold,
                  "Largest system handed to the direct solver");
  run->add_option("--out-dir", cfg.out_dir, "Report directory");
  run->add_option("--emit", emit, "Report formats: markdown, csv");
  run->add_flag("--dump-mesh", cfg.dump_mesh, "Export every mesh level");
  run->add_option("--vertex-omega", omega_raw,
                  "Pencil eigenvalue override, index=value (repeatable)");

  std::string exp_domain = "omega1";
  std::vector<std::string> exp_omega_raw;
  int exp_k = 1;
  auto* exponents =
      app.add_subcommand("exponents", "Print (omega, eta, kappa) per vertex");
  exponents->add_option("--domain", exp_domain, "Domain name or JSON file");
  exponents->add_option("--k", exp_k, "Degree used for the kappa column");
  exponents->add_option("--vertex-omega", exp_omega_raw,
                        "Override, index=value (repeatable)");

  app.require_subcommand(1);
  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      cfg.vertex_omega = parse_overrides(omega_raw);
      cfg.emit_markdown = cfg.emit_csv = false;
      for (const auto& e : emit) {
        if (e == "markdown") cfg.emit_markdown = true;
        else if (e == "csv") cfg.emit_csv = true;
        else throw CLI::ValidationError("--emit accepts markdown, csv");
      }
      const auto report = axistokes::run_experiment(cfg);
      axistokes::write_rate_table_markdown(report.table, std::cout);
    } else {
      const auto overrides = parse_overrides(exp_omega_raw);
      const auto domain = axistokes::load_domain(exp_domain);
      std::printf("%8s %12s %12s %12s %12s\n", "vertex", "angle", "omega",
                  "eta", "kappa");
      for (int q : domain.corner_set) {
        std::optional<double> ov;
        if (auto it = overrides.find(q); it != overrides.end())
          ov = it->second;
        const auto kind =
            domain.vertex_kinds[q] == axistokes::VertexKind::OnAxis
                ? axistokes::AxisKind::OnAxis
                : axistokes::AxisKind::OffAxis;
        try {
          const auto e =
              axistokes::eta_for_vertex(kind, domain.interior_angles[q], ov, q);
          std::printf("%8d %12.6f %12.6f %12.6f %12.6f\n", q,
                      domain.interior_angles[q], e.omega, e.eta,
                      axistokes::kappa_from_eta(0.95 * e.eta, exp_k));
        } catch (const axistokes::MissingOnAxisOmega&) {
          std::printf("%8d %12.6f %12s %12s %12s\n", q,
                      domain.interior_angles[q], "?", "?", "?");
        }
      }
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
