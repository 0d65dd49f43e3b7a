#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "axistokes/errors.hpp"
#include "axistokes/experiment.hpp"

using namespace axistokes;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.domain = "omega2";
  cfg.k = 1;
  cfg.kappa = "0.4";
  cfg.levels = 3;
  cfg.data = "paper";
  return cfg;
}

}  // namespace

TEST_CASE("a small run produces a filled report") {
  const ExperimentReport rep = run_experiment(small_config());
  REQUIRE(rep.table.rows.size() == 3);
  CHECK(rep.dof_counts.size() == 4);  // levels 0..3
  CHECK(rep.solve_seconds.size() == 4);
  for (size_t i = 1; i < rep.dof_counts.size(); ++i)
    CHECK(rep.dof_counts[i] > rep.dof_counts[i - 1]);
  for (const auto& row : rep.table.rows) {
    CHECK(row.err_u > 0.0);
    CHECK(row.err_p > 0.0);
  }
  CHECK(std::isnan(rep.table.rows[0].rate_u));
  CHECK(std::isfinite(rep.table.rows[1].rate_u));
  REQUIRE(rep.plan.entries.size() >= 1);
  for (const auto& e : rep.plan.entries) CHECK(e.kappa == 0.4);
}

TEST_CASE("reruns are deterministic") {
  const ExperimentReport a = run_experiment(small_config());
  const ExperimentReport b = run_experiment(small_config());
  REQUIRE(a.table.rows.size() == b.table.rows.size());
  for (size_t i = 0; i < a.table.rows.size(); ++i) {
    CHECK(a.table.rows[i].err_u == b.table.rows[i].err_u);
    CHECK(a.table.rows[i].err_p == b.table.rows[i].err_p);
  }
}

TEST_CASE("auto grading resolves kappa per marked vertex") {
  ExperimentConfig cfg = small_config();
  cfg.kappa = "auto";
  cfg.levels = 2;
  const ExperimentReport rep = run_experiment(cfg);
  REQUIRE(!rep.plan.entries.empty());
  for (const auto& e : rep.plan.entries) {
    CHECK(e.kappa > 0.0);
    CHECK(e.kappa <= 0.5);
  }
  // the marked on-axis vertex of omega2 grades with eta = 0.711 + 1/2
  const int q = builtin_marked_vertex("omega2");
  bool found = false;
  for (const auto& e : rep.plan.entries)
    if (e.vertex_index == q) {
      found = true;
      const double a = 0.95 * (0.711 + 0.5);
      CHECK(e.kappa ==
            doctest::Approx(std::min(0.5, std::pow(2.0, -2.0 / a)))
                .epsilon(1e-12));
    }
  CHECK(found);
}

TEST_CASE("manufactured data drives the errors to solver noise") {
  ExperimentConfig cfg;
  cfg.domain = "unit_square";
  cfg.kappa = "0.5";
  cfg.levels = 2;
  cfg.data = "manufactured";
  const ExperimentReport rep = run_experiment(cfg);
  for (const auto& row : rep.table.rows) {
    CHECK(row.err_u < 1e-8);
    CHECK(row.err_p < 1e-8);
  }
}

TEST_CASE("report files land in the output directory") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "axistokes_report_test";
  fs::remove_all(dir);
  ExperimentConfig cfg = small_config();
  cfg.levels = 2;
  cfg.out_dir = dir.string();
  cfg.dump_mesh = true;
  run_experiment(cfg);
  CHECK(fs::exists(dir / "rates.md"));
  CHECK(fs::exists(dir / "rates.csv"));
  CHECK(fs::exists(dir / "run.json"));
  CHECK(fs::exists(dir / "mesh_level_0.txt"));
  CHECK(fs::exists(dir / "mesh_level_2.txt"));

  std::ifstream md(dir / "rates.md");
  std::stringstream buf;
  buf << md.rdbuf();
  CHECK(buf.str().find("| level |") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("bad configurations are rejected") {
  ExperimentConfig cfg = small_config();
  cfg.levels = 1;
  CHECK_THROWS_AS(run_experiment(cfg), const Error&);

  cfg = small_config();
  cfg.kappa = "0.7";  // outside (0, 1/2]
  CHECK_THROWS_AS(run_experiment(cfg), const Error&);

  cfg = small_config();
  cfg.domain = "no_such_domain";
  CHECK_THROWS_AS(run_experiment(cfg), const Error&);

  cfg = small_config();
  cfg.data = "no_such_data";
  CHECK_THROWS_AS(run_experiment(cfg), const Error&);
}
