#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axistokes/grading.hpp"
#include "axistokes/norms.hpp"

namespace axistokes {

struct ExperimentConfig {
  std::string domain = "omega1";  // built-in name or JSON file path
  int k = 1;                      // pressure degree
  std::string kappa = "auto";     // numeric literal or "auto"
  int levels = 6;                 // deepest refinement level
  std::string data = "paper";     // paper | manufactured | zero
  double rel_tol = 1e-10;
  int direct_threshold = 15000;   // largest system solved directly
  std::string out_dir;            // empty: no files written
  bool emit_markdown = true;
  bool emit_csv = true;
  bool dump_mesh = false;
  std::map<int, double> vertex_omega;  // per-vertex pencil-eigenvalue override
};

struct ExperimentReport {
  RateTable table;
  GradingPlan plan;
  std::vector<VertexExponent> exponents;  // per corner vertex, when computable
  std::vector<int> dof_counts;            // per level
  std::vector<double> solve_seconds;      // per level
  std::vector<int> solve_iterations;      // 0 for direct solves
  std::string domain_name;
  int levels = 0;
  int k = 1;
};

/// Full pipeline of one convergence study: domain, grading, hierarchy,
/// per-level solve, rate table. Writes report files when out_dir is set;
/// partial results are flushed if a level fails.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Serializes table + metadata into out_dir (rates.md, rates.csv, run.json
/// according to the emit flags).
void emit_report(const ExperimentReport& report, const ExperimentConfig& config);

}  // namespace axistokes
