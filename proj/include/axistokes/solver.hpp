#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

#include "axistokes/assembly.hpp"

namespace axistokes {

struct FieldSolution {
  const TaylorHoodSpace* space = nullptr;
  Eigen::VectorXd ur, uz, p;  // coefficient vectors per block
  Eigen::VectorXd raw;        // full unknown vector incl. multiplier
  double residual = 0.0;      // relative residual of the returned solution
  int iterations = 0;         // 0 for the direct path
  std::string method;         // "sparselu" or "minres"
};

struct SolverOptions {
  double rel_tol = 1e-10;
  // systems at most this many unknowns use the direct factorization
  int direct_threshold = 15000;
  int max_iterations = 200000;
  std::optional<Eigen::VectorXd> warm_start;  // full-length initial guess
};

FieldSolution solve_saddle(const SaddleSystem& system,
                           const SolverOptions& opts = {});

}  // namespace axistokes
