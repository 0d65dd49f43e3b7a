#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <vector>

#include "axistokes/domain.hpp"
#include "axistokes/solver.hpp"
#include "axistokes/space.hpp"

namespace axistokes {

enum class NormKind { L2_1, H1_1, H1_plus, H1_minus, Kmu1 };

/// Weighted norm selector. Kmu1 uses the corner-distance weight
/// theta(x) = min(L/2, distance to the nearest vertex of Q) taken from the
/// domain; the other kinds ignore domain/m/mu.
struct NormSpec {
  NormKind kind = NormKind::L2_1;
  int m = 1;                               // Kmu1 order (0 or 1)
  double mu = 0.0;                         // Kmu1 weight index
  const MeridianDomain* domain = nullptr;  // required for Kmu1
  int quadrature_degree = -1;              // default: 2*degree + 4
};

/// Norm of a finite element function given by coefficients on the space.
double weighted_norm(const ScalarSpace& space, const Eigen::VectorXd& coef,
                     const NormSpec& spec);

/// Norm of a callable v with gradient (vr, vz), integrated per mesh triangle.
double weighted_norm(const std::function<double(double, double)>& v,
                     const std::function<Eigen::Vector2d(double, double)>& dv,
                     const TriMesh& mesh, const NormSpec& spec);

/// Exact re-expansion of a coarse FE function on a nested finer mesh of the
/// same hierarchy. Both spaces must have the same degree.
Eigen::VectorXd prolong_scalar(const MeshHierarchy& hierarchy,
                               const ScalarSpace& coarse,
                               const Eigen::VectorXd& coarse_coef,
                               const ScalarSpace& fine);

/// Full-solution prolongation in the TaylorHoodSpace unknown layout
/// (multiplier slot zero); used for warm starts and error evaluation.
Eigen::VectorXd prolong_solution(const MeshHierarchy& hierarchy,
                                 const FieldSolution& coarse,
                                 const TaylorHoodSpace& fine);

struct RateTable {
  struct Row {
    int level = 0;
    double err_u = 0, rate_u = 0, err_p = 0, rate_p = 0;  // rates NaN at j=1
  };
  std::vector<Row> rows;
};

/// Consecutive-level differences ||u_j - u_{j-1}|| in H1_- x H1_+ and
/// ||p_j - p_{j-1}|| in L2_1, with rate = log2(previous/current).
RateTable level_errors(const MeshHierarchy& hierarchy,
                       const std::vector<FieldSolution>& solutions);

void write_rate_table_markdown(const RateTable& table, std::ostream& out);
void write_rate_table_csv(const RateTable& table, std::ostream& out);

/// Scaling identities near an on-axis vertex (taken at the origin of the
/// given triangle coordinates, which are relative to the vertex).
/// G_lambda = { x / lambda : x in G } and v_lambda(x) = v(lambda x); the same
/// reference quadrature rule is applied to both regions, so the returned
/// ratios satisfy the dilation identities to rounding error:
///   kmu_scaled = lambda^{a - 3/2} * kmu, rinv_scaled = lambda^{-1/2} * rinv.
struct DilationNorms {
  double kmu = 0, kmu_scaled = 0;    // K^m_{a,1} norms on G and G_lambda
  double rinv = 0, rinv_scaled = 0;  // ||r^{-1} v||_{L^2_1} pair
};
DilationNorms dilation_scaling_check(
    const std::function<double(double, double)>& v,
    const std::function<Eigen::Vector2d(double, double)>& dv,
    const std::vector<Eigen::Matrix<double, 3, 2>>& region, double half_L,
    double lambda, int m, double a);

}  // namespace axistokes
