#pragma once

#include <Eigen/Core>
#include <vector>

namespace axistokes {

/// Quadrature rule on the reference triangle (0,0),(1,0),(0,1).
/// All points are strictly interior and all weights positive; the rule is
/// exact for bivariate polynomials up to `degree`.
struct QuadratureRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> points;  // reference (x, y)
  Eigen::VectorXd weights;                          // sum = 1/2
  int degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss nodes/weights for the Jacobi weight (1-x)^alpha (1+x)^beta on [-1,1].
void gauss_jacobi(int n, double alpha, double beta, Eigen::VectorXd& nodes,
                  Eigen::VectorXd& weights);

/// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Interior-point rule on the reference triangle exact to `exactness_degree`.
/// Built by collapsing a Gauss-Jacobi(1,0) x Gauss-Legendre tensor rule
/// through the Duffy map, so it exists for any requested degree up to the
/// implemented cap.
const QuadratureRule& quadrature_rule(int exactness_degree);

}  // namespace axistokes
