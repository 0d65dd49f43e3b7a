#pragma once

#include <Eigen/Core>
#include <vector>

namespace axistokes {

/// P_d Lagrange element on the reference triangle (0,0),(1,0),(0,1) with the
/// uniform lattice { (i/d, j/d) : i+j <= d }. Nodes are classified by the
/// mesh entity they sit on: local vertices 0-2, local edges 0 = (v0,v1),
/// 1 = (v1,v2), 2 = (v2,v0), or the cell interior. Edge nodes are ordered
/// along the edge from its first vertex.
struct LagrangeElement {
  int degree = 1;
  Eigen::Matrix<double, Eigen::Dynamic, 2> nodes;  // reference coordinates
  std::vector<int> entity_dim;    // 0 vertex, 1 edge, 2 cell
  std::vector<int> entity_index;  // which vertex/edge; 0 for the cell
  std::vector<int> entity_order;  // position on the entity
  Eigen::MatrixXd coeffs;         // monomial coefficients, column per basis fn

  int num_nodes() const { return static_cast<int>(nodes.rows()); }

  /// Basis values: (num points) x (num basis functions).
  Eigen::MatrixXd eval(const Eigen::Matrix<double, Eigen::Dynamic, 2>& pts)
      const;
  /// Reference-coordinate gradients, same layout.
  void eval_grad(const Eigen::Matrix<double, Eigen::Dynamic, 2>& pts,
                 Eigen::MatrixXd& dx, Eigen::MatrixXd& dy) const;
};

/// Cached element of the given degree (1 <= degree <= 10).
const LagrangeElement& lagrange_element(int degree);

}  // namespace axistokes
