#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "axistokes/space.hpp"

namespace axistokes {

/// Quasi-interpolation operators built from local weighted projections.
/// They are test oracles for the stability/approximation machinery and are
/// not used in the solve path.

using Scalar2D = std::function<double(double, double)>;

/// Entity a dof node is associated with. Boundary nodes get an edge, with
/// two qualifications: nodes on Gamma use an edge inside Gamma, and nodes on
/// Gamma0 use their axis edge (unweighted projection) for the minus variant
/// but the adjacent triangle (r-weighted) for the plus variant, since the
/// r-weighted measure of an axis edge degenerates. Interior nodes get a
/// containing triangle, preferring one that stays off the axis. Ties break
/// to the lowest index for determinism.
struct NodeAssignment {
  enum class Kind { GammaEdge, AxisEdge, Triangle };
  Kind kind = Kind::Triangle;
  int edge_a = -1, edge_b = -1;  // node indices when kind is an edge
  int triangle = -1;             // triangle index when kind is Triangle
};

struct NodeAssignmentTable {
  std::vector<NodeAssignment> boundary_aware;  // used by plus/minus
  std::vector<int> nodewise_triangle;          // used by project_nodewise
};

NodeAssignmentTable build_assignments(const ScalarSpace& space);

/// Pi+ : nodal values from r-weighted local L2 projections (edges on Gamma,
/// triangles elsewhere). Invariant on P^degree; preserves zero values on
/// Gamma.
Eigen::VectorXd interpolate_plus(const Scalar2D& v, const ScalarSpace& space);

/// Pi- : as Pi+ except Gamma0 nodes use the unweighted projection along
/// their axis edge. Preserves zero values on Gamma0 and on Gamma.
Eigen::VectorXd interpolate_minus(const Scalar2D& v, const ScalarSpace& space);

/// Pi : every nodal value from the r-weighted projection on a containing
/// triangle.
Eigen::VectorXd project_nodewise(const Scalar2D& v, const ScalarSpace& space);

}  // namespace axistokes
