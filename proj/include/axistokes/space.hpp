#pragma once

#include <Eigen/Core>
#include <vector>

#include "axistokes/lagrange.hpp"
#include "axistokes/mesh.hpp"

namespace axistokes {

/// Continuous scalar Lagrange space of the given degree on a TriMesh.
/// Deterministic dof numbering: mesh vertices first, then edge dofs (global
/// edges ordered by sorted vertex pair, dofs ordered from the lower-index
/// vertex), then cell dofs triangle by triangle.
struct ScalarSpace {
  const TriMesh* mesh = nullptr;
  int degree = 1;
  int num_dofs = 0;
  Eigen::MatrixXi cell_dofs;  // triangle x local node -> global dof
  Eigen::Matrix<double, Eigen::Dynamic, 2> dof_coords;
  std::vector<char> on_gamma0;  // dof sits on an axis boundary edge
  std::vector<char> on_gamma;   // dof sits on a non-axis boundary edge

  const LagrangeElement& element() const { return lagrange_element(degree); }
};

ScalarSpace build_scalar_space(const TriMesh& mesh, int degree);

/// Taylor-Hood pair P_{k+1}/P_k with the axisymmetric boundary conditions:
/// u_r vanishes on the whole boundary (axis included), u_z only off the
/// axis, and the pressure carries the weighted mean-zero constraint.
/// Global unknown layout: [u_r | u_z | p | multiplier], with u_r dof i at
/// position i, u_z at velocity.num_dofs + i, p at 2*velocity.num_dofs + i.
struct TaylorHoodSpace {
  const TriMesh* mesh = nullptr;
  int k = 1;
  ScalarSpace velocity;  // degree k+1, shared by u_r and u_z
  ScalarSpace pressure;  // degree k
  std::vector<char> ur_constrained;
  std::vector<char> uz_constrained;

  int n_ur() const { return velocity.num_dofs; }
  int n_uz() const { return velocity.num_dofs; }
  int n_p() const { return pressure.num_dofs; }
  int total() const { return 2 * velocity.num_dofs + pressure.num_dofs + 1; }
  int ur_index(int i) const { return i; }
  int uz_index(int i) const { return velocity.num_dofs + i; }
  int p_index(int i) const { return 2 * velocity.num_dofs + i; }
  int multiplier_index() const { return total() - 1; }
};

TaylorHoodSpace build_space(const TriMesh& mesh, int k);

/// Nodal interpolation of a callable into a scalar space.
template <typename F>
Eigen::VectorXd interpolate_nodal(const ScalarSpace& space, F&& f) {
  Eigen::VectorXd v(space.num_dofs);
  for (int i = 0; i < space.num_dofs; ++i)
    v(i) = f(space.dof_coords(i, 0), space.dof_coords(i, 1));
  return v;
}

}  // namespace axistokes
