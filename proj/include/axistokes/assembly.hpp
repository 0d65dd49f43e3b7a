#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <iosfwd>

#include "axistokes/space.hpp"

namespace axistokes {

/// (f_r, f_z) at a point of the meridian domain.
using VectorField = std::function<Eigen::Vector2d(double r, double z)>;
using ScalarField = std::function<double(double r, double z)>;

struct AssemblyOptions {
  bool eliminate = true;      // apply Dirichlet masks symmetrically
  bool mean_zero_row = true;  // append the weighted mean-zero multiplier row
  ScalarField dirichlet_ur;   // lifted boundary data; zero when absent
  ScalarField dirichlet_uz;
};

/// Symmetric indefinite system [A B^T .; B 0 c; . c^T 0] for the weighted
/// forms a and b, in the dof layout of TaylorHoodSpace. Constrained rows and
/// columns are reduced to the identity with the boundary value on the right
/// hand side.
struct SaddleSystem {
  const TaylorHoodSpace* space = nullptr;
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd rhs;
  Eigen::VectorXd boundary_values;  // full length; zero on free dofs
  std::vector<char> constrained;    // per global unknown
  Eigen::VectorXd p_mass_diag;      // diag of the r-weighted pressure mass
  Eigen::VectorXd c_row;            // c_j = int phi_j^p r dr dz
};

SaddleSystem assemble_system(const TaylorHoodSpace& space, const VectorField& f,
                             const AssemblyOptions& opts = {});

/// Coordinate-format text dump: "row col value" per line.
void write_system_coo(const SaddleSystem& system, std::ostream& out);

/// Quadrature exactness degree used on a triangle of the given space.
int assembly_quadrature_degree(int k, bool touches_axis);

}  // namespace axistokes
