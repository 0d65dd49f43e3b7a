#include "axistokes/assembly.hpp"

#include <Eigen/LU>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "axistokes/errors.hpp"
#include "axistokes/quadrature.hpp"

namespace axistokes {

int assembly_quadrature_degree(int k, bool touches_axis) {
  return 2 * (k + 1) + 2 + (touches_axis ? 2 : 0);
}

namespace {

struct BasisTable {
  Eigen::MatrixXd v, vx, vy;  // velocity basis at rule points
  Eigen::MatrixXd p;          // pressure basis
  const QuadratureRule* rule = nullptr;
};

BasisTable tabulate(int k, int degree) {
  BasisTable t;
  t.rule = &quadrature_rule(degree);
  const auto& vel = lagrange_element(k + 1);
  const auto& prs = lagrange_element(k);
  t.v = vel.eval(t.rule->points);
  vel.eval_grad(t.rule->points, t.vx, t.vy);
  t.p = prs.eval(t.rule->points);
  return t;
}

}  // namespace

SaddleSystem assemble_system(const TaylorHoodSpace& space, const VectorField& f,
                             const AssemblyOptions& opts) {
  const TriMesh& mesh = *space.mesh;
  if (mesh.num_triangles() == 0) throw EmptySpace("assemble_system: no cells");
  const int k = space.k;
  const int nv = space.velocity.element().num_nodes();
  const int np = space.pressure.element().num_nodes();
  const int N = space.total();

  SaddleSystem sys;
  sys.space = &space;
  sys.rhs = Eigen::VectorXd::Zero(N);
  sys.boundary_values = Eigen::VectorXd::Zero(N);
  sys.constrained.assign(N, 0);
  sys.p_mass_diag = Eigen::VectorXd::Zero(space.n_p());
  sys.c_row = Eigen::VectorXd::Zero(space.n_p());

  if (opts.eliminate) {
    for (int i = 0; i < space.n_ur(); ++i) {
      if (space.ur_constrained[i]) {
        sys.constrained[space.ur_index(i)] = 1;
        if (opts.dirichlet_ur)
          sys.boundary_values(space.ur_index(i)) = opts.dirichlet_ur(
              space.velocity.dof_coords(i, 0), space.velocity.dof_coords(i, 1));
      }
      if (space.uz_constrained[i]) {
        sys.constrained[space.uz_index(i)] = 1;
        if (opts.dirichlet_uz)
          sys.boundary_values(space.uz_index(i)) = opts.dirichlet_uz(
              space.velocity.dof_coords(i, 0), space.velocity.dof_coords(i, 1));
      }
    }
  }

  const BasisTable interior = tabulate(k, assembly_quadrature_degree(k, false));
  const BasisTable on_axis = tabulate(k, assembly_quadrature_degree(k, true));

  std::vector<Eigen::Triplet<double>> trips;
  {
    // generous estimate of the symmetric stencil size
    const size_t per_tri = 2 * nv * nv + 4 * np * nv + np;
    trips.reserve(per_tri * static_cast<size_t>(mesh.num_triangles()));
  }
  const auto& bv = sys.boundary_values;
  auto push = [&](int i, int j, double val) {
    // symmetric elimination: constrained rows/cols removed, boundary data
    // lifted to the right hand side
    if (sys.constrained[i]) return;
    if (sys.constrained[j]) {
      sys.rhs(i) -= val * bv(j);
      return;
    }
    trips.emplace_back(i, j, val);
  };

  Eigen::MatrixXd Arr(nv, nv), Azz(nv, nv), Br(np, nv), Bz(np, nv);
  Eigen::VectorXd Fr(nv), Fz(nv), C(np), Pm(np);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const int g0 = mesh.triangles(t, 0), g1 = mesh.triangles(t, 1),
              g2 = mesh.triangles(t, 2);
    const Eigen::Vector2d p0 = mesh.node(g0);
    Eigen::Matrix2d J;
    J.col(0) = mesh.node(g1) - p0;
    J.col(1) = mesh.node(g2) - p0;
    const double detJ = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
    if (detJ <= 0) throw NonConformingInput("assemble_system: inverted cell");
    const Eigen::Matrix2d Jit = J.inverse().transpose();

    const bool axis = mesh.nodes(g0, 0) == 0.0 || mesh.nodes(g1, 0) == 0.0 ||
                      mesh.nodes(g2, 0) == 0.0;
    const BasisTable& tab = axis ? on_axis : interior;
    const auto& rule = *tab.rule;

    Arr.setZero();
    Azz.setZero();
    Br.setZero();
    Bz.setZero();
    Fr.setZero();
    Fz.setZero();
    C.setZero();
    Pm.setZero();

    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d x =
          p0 + J * rule.points.row(q).transpose().eval();
      const double r = x(0), z = x(1);
      if (!(r > 0))
        throw QuadratureFailure("assemble_system: nonpositive r at point");
      const double w = rule.weights(q) * detJ;
      const double wr = w * r;
      const Eigen::Vector2d fx = f(r, z);
      if (!fx.allFinite())
        throw QuadratureFailure("assemble_system: forcing not finite");

      // physical gradients of the velocity basis at this point
      Eigen::Matrix<double, 2, Eigen::Dynamic> gv(2, nv);
      for (int i = 0; i < nv; ++i)
        gv.col(i) = Jit * Eigen::Vector2d(tab.vx(q, i), tab.vy(q, i));

      for (int i = 0; i < nv; ++i) {
        for (int j = i; j < nv; ++j) {
          const double grad = gv.col(i).dot(gv.col(j));
          const double arr =
              wr * grad + w / r * tab.v(q, i) * tab.v(q, j);
          const double azz = wr * grad;
          Arr(i, j) += arr;
          Azz(i, j) += azz;
          if (j > i) {
            Arr(j, i) = Arr(i, j);
            Azz(j, i) = Azz(i, j);
          }
        }
        Fr(i) += wr * fx(0) * tab.v(q, i);
        Fz(i) += wr * fx(1) * tab.v(q, i);
      }
      for (int m = 0; m < np; ++m) {
        const double pm = tab.p(q, m);
        for (int i = 0; i < nv; ++i) {
          Br(m, i) -= pm * (wr * gv(0, i) + w * tab.v(q, i));
          Bz(m, i) -= pm * wr * gv(1, i);
        }
        C(m) += wr * pm;
        Pm(m) += wr * pm * pm;
      }
    }

    for (int i = 0; i < nv; ++i) {
      const int gi = space.velocity.cell_dofs(t, i);
      for (int j = 0; j < nv; ++j) {
        const int gj = space.velocity.cell_dofs(t, j);
        push(space.ur_index(gi), space.ur_index(gj), Arr(i, j));
        push(space.uz_index(gi), space.uz_index(gj), Azz(i, j));
      }
      sys.rhs(space.ur_index(gi)) += sys.constrained[space.ur_index(gi)]
                                         ? 0.0
                                         : Fr(i);
      sys.rhs(space.uz_index(gi)) += sys.constrained[space.uz_index(gi)]
                                         ? 0.0
                                         : Fz(i);
    }
    for (int m = 0; m < np; ++m) {
      const int gm = space.pressure.cell_dofs(t, m);
      for (int i = 0; i < nv; ++i) {
        const int gi = space.velocity.cell_dofs(t, i);
        push(space.p_index(gm), space.ur_index(gi), Br(m, i));
        push(space.ur_index(gi), space.p_index(gm), Br(m, i));
        push(space.p_index(gm), space.uz_index(gi), Bz(m, i));
        push(space.uz_index(gi), space.p_index(gm), Bz(m, i));
      }
      sys.c_row(gm) += C(m);
      sys.p_mass_diag(gm) += Pm(m);
    }
  }

  if (opts.mean_zero_row) {
    const int mult = space.multiplier_index();
    for (int m = 0; m < space.n_p(); ++m) {
      if (sys.c_row(m) == 0.0) continue;
      trips.emplace_back(mult, space.p_index(m), sys.c_row(m));
      trips.emplace_back(space.p_index(m), mult, sys.c_row(m));
    }
  } else {
    sys.constrained[space.multiplier_index()] = 1;
  }

  for (int i = 0; i < N; ++i)
    if (sys.constrained[i]) {
      trips.emplace_back(i, i, 1.0);
      sys.rhs(i) = sys.boundary_values(i);
    }

  sys.K.resize(N, N);
  sys.K.setFromTriplets(trips.begin(), trips.end());
  sys.K.makeCompressed();
  return sys;
}

void write_system_coo(const SaddleSystem& system, std::ostream& out) {
  out << std::setprecision(17);
  for (int c = 0; c < system.K.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.K, c); it; ++it)
      out << it.row() << " " << it.col() << " " << it.value() << "\n";
}

}  // namespace axistokes
