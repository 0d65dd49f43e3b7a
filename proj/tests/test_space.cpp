#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "axistokes/space.hpp"

using namespace axistokes;

namespace {

TriMesh square_mesh() {
  return initial_triangulation(builtin_domain("unit_square"), 0.5);
}

bool on_square_boundary(double r, double z) {
  const double eps = 1e-12;
  return r < eps || r > 1 - eps || z < eps || z > 1 - eps;
}

}  // namespace

TEST_CASE("lagrange element basics") {
  for (int d = 1; d <= 4; ++d) {
    const auto& el = lagrange_element(d);
    CHECK(el.num_nodes() == (d + 1) * (d + 2) / 2);

    // delta property at the lattice nodes
    const Eigen::MatrixXd vals = el.eval(el.nodes);
    for (int i = 0; i < el.num_nodes(); ++i)
      for (int j = 0; j < el.num_nodes(); ++j)
        CHECK(vals(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));

    // partition of unity and zero gradient sum away from the nodes
    Eigen::Matrix<double, Eigen::Dynamic, 2> pts(3, 2);
    pts << 0.21, 0.33, 0.05, 0.11, 0.4, 0.55;
    const Eigen::MatrixXd v = el.eval(pts);
    Eigen::MatrixXd dx, dy;
    el.eval_grad(pts, dx, dy);
    for (int p = 0; p < 3; ++p) {
      CHECK(v.row(p).sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(dx.row(p).sum() == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(dy.row(p).sum() == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
  CHECK_THROWS(lagrange_element(0));
  CHECK_THROWS(lagrange_element(11));
}

TEST_CASE("scalar space dof counts follow the Euler formula") {
  const TriMesh mesh = square_mesh();
  const int V = mesh.num_nodes();
  const int T = mesh.num_triangles();
  const int E = V + T - 1;  // V - E + T = 1 for a simply connected mesh

  const ScalarSpace p1 = build_scalar_space(mesh, 1);
  CHECK(p1.num_dofs == V);
  CHECK(p1.cell_dofs == mesh.triangles);

  const ScalarSpace p2 = build_scalar_space(mesh, 2);
  CHECK(p2.num_dofs == V + E);

  const ScalarSpace p3 = build_scalar_space(mesh, 3);
  CHECK(p3.num_dofs == V + 2 * E + T);

  // vertex dofs keep mesh coordinates
  for (int i = 0; i < V; ++i) {
    CHECK(p2.dof_coords(i, 0) == mesh.nodes(i, 0));
    CHECK(p2.dof_coords(i, 1) == mesh.nodes(i, 1));
  }
}

TEST_CASE("shared dofs agree across triangles") {
  const TriMesh mesh = square_mesh();
  for (int d : {2, 3}) {
    const ScalarSpace sp = build_scalar_space(mesh, d);
    // every global dof must carry one coordinate, no matter which triangle
    // it is seen from
    Eigen::Matrix<double, Eigen::Dynamic, 2> seen =
        Eigen::Matrix<double, Eigen::Dynamic, 2>::Constant(sp.num_dofs, 2,
                                                           -1.0);
    const auto& el = sp.element();
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      const Eigen::Vector2d a = mesh.node(mesh.triangles(t, 0));
      const Eigen::Vector2d b = mesh.node(mesh.triangles(t, 1));
      const Eigen::Vector2d c = mesh.node(mesh.triangles(t, 2));
      for (int l = 0; l < el.num_nodes(); ++l) {
        const Eigen::Vector2d x = a + el.nodes(l, 0) * (b - a) +
                                  el.nodes(l, 1) * (c - a);
        const int g = sp.cell_dofs(t, l);
        if (seen(g, 0) >= 0.0) {
          CHECK((seen.row(g).transpose() - x).norm() < 1e-12);
        } else {
          seen.row(g) = x;
        }
        CHECK((sp.dof_coords.row(g).transpose() - x).norm() < 1e-12);
      }
    }
    for (int g = 0; g < sp.num_dofs; ++g) CHECK(seen(g, 0) >= 0.0);
  }
}

TEST_CASE("boundary masks split axis from the rest") {
  const TriMesh mesh = square_mesh();
  const ScalarSpace sp = build_scalar_space(mesh, 2);
  for (int g = 0; g < sp.num_dofs; ++g) {
    const double r = sp.dof_coords(g, 0);
    const double z = sp.dof_coords(g, 1);
    const bool axis = r < 1e-12;
    CHECK(static_cast<bool>(sp.on_gamma0[g]) == (axis && on_square_boundary(r, z)));
    const bool gamma = on_square_boundary(r, z) &&
                       (!axis || z < 1e-12 || z > 1 - 1e-12);
    CHECK(static_cast<bool>(sp.on_gamma[g]) == gamma);
  }
}

TEST_CASE("taylor-hood layout and constraints") {
  const TriMesh mesh = square_mesh();
  const TaylorHoodSpace th = build_space(mesh, 1);
  CHECK(th.velocity.degree == 2);
  CHECK(th.pressure.degree == 1);
  CHECK(th.total() == 2 * th.n_ur() + th.n_p() + 1);
  CHECK(th.multiplier_index() == th.total() - 1);
  CHECK(th.ur_index(3) == 3);
  CHECK(th.uz_index(3) == th.n_ur() + 3);
  CHECK(th.p_index(3) == 2 * th.n_ur() + 3);

  int axis_interior = 0;
  for (int g = 0; g < th.n_ur(); ++g) {
    const double r = th.velocity.dof_coords(g, 0);
    const double z = th.velocity.dof_coords(g, 1);
    const bool bnd = on_square_boundary(r, z);
    // u_r vanishes on the whole boundary, u_z only away from the axis
    CHECK(static_cast<bool>(th.ur_constrained[g]) == bnd);
    if (bnd && r < 1e-12 && z > 1e-12 && z < 1 - 1e-12) {
      CHECK(!th.uz_constrained[g]);
      ++axis_interior;
    }
  }
  CHECK(axis_interior > 0);  // the mask must actually free some axis dofs
}

TEST_CASE("construction is deterministic") {
  const TriMesh mesh = square_mesh();
  const ScalarSpace a = build_scalar_space(mesh, 3);
  const ScalarSpace b = build_scalar_space(mesh, 3);
  CHECK(a.cell_dofs == b.cell_dofs);
  CHECK(a.dof_coords == b.dof_coords);
}

TEST_CASE("nodal interpolation reproduces polynomials of full degree") {
  const TriMesh mesh = square_mesh();
  const ScalarSpace sp = build_scalar_space(mesh, 2);
  const auto f = [](double r, double z) { return r * r - 3 * r * z + z; };
  const Eigen::VectorXd coef = interpolate_nodal(sp, f);
  // evaluate inside an arbitrary triangle through the element basis
  const auto& el = sp.element();
  Eigen::Matrix<double, Eigen::Dynamic, 2> pt(1, 2);
  pt << 0.3, 0.2;
  const Eigen::MatrixXd vals = el.eval(pt);
  for (int t = 0; t < mesh.num_triangles(); t += 7) {
    const Eigen::Vector2d a = mesh.node(mesh.triangles(t, 0));
    const Eigen::Vector2d b = mesh.node(mesh.triangles(t, 1));
    const Eigen::Vector2d c = mesh.node(mesh.triangles(t, 2));
    const Eigen::Vector2d x = a + 0.3 * (b - a) + 0.2 * (c - a);
    double v = 0;
    for (int l = 0; l < el.num_nodes(); ++l)
      v += coef(sp.cell_dofs(t, l)) * vals(0, l);
    CHECK(v == doctest::Approx(f(x(0), x(1))).epsilon(1e-12));
  }
}
