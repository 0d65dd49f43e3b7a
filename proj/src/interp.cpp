#include "axistokes/interp.hpp"

#include <Eigen/LU>

#include <cmath>
#include <iostream>
#include <map>

#include "axistokes/errors.hpp"
#include "axistokes/quadrature.hpp"

namespace axistokes {

namespace {

using EdgeKey = std::pair<int, int>;

struct Connectivity {
  std::vector<EdgeKey> dof_edge;            // edge dofs -> endpoint pair
  std::vector<std::vector<int>> dof_tris;   // closed-cell containment
  std::map<EdgeKey, std::vector<int>> edge_dofs;
  std::map<EdgeKey, std::vector<int>> edge_tris;
};

Connectivity connect(const ScalarSpace& space) {
  const TriMesh& mesh = *space.mesh;
  const auto& el = space.element();
  Connectivity c;
  c.dof_edge.assign(space.num_dofs, {-1, -1});
  c.dof_tris.resize(space.num_dofs);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const int gv[3] = {mesh.triangles(t, 0), mesh.triangles(t, 1),
                       mesh.triangles(t, 2)};
    for (int e = 0; e < 3; ++e)
      c.edge_tris[std::minmax(gv[e], gv[(e + 1) % 3])].push_back(t);
    for (int n = 0; n < el.num_nodes(); ++n) {
      const int dof = space.cell_dofs(t, n);
      c.dof_tris[dof].push_back(t);
      if (el.entity_dim[n] == 1) {
        const EdgeKey key = std::minmax(gv[el.entity_index[n]],
                                        gv[(el.entity_index[n] + 1) % 3]);
        c.dof_edge[dof] = key;
        c.edge_dofs[key].push_back(dof);
      }
    }
  }
  return c;
}

bool dof_on_boundary_edge(const ScalarSpace& space, const Connectivity& c,
                          int dof, const BoundaryEdge& be) {
  if (dof < space.mesh->num_nodes()) return dof == be.a || dof == be.b;
  return c.dof_edge[dof] == EdgeKey(std::minmax(be.a, be.b));
}

// r-weighted (or unweighted) L2 projection onto P^degree along an edge,
// evaluated at edge parameter s in [0, 1].
double edge_projection(const Scalar2D& v, const ScalarSpace& space, int a,
                       int b, bool r_weight, double s_eval) {
  const int d = space.degree;
  const Eigen::Vector2d A = space.mesh->node(a), B = space.mesh->node(b);
  Eigen::VectorXd gx, gw;
  gauss_legendre(d + 2, gx, gw);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(d + 1, d + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
  for (int q = 0; q < gx.size(); ++q) {
    const double s = 0.5 * (gx(q) + 1.0);
    const Eigen::Vector2d x = A + s * (B - A);
    const double rho = r_weight ? x(0) : 1.0;
    const double w = 0.5 * gw(q) * rho;  // edge length factor cancels
    Eigen::VectorXd mono(d + 1);
    double p = 1;
    for (int j = 0; j <= d; ++j, p *= s) mono(j) = p;
    G += w * mono * mono.transpose();
    rhs += w * v(x(0), x(1)) * mono;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  if (!lu.isInvertible())
    throw DegenerateAssignmentRegion("edge_projection: degenerate Gram");
  const Eigen::VectorXd coef = lu.solve(rhs);
  double val = 0, p = 1;
  for (int j = 0; j <= d; ++j, p *= s_eval) val += coef(j) * p;
  return val;
}

// r-weighted L2 projection onto P^degree on a triangle, evaluated at
// reference coordinates (xe, ye) of that triangle.
double triangle_projection(const Scalar2D& v, const ScalarSpace& space, int t,
                           const Eigen::Vector2d& ref_eval) {
  const int d = space.degree;
  const TriMesh& mesh = *space.mesh;
  const auto& rule = quadrature_rule(2 * d + 4);
  const Eigen::Vector2d p0 = mesh.node(mesh.triangles(t, 0));
  Eigen::Matrix2d J;
  J.col(0) = mesh.node(mesh.triangles(t, 1)) - p0;
  J.col(1) = mesh.node(mesh.triangles(t, 2)) - p0;

  std::vector<std::pair<int, int>> mono;
  for (int total = 0; total <= d; ++total)
    for (int a = total; a >= 0; --a) mono.emplace_back(a, total - a);
  const int nb = static_cast<int>(mono.size());

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nb, nb);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nb);
  Eigen::VectorXd m(nb);
  for (int q = 0; q < rule.size(); ++q) {
    const double xe = rule.points(q, 0), ye = rule.points(q, 1);
    const Eigen::Vector2d x = p0 + J * Eigen::Vector2d(xe, ye);
    const double w = rule.weights(q) * x(0);  // detJ cancels in projection
    for (int j = 0; j < nb; ++j)
      m(j) = std::pow(xe, mono[j].first) * std::pow(ye, mono[j].second);
    G += w * m * m.transpose();
    rhs += w * v(x(0), x(1)) * m;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  if (!lu.isInvertible())
    throw DegenerateAssignmentRegion("triangle_projection: degenerate Gram");
  const Eigen::VectorXd coef = lu.solve(rhs);
  double val = 0;
  for (int j = 0; j < nb; ++j)
    val += coef(j) * std::pow(ref_eval(0), mono[j].first) *
           std::pow(ref_eval(1), mono[j].second);
  return val;
}

Eigen::Vector2d reference_coords(const TriMesh& mesh, int t,
                                 const Eigen::Vector2d& x) {
  const Eigen::Vector2d p0 = mesh.node(mesh.triangles(t, 0));
  Eigen::Matrix2d J;
  J.col(0) = mesh.node(mesh.triangles(t, 1)) - p0;
  J.col(1) = mesh.node(mesh.triangles(t, 2)) - p0;
  return J.inverse() * (x - p0);
}

double edge_parameter(const TriMesh& mesh, int a, int b,
                      const Eigen::Vector2d& x) {
  const Eigen::Vector2d A = mesh.node(a), d = mesh.node(b) - mesh.node(a);
  return (x - A).dot(d) / d.squaredNorm();
}

bool touches_axis(const TriMesh& mesh, int t) {
  for (int e = 0; e < 3; ++e)
    if (mesh.nodes(mesh.triangles(t, e), 0) == 0.0) return true;
  return false;
}

}  // namespace

NodeAssignmentTable build_assignments(const ScalarSpace& space) {
  const TriMesh& mesh = *space.mesh;
  const Connectivity c = connect(space);
  NodeAssignmentTable table;
  table.boundary_aware.resize(space.num_dofs);
  table.nodewise_triangle.resize(space.num_dofs);
  bool warned = false;

  for (int i = 0; i < space.num_dofs; ++i) {
    NodeAssignment& as = table.boundary_aware[i];
    if (c.dof_tris[i].empty())
      throw DegenerateAssignmentRegion("build_assignments: orphan dof");
    table.nodewise_triangle[i] = c.dof_tris[i].front();

    if (space.on_gamma[i]) {
      as.kind = NodeAssignment::Kind::GammaEdge;
      for (const auto& be : mesh.boundary_edges) {
        if (be.on_axis) continue;
        if (dof_on_boundary_edge(space, c, i, be)) {
          as.edge_a = be.a;
          as.edge_b = be.b;
          break;
        }
      }
      if (as.edge_a < 0)
        throw DegenerateAssignmentRegion("build_assignments: Gamma node "
                                         "without a Gamma edge");
    } else if (space.on_gamma0[i]) {
      for (const auto& be : mesh.boundary_edges) {
        if (!be.on_axis) continue;
        if (dof_on_boundary_edge(space, c, i, be)) {
          as.kind = NodeAssignment::Kind::AxisEdge;
          as.edge_a = be.a;
          as.edge_b = be.b;
          as.triangle = c.edge_tris.at(std::minmax(be.a, be.b)).front();
          break;
        }
      }
      if (as.edge_a < 0)
        throw DegenerateAssignmentRegion("build_assignments: Gamma0 node "
                                         "without an axis edge");
    } else {
      as.kind = NodeAssignment::Kind::Triangle;
      as.triangle = -1;
      for (int t : c.dof_tris[i])
        if (!touches_axis(mesh, t)) {
          as.triangle = t;
          break;
        }
      if (as.triangle < 0) {
        as.triangle = c.dof_tris[i].front();
        if (!warned) {
          std::cerr << "build_assignments: interior node with only "
                       "axis-touching triangles; using nearest\n";
          warned = true;
        }
      }
    }
  }
  return table;
}

namespace {

Eigen::VectorXd run_operator(const Scalar2D& v, const ScalarSpace& space,
                             bool minus_variant) {
  const auto table = build_assignments(space);
  const TriMesh& mesh = *space.mesh;
  Eigen::VectorXd out(space.num_dofs);
  for (int i = 0; i < space.num_dofs; ++i) {
    const auto& as = table.boundary_aware[i];
    const Eigen::Vector2d xi(space.dof_coords(i, 0), space.dof_coords(i, 1));
    switch (as.kind) {
      case NodeAssignment::Kind::GammaEdge:
        out(i) = edge_projection(v, space, as.edge_a, as.edge_b,
                                 /*r_weight=*/true,
                                 edge_parameter(mesh, as.edge_a, as.edge_b, xi));
        break;
      case NodeAssignment::Kind::AxisEdge:
        if (minus_variant)
          out(i) = edge_projection(
              v, space, as.edge_a, as.edge_b, /*r_weight=*/false,
              edge_parameter(mesh, as.edge_a, as.edge_b, xi));
        else
          out(i) = triangle_projection(v, space, as.triangle,
                                       reference_coords(mesh, as.triangle, xi));
        break;
      case NodeAssignment::Kind::Triangle:
        out(i) = triangle_projection(v, space, as.triangle,
                                     reference_coords(mesh, as.triangle, xi));
        break;
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXd interpolate_plus(const Scalar2D& v, const ScalarSpace& space) {
  return run_operator(v, space, /*minus_variant=*/false);
}

Eigen::VectorXd interpolate_minus(const Scalar2D& v, const ScalarSpace& space) {
  return run_operator(v, space, /*minus_variant=*/true);
}

Eigen::VectorXd project_nodewise(const Scalar2D& v, const ScalarSpace& space) {
  const auto table = build_assignments(space);
  const TriMesh& mesh = *space.mesh;
  Eigen::VectorXd out(space.num_dofs);
  for (int i = 0; i < space.num_dofs; ++i) {
    const int t = table.nodewise_triangle[i];
    const Eigen::Vector2d xi(space.dof_coords(i, 0), space.dof_coords(i, 1));
    out(i) = triangle_projection(v, space, t, reference_coords(mesh, t, xi));
  }
  return out;
}

}  // namespace axistokes
