#include "axistokes/space.hpp"

#include <map>

#include "axistokes/errors.hpp"

namespace axistokes {

ScalarSpace build_scalar_space(const TriMesh& mesh, int degree) {
  if (degree < 1) throw UnsupportedDegree("build_scalar_space: degree >= 1");
  const auto& el = lagrange_element(degree);
  ScalarSpace sp;
  sp.mesh = &mesh;
  sp.degree = degree;

  // global edge ids keyed by sorted vertex pair
  std::map<std::pair<int, int>, int> edge_id;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (int e = 0; e < 3; ++e) {
      const int u = mesh.triangles(t, e), v = mesh.triangles(t, (e + 1) % 3);
      edge_id.emplace(std::minmax(u, v), 0);
    }
  int ne = 0;
  for (auto& [key, id] : edge_id) id = ne++;

  const int per_edge = degree - 1;
  const int per_cell = (degree - 1) * (degree - 2) / 2;
  const int edge_offset = mesh.num_nodes();
  const int cell_offset = edge_offset + ne * per_edge;
  sp.num_dofs = cell_offset + per_cell * mesh.num_triangles();

  sp.cell_dofs.resize(mesh.num_triangles(), el.num_nodes());
  sp.dof_coords.resize(sp.num_dofs, 2);
  sp.dof_coords.topRows(mesh.num_nodes()) = mesh.nodes;

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const int gv[3] = {mesh.triangles(t, 0), mesh.triangles(t, 1),
                       mesh.triangles(t, 2)};
    for (int n = 0; n < el.num_nodes(); ++n) {
      int dof = -1;
      if (el.entity_dim[n] == 0) {
        dof = gv[el.entity_index[n]];
      } else if (el.entity_dim[n] == 1) {
        const int a = gv[el.entity_index[n]];
        const int b = gv[(el.entity_index[n] + 1) % 3];
        const int id = edge_id.at(std::minmax(a, b));
        // entity_order counts from local first vertex a; global slots count
        // from the lower-index vertex
        const int s = el.entity_order[n];
        const int slot = a < b ? s : per_edge - 1 - s;
        dof = edge_offset + id * per_edge + slot;
      } else {
        dof = cell_offset + t * per_cell + el.entity_order[n];
      }
      sp.cell_dofs(t, n) = dof;
      if (dof >= mesh.num_nodes()) {
        // affine image of the reference node
        const Eigen::Vector2d p0 = mesh.node(gv[0]);
        const Eigen::Vector2d d1 = mesh.node(gv[1]) - p0;
        const Eigen::Vector2d d2 = mesh.node(gv[2]) - p0;
        sp.dof_coords.row(dof) =
            (p0 + el.nodes(n, 0) * d1 + el.nodes(n, 1) * d2).transpose();
      }
    }
  }

  sp.on_gamma0.assign(sp.num_dofs, 0);
  sp.on_gamma.assign(sp.num_dofs, 0);
  for (const auto& be : mesh.boundary_edges) {
    auto& flag = be.on_axis ? sp.on_gamma0 : sp.on_gamma;
    flag[be.a] = 1;
    flag[be.b] = 1;
    const int id = edge_id.at(std::minmax(be.a, be.b));
    for (int s = 0; s < per_edge; ++s) flag[edge_offset + id * per_edge + s] = 1;
  }
  return sp;
}

TaylorHoodSpace build_space(const TriMesh& mesh, int k) {
  if (k < 1) throw UnsupportedDegree("build_space: Taylor-Hood needs k >= 1");
  TaylorHoodSpace th;
  th.mesh = &mesh;
  th.k = k;
  th.velocity = build_scalar_space(mesh, k + 1);
  th.pressure = build_scalar_space(mesh, k);
  th.ur_constrained.resize(th.velocity.num_dofs);
  th.uz_constrained.resize(th.velocity.num_dofs);
  for (int i = 0; i < th.velocity.num_dofs; ++i) {
    th.ur_constrained[i] = th.velocity.on_gamma0[i] || th.velocity.on_gamma[i];
    th.uz_constrained[i] = th.velocity.on_gamma[i];
  }
  return th;
}

}  // namespace axistokes
