#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "axistokes/domain.hpp"

namespace axistokes {

struct BoundaryEdge {
  int a = -1, b = -1;    // node indices
  bool on_axis = false;  // Gamma0 (r = 0) vs Gamma
};

/// Conforming triangulation of the meridian domain. Refinement keeps the
/// parent's nodes with their indices and appends the edge-split nodes, so a
/// node index is stable along the hierarchy.
struct TriMesh {
  Eigen::Matrix<double, Eigen::Dynamic, 2> nodes;     // (r, z)
  Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;    // CCW triples
  std::vector<BoundaryEdge> boundary_edges;
  int level = 0;
  std::vector<int> parent_map;   // child triangle -> parent index; empty at 0
  std::vector<int> marked_nodes; // node index per GradingPlan entry

  int num_nodes() const { return static_cast<int>(nodes.rows()); }
  int num_triangles() const { return static_cast<int>(triangles.rows()); }
  Eigen::Vector2d node(int i) const { return nodes.row(i); }
  double triangle_area(int t) const;
  double min_angle() const;  // radians, over all triangles
};

/// Grading parameters: one kappa per marked vertex of the corner set Q.
struct GradingPlan {
  struct Entry {
    int vertex_index = -1;  // index into domain.vertices
    double kappa = 0.5;     // in (0, 1/2]
  };
  std::vector<Entry> entries;
  int degree_k = 1;  // pressure degree of the intended Taylor-Hood pair
};

struct MeshHierarchy {
  MeridianDomain domain;
  GradingPlan plan;
  std::vector<TriMesh> levels;  // T_0 .. T_n
};

/// Level-0 mesh: constrained Delaunay triangulation of the polygon followed
/// by uniform midpoint refinements until every edge is <= min(max_edge, L/2)
/// and no triangle touches two vertices of the corner set Q. The polygon
/// vertices are nodes 0..n-1.
TriMesh initial_triangulation(const MeridianDomain& domain, double max_edge);

/// One graded refinement step: each triangle splits into four via its edge
/// points; an edge incident to marked node Q_i splits at ratio kappa_i from
/// Q_i, every other edge at its midpoint.
TriMesh kappa_refine(const TriMesh& mesh, const MeridianDomain& domain,
                     const GradingPlan& plan);

MeshHierarchy build_hierarchy(const MeridianDomain& domain,
                              const GradingPlan& plan, int n_levels,
                              double max_edge);

struct GradingReport {
  struct Level {
    int level = 0;
    std::vector<double> marked_edge_length;  // per plan entry: shortest
                                             // incident edge at the vertex
    double min_angle = 0.0;                  // radians
  };
  std::vector<Level> levels;
};

GradingReport grading_diagnostics(const MeshHierarchy& hierarchy);

/// Plain-text export: "nodes <N>" header then r z lines, "triangles <T>"
/// then index triples, "boundary_edges <B>" then "a b tag" with tag gamma0
/// or gamma.
void write_mesh_text(const TriMesh& mesh, std::ostream& out);

/// CSV export of the triangle table with coordinates, for plotting.
void write_mesh_csv(const TriMesh& mesh, std::ostream& out);

}  // namespace axistokes
