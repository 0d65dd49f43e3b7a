#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace axistokes {

enum class VertexKind { OnAxis, OffAxis };

/// Polygonal meridian domain in the rz half-plane {r >= 0}.
///
/// The boundary splits into Gamma0 (edges on the axis r = 0) and Gamma
/// (everything else). Vertices with interior angle != pi form the corner set
/// Q that drives mesh grading.
struct MeridianDomain {
  Eigen::Matrix<double, Eigen::Dynamic, 2> vertices;  // CCW, (r, z)
  std::vector<int> gamma0_edges;          // edge i = segment [v_i, v_{i+1}]
  std::vector<VertexKind> vertex_kinds;
  std::vector<double> interior_angles;    // radians, in (0, 2pi)
  std::vector<int> corner_set;            // Q: vertices with angle != pi
  double separation_L = 0.0;              // min vertex-to-disjoint-edge dist
  double axis_tolerance = 0.0;

  int num_vertices() const { return static_cast<int>(vertices.rows()); }
  Eigen::Vector2d vertex(int i) const { return vertices.row(i); }
  double diameter() const;
  bool is_corner(int v) const;
  bool edge_on_axis(int e) const;
};

/// Validates and classifies a polygon given as a CCW (or CW; reversed
/// automatically) vertex list. r-coordinates within `axis_tolerance` of zero
/// are snapped to exactly zero. Pass axis_tolerance <= 0 for the default
/// 1e-12 x diameter.
MeridianDomain build_domain(
    const Eigen::Matrix<double, Eigen::Dynamic, 2>& vertices,
    double axis_tolerance = -1.0, bool allow_no_axis = false);

double interior_angle(const MeridianDomain& domain, int vertex_index);

/// Built-in domains: "unit_square", "omega1" (reentrant 1.05*pi off-axis
/// corner), "omega2" (0.75*pi on-axis corner).
MeridianDomain builtin_domain(const std::string& name);

/// Index of the marked singular vertex of a built-in domain.
int builtin_marked_vertex(const std::string& name);

/// Loads { "vertices": [[r,z],...], "axis_tolerance": t? } from a JSON file,
/// or resolves a built-in name.
MeridianDomain load_domain(const std::string& name_or_path);

}  // namespace axistokes
