#include "axistokes/mesh.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <ostream>
#include <unordered_map>

#include "axistokes/errors.hpp"

namespace axistokes {

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double tri_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                const Eigen::Vector2d& c) {
  return 0.5 * cross2(b - a, c - a);
}

// Ear clipping of a CCW simple polygon given as node indices.
std::vector<std::array<int, 3>> ear_clip(
    const Eigen::Matrix<double, Eigen::Dynamic, 2>& pts) {
  const int n = static_cast<int>(pts.rows());
  std::vector<int> poly(n);
  for (int i = 0; i < n; ++i) poly[i] = i;
  std::vector<std::array<int, 3>> tris;

  auto at = [&](int i) -> Eigen::Vector2d {
    return pts.row(poly[(i + poly.size()) % poly.size()]);
  };
  auto inside = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                   const Eigen::Vector2d& c, const Eigen::Vector2d& p) {
    const double d1 = cross2(b - a, p - a);
    const double d2 = cross2(c - b, p - b);
    const double d3 = cross2(a - c, p - c);
    return d1 > 0 && d2 > 0 && d3 > 0;
  };

  int guard = 0;
  while (poly.size() > 3) {
    if (++guard > 10000) throw MeshingFailed("ear_clip: no ear found");
    bool clipped = false;
    const int m = static_cast<int>(poly.size());
    for (int i = 0; i < m; ++i) {
      const Eigen::Vector2d a = at(i - 1), b = at(i), c = at(i + 1);
      if (tri_area(a, b, c) <= 1e-14) continue;  // reflex or degenerate
      bool ear = true;
      for (int j = 0; j < m && ear; ++j) {
        if (j == (i - 1 + m) % m || j == i || j == (i + 1) % m) continue;
        if (inside(a, b, c, at(j))) ear = false;
      }
      if (!ear) continue;
      tris.push_back({poly[(i - 1 + m) % m], poly[i], poly[(i + 1) % m]});
      poly.erase(poly.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped) throw MeshingFailed("ear_clip: polygon appears non-simple");
  }
  tris.push_back({poly[0], poly[1], poly[2]});
  return tris;
}

bool in_circumcircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                     const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  Eigen::Matrix3d m;
  m << a.x() - d.x(), a.y() - d.y(), (a - d).squaredNorm(),
       b.x() - d.x(), b.y() - d.y(), (b - d).squaredNorm(),
       c.x() - d.x(), c.y() - d.y(), (c - d).squaredNorm();
  return m.determinant() > 1e-14;
}

// Lawson flips toward the constrained Delaunay triangulation; polygon
// boundary edges are never flipped (they are the only non-shared edges).
void lawson_flips(const Eigen::Matrix<double, Eigen::Dynamic, 2>& pts,
                  std::vector<std::array<int, 3>>& tris) {
  for (int pass = 0; pass < 100; ++pass) {
    // edge (min,max) -> list of (triangle, opposite-vertex) pairs
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t)
      for (int e = 0; e < 3; ++e) {
        const int u = tris[t][e], v = tris[t][(e + 1) % 3];
        edges[{std::min(u, v), std::max(u, v)}].push_back(
            {t, tris[t][(e + 2) % 3]});
      }
    bool flipped = false;
    for (const auto& [key, use] : edges) {
      if (use.size() != 2) continue;
      const auto [t1, p] = use[0];
      const auto [t2, q] = use[1];
      const Eigen::Vector2d a = pts.row(key.first), b = pts.row(key.second),
                            pp = pts.row(p), qq = pts.row(q);
      // Flip only if the quad is strictly convex and Delaunay is violated.
      if (tri_area(pp, a, qq) <= 1e-14 || tri_area(qq, b, pp) <= 1e-14)
        continue;
      if (!in_circumcircle(a, b, pp, qq)) continue;
      tris[t1] = {p, key.first, q};
      tris[t2] = {q, key.second, p};
      flipped = true;
      break;  // edge map invalidated; restart the pass
    }
    if (!flipped) return;
  }
}

struct EdgeKey {
  int a, b;
  bool operator<(const EdgeKey& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
};

// One red-refinement sweep. kappa_of[node] > 0 marks a graded node.
TriMesh red_refine(const TriMesh& mesh,
                   const std::unordered_map<int, double>& kappa_of) {
  TriMesh child;
  child.level = mesh.level + 1;
  child.marked_nodes = mesh.marked_nodes;

  std::map<EdgeKey, int> split_node;
  std::vector<Eigen::Vector2d> new_nodes;
  auto split = [&](int u, int v) -> int {
    const EdgeKey key{std::min(u, v), std::max(u, v)};
    auto it = split_node.find(key);
    if (it != split_node.end()) return it->second;
    Eigen::Vector2d p;
    const auto ku = kappa_of.find(u);
    const auto kv = kappa_of.find(v);
    if (ku != kappa_of.end() && kv != kappa_of.end())
      throw NonConformingInput("red_refine: edge joins two marked vertices");
    if (ku != kappa_of.end())
      p = mesh.node(u) + ku->second * (mesh.node(v) - mesh.node(u));
    else if (kv != kappa_of.end())
      p = mesh.node(v) + kv->second * (mesh.node(u) - mesh.node(v));
    else
      p = 0.5 * (mesh.node(key.a) + mesh.node(key.b));
    const int idx = mesh.num_nodes() + static_cast<int>(new_nodes.size());
    new_nodes.push_back(p);
    split_node.emplace(key, idx);
    return idx;
  };

  child.triangles.resize(4 * mesh.num_triangles(), 3);
  child.parent_map.resize(4 * mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const int v0 = mesh.triangles(t, 0), v1 = mesh.triangles(t, 1),
              v2 = mesh.triangles(t, 2);
    const int m01 = split(v0, v1), m12 = split(v1, v2), m20 = split(v2, v0);
    child.triangles.row(4 * t + 0) << v0, m01, m20;
    child.triangles.row(4 * t + 1) << v1, m12, m01;
    child.triangles.row(4 * t + 2) << v2, m20, m12;
    child.triangles.row(4 * t + 3) << m01, m12, m20;
    for (int c = 0; c < 4; ++c) child.parent_map[4 * t + c] = t;
  }

  child.nodes.resize(mesh.num_nodes() + new_nodes.size(), 2);
  child.nodes.topRows(mesh.num_nodes()) = mesh.nodes;
  for (size_t i = 0; i < new_nodes.size(); ++i)
    child.nodes.row(mesh.num_nodes() + i) = new_nodes[i];

  child.boundary_edges.reserve(2 * mesh.boundary_edges.size());
  for (const auto& be : mesh.boundary_edges) {
    const auto it =
        split_node.find(EdgeKey{std::min(be.a, be.b), std::max(be.a, be.b)});
    if (it == split_node.end())
      throw NonConformingInput("red_refine: boundary edge not part of a "
                               "triangle");
    child.boundary_edges.push_back({be.a, it->second, be.on_axis});
    child.boundary_edges.push_back({it->second, be.b, be.on_axis});
  }
  return child;
}

double longest_edge(const TriMesh& mesh) {
  double h = 0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (int e = 0; e < 3; ++e)
      h = std::max(h, (mesh.node(mesh.triangles(t, e)) -
                       mesh.node(mesh.triangles(t, (e + 1) % 3)))
                          .norm());
  return h;
}

bool two_corners_in_a_triangle(const TriMesh& mesh, int n_polygon_vertices,
                               const std::vector<int>& corner_set) {
  std::vector<char> is_corner(n_polygon_vertices, 0);
  for (int q : corner_set) is_corner[q] = 1;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    int hits = 0;
    for (int e = 0; e < 3; ++e) {
      const int v = mesh.triangles(t, e);
      if (v < n_polygon_vertices && is_corner[v]) ++hits;
    }
    if (hits >= 2) return true;
  }
  return false;
}

}  // namespace

double TriMesh::triangle_area(int t) const {
  return tri_area(node(triangles(t, 0)), node(triangles(t, 1)),
                  node(triangles(t, 2)));
}

double TriMesh::min_angle() const {
  double amin = M_PI;
  for (int t = 0; t < num_triangles(); ++t) {
    for (int e = 0; e < 3; ++e) {
      const Eigen::Vector2d a = node(triangles(t, e)),
                            b = node(triangles(t, (e + 1) % 3)),
                            c = node(triangles(t, (e + 2) % 3));
      const Eigen::Vector2d u = b - a, v = c - a;
      amin = std::min(amin, std::atan2(std::abs(cross2(u, v)), u.dot(v)));
    }
  }
  return amin;
}

TriMesh initial_triangulation(const MeridianDomain& domain, double max_edge) {
  const double cap = domain.separation_L / 2;
  if (max_edge > cap) {
    std::cerr << "initial_triangulation: max_edge " << max_edge
              << " exceeds L/2 = " << cap << "; clamping\n";
    max_edge = cap;
  }
  if (!(max_edge > 0)) throw MeshingFailed("initial_triangulation: max_edge");

  TriMesh mesh;
  mesh.nodes = domain.vertices;
  auto tris = ear_clip(domain.vertices);
  lawson_flips(domain.vertices, tris);
  mesh.triangles.resize(tris.size(), 3);
  for (size_t t = 0; t < tris.size(); ++t)
    mesh.triangles.row(t) << tris[t][0], tris[t][1], tris[t][2];
  const int n = domain.num_vertices();
  for (int e = 0; e < n; ++e)
    mesh.boundary_edges.push_back({e, (e + 1) % n, domain.edge_on_axis(e)});

  for (int t = 0; t < mesh.num_triangles(); ++t)
    if (mesh.triangle_area(t) <= 0)
      throw MeshingFailed("initial_triangulation: inverted triangle");

  const std::unordered_map<int, double> no_grading;
  int rounds = 0;
  while (longest_edge(mesh) > max_edge * (1 + 1e-9) ||
         two_corners_in_a_triangle(mesh, n, domain.corner_set)) {
    if (++rounds > 30)
      throw MeshingFailed("initial_triangulation: refinement did not settle");
    mesh = red_refine(mesh, no_grading);
  }
  mesh.level = 0;
  mesh.parent_map.clear();
  return mesh;
}

TriMesh kappa_refine(const TriMesh& mesh, const MeridianDomain& domain,
                     const GradingPlan& plan) {
  std::unordered_map<int, double> kappa_of;
  TriMesh in = mesh;
  if (in.marked_nodes.empty()) {
    // Polygon vertex i is node i on every level (nodes persist).
    for (const auto& e : plan.entries) in.marked_nodes.push_back(e.vertex_index);
  }
  if (in.marked_nodes.size() != plan.entries.size())
    throw NonConformingInput("kappa_refine: plan/mesh marker mismatch");
  for (size_t i = 0; i < plan.entries.size(); ++i) {
    const double k = plan.entries[i].kappa;
    if (!(k > 0) || k > 0.5)
      throw NonConformingInput("kappa_refine: kappa outside (0, 1/2]");
    if (plan.entries[i].vertex_index < 0 ||
        plan.entries[i].vertex_index >= domain.num_vertices())
      throw NonConformingInput("kappa_refine: bad vertex index");
    kappa_of[in.marked_nodes[i]] = k;
  }
  return red_refine(in, kappa_of);
}

MeshHierarchy build_hierarchy(const MeridianDomain& domain,
                              const GradingPlan& plan, int n_levels,
                              double max_edge) {
  MeshHierarchy h;
  h.domain = domain;
  h.plan = plan;
  h.levels.push_back(initial_triangulation(domain, max_edge));
  for (const auto& e : plan.entries)
    h.levels[0].marked_nodes.push_back(e.vertex_index);
  for (int j = 0; j < n_levels; ++j)
    h.levels.push_back(kappa_refine(h.levels.back(), domain, plan));
  return h;
}

GradingReport grading_diagnostics(const MeshHierarchy& hierarchy) {
  GradingReport rep;
  for (const auto& mesh : hierarchy.levels) {
    GradingReport::Level lv;
    lv.level = mesh.level;
    lv.min_angle = mesh.min_angle();
    for (int q : mesh.marked_nodes) {
      double d = std::numeric_limits<double>::infinity();
      for (int t = 0; t < mesh.num_triangles(); ++t)
        for (int e = 0; e < 3; ++e)
          if (mesh.triangles(t, e) == q)
            for (int o = 1; o <= 2; ++o)
              d = std::min(d, (mesh.node(mesh.triangles(t, (e + o) % 3)) -
                               mesh.node(q))
                                  .norm());
      lv.marked_edge_length.push_back(d);
    }
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

void write_mesh_text(const TriMesh& mesh, std::ostream& out) {
  out << std::setprecision(17);
  out << "# meridian mesh, level " << mesh.level << "\n";
  out << "nodes " << mesh.num_nodes() << "\n";
  for (int i = 0; i < mesh.num_nodes(); ++i)
    out << mesh.nodes(i, 0) << " " << mesh.nodes(i, 1) << "\n";
  out << "triangles " << mesh.num_triangles() << "\n";
  for (int t = 0; t < mesh.num_triangles(); ++t)
    out << mesh.triangles(t, 0) << " " << mesh.triangles(t, 1) << " "
        << mesh.triangles(t, 2) << "\n";
  out << "boundary_edges " << mesh.boundary_edges.size() << "\n";
  for (const auto& be : mesh.boundary_edges)
    out << be.a << " " << be.b << " " << (be.on_axis ? "gamma0" : "gamma")
        << "\n";
}

void write_mesh_csv(const TriMesh& mesh, std::ostream& out) {
  out << std::setprecision(17);
  out << "triangle,r0,z0,r1,z1,r2,z2\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    out << t;
    for (int e = 0; e < 3; ++e)
      out << "," << mesh.nodes(mesh.triangles(t, e), 0) << ","
          << mesh.nodes(mesh.triangles(t, e), 1);
    out << "\n";
  }
}

}  // namespace axistokes
