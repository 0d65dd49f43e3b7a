#include "axistokes/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "axistokes/errors.hpp"

namespace axistokes {

namespace {

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d d = b - a;
  const double len2 = d.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Proper or improper intersection of open segments (shared endpoints of
// adjacent edges are excluded by the caller).
bool segments_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  const double d1 = cross2(b - a, c - a);
  const double d2 = cross2(b - a, d - a);
  const double d3 = cross2(d - c, a - c);
  const double d4 = cross2(d - c, b - c);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
  auto on = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q,
               const Eigen::Vector2d& r) {
    return std::abs(cross2(q - p, r - p)) <= 1e-14 * (q - p).norm() *
                                                 ((r - p).norm() + 1.0) &&
           r.x() >= std::min(p.x(), q.x()) - 1e-14 &&
           r.x() <= std::max(p.x(), q.x()) + 1e-14 &&
           r.y() >= std::min(p.y(), q.y()) - 1e-14 &&
           r.y() <= std::max(p.y(), q.y()) + 1e-14;
  };
  return on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b);
}

}  // namespace

double MeridianDomain::diameter() const {
  double d = 0.0;
  for (int i = 0; i < num_vertices(); ++i)
    for (int j = i + 1; j < num_vertices(); ++j)
      d = std::max(d, (vertex(i) - vertex(j)).norm());
  return d;
}

bool MeridianDomain::is_corner(int v) const {
  return std::find(corner_set.begin(), corner_set.end(), v) != corner_set.end();
}

bool MeridianDomain::edge_on_axis(int e) const {
  return std::find(gamma0_edges.begin(), gamma0_edges.end(), e) !=
         gamma0_edges.end();
}

MeridianDomain build_domain(
    const Eigen::Matrix<double, Eigen::Dynamic, 2>& vertices_in,
    double axis_tolerance, bool allow_no_axis) {
  const int n = static_cast<int>(vertices_in.rows());
  if (n < 3) throw NonSimplePolygon("build_domain: need at least 3 vertices");

  double diam = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      diam = std::max(diam, (vertices_in.row(i) - vertices_in.row(j)).norm());
  if (diam <= 0.0) throw NonSimplePolygon("build_domain: degenerate polygon");
  const double tol = axis_tolerance > 0 ? axis_tolerance : 1e-12 * diam;

  MeridianDomain dom;
  dom.axis_tolerance = tol;
  dom.vertices = vertices_in;
  for (int i = 0; i < n; ++i) {
    const double r = dom.vertices(i, 0);
    if (r < -tol)
      throw NegativeRadius("build_domain: vertex " + std::to_string(i) +
                           " has r = " + std::to_string(r));
    if (std::abs(r) <= tol) dom.vertices(i, 0) = 0.0;
  }

  // Normalize to counterclockwise orientation.
  double area2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto a = dom.vertices.row(i);
    const auto b = dom.vertices.row((i + 1) % n);
    area2 += a(0) * b(1) - b(0) * a(1);
  }
  if (std::abs(area2) < 1e-14 * diam * diam)
    throw NonSimplePolygon("build_domain: zero-area polygon");
  if (area2 < 0) dom.vertices = dom.vertices.colwise().reverse().eval();

  // Simplicity: no two non-adjacent edges intersect.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(dom.vertex(i), dom.vertex((i + 1) % n),
                             dom.vertex(j), dom.vertex((j + 1) % n)))
        throw NonSimplePolygon("build_domain: edges " + std::to_string(i) +
                               " and " + std::to_string(j) + " intersect");
    }
  }

  dom.vertex_kinds.resize(n);
  for (int i = 0; i < n; ++i)
    dom.vertex_kinds[i] =
        dom.vertices(i, 0) == 0.0 ? VertexKind::OnAxis : VertexKind::OffAxis;

  for (int e = 0; e < n; ++e)
    if (dom.vertices(e, 0) == 0.0 && dom.vertices((e + 1) % n, 0) == 0.0)
      dom.gamma0_edges.push_back(e);
  if (dom.gamma0_edges.empty() && !allow_no_axis)
    throw EmptyAxisContact(
        "build_domain: no boundary edge on r = 0 (pass allow_no_axis to "
        "accept)");

  dom.interior_angles.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d prev = dom.vertex((i + n - 1) % n);
    const Eigen::Vector2d next = dom.vertex((i + 1) % n);
    const Eigen::Vector2d din = dom.vertex(i) - prev;
    const Eigen::Vector2d dout = next - dom.vertex(i);
    const double turn = std::atan2(cross2(din, dout), din.dot(dout));
    dom.interior_angles[i] = M_PI - turn;  // CCW orientation
  }

  for (int i = 0; i < n; ++i)
    if (std::abs(dom.interior_angles[i] - M_PI) > 1e-9)
      dom.corner_set.push_back(i);

  double L = std::numeric_limits<double>::infinity();
  for (int v = 0; v < n; ++v) {
    for (int e = 0; e < n; ++e) {
      if (e == v || (e + 1) % n == v) continue;  // edges incident to v
      L = std::min(L, point_segment_distance(dom.vertex(v), dom.vertex(e),
                                             dom.vertex((e + 1) % n)));
    }
  }
  dom.separation_L = L;
  if (!(L > 0))
    throw NonSimplePolygon("build_domain: vertex touches a disjoint edge");
  return dom;
}

double interior_angle(const MeridianDomain& domain, int vertex_index) {
  if (vertex_index < 0 || vertex_index >= domain.num_vertices())
    throw Error("interior_angle: vertex index out of range");
  return domain.interior_angles[vertex_index];
}

MeridianDomain builtin_domain(const std::string& name) {
  Eigen::Matrix<double, Eigen::Dynamic, 2> v;
  if (name == "unit_square") {
    v.resize(4, 2);
    v << 0, 0, 1, 0, 1, 1, 0, 1;
  } else if (name == "omega1") {
    // 0.8 x 1 rectangle with the right edge dented inward at mid-height:
    // the dent vertex has interior angle exactly pi + 0.05*pi = 1.05*pi,
    // all other angles are convex (90 or 85.5 degrees). Proportions keep
    // every edge and triangulation diagonal within 4 x (L/2) so the level-0
    // mesh needs only two uniform refinements.
    const double q = 0.8 - 0.5 * std::tan(0.025 * M_PI);
    v.resize(5, 2);
    v << 0, 0, 0.8, 0, q, 0.5, 0.8, 1, 0, 1;
  } else if (name == "omega2") {
    // Pentagon with an on-axis corner at (0,1) of interior angle exactly
    // 0.75*pi (edge leaving the axis at 45 degrees); other angles are 90 or
    // 135 degrees.
    v.resize(5, 2);
    v << 0, 0, 1, 0, 1, 1, 0.5, 1.5, 0, 1;
  } else {
    throw Error("builtin_domain: unknown name '" + name + "'");
  }
  return build_domain(v);
}

int builtin_marked_vertex(const std::string& name) {
  if (name == "omega1") return 2;  // the reentrant dent vertex
  if (name == "omega2") return 4;  // the on-axis 0.75*pi corner
  throw Error("builtin_marked_vertex: no marked vertex for '" + name + "'");
}

MeridianDomain load_domain(const std::string& name_or_path) {
  if (name_or_path == "unit_square" || name_or_path == "omega1" ||
      name_or_path == "omega2")
    return builtin_domain(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw Error("load_domain: cannot open '" + name_or_path + "'");
  nlohmann::json j;
  in >> j;
  const auto& verts = j.at("vertices");
  Eigen::Matrix<double, Eigen::Dynamic, 2> v(verts.size(), 2);
  for (size_t i = 0; i < verts.size(); ++i) {
    v(i, 0) = verts[i].at(0).get<double>();
    v(i, 1) = verts[i].at(1).get<double>();
  }
  const double tol = j.value("axis_tolerance", -1.0);
  return build_domain(v, tol);
}

}  // namespace axistokes
