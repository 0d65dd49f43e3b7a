#include "axistokes/norms.hpp"

#include <Eigen/LU>

#include <cmath>
#include <iomanip>
#include <ostream>

#include "axistokes/errors.hpp"
#include "axistokes/quadrature.hpp"

namespace axistokes {

namespace {

double theta_weight(const MeridianDomain& domain, double r, double z) {
  const double cap = domain.separation_L / 2;
  double d = cap;
  for (int q : domain.corner_set)
    d = std::min(d, (Eigen::Vector2d(r, z) - domain.vertex(q)).norm());
  return d;
}

struct Accumulator {
  const NormSpec& spec;
  double sum = 0;

  void add(double w, double r, double z, double v, const Eigen::Vector2d& g) {
    const double wr = w * r;
    switch (spec.kind) {
      case NormKind::L2_1:
        sum += wr * v * v;
        break;
      case NormKind::H1_1:
      case NormKind::H1_plus:
        sum += wr * (v * v + g.squaredNorm());
        break;
      case NormKind::H1_minus:
        sum += wr * (v * v + g.squaredNorm()) + w * v * v / r;
        break;
      case NormKind::Kmu1: {
        if (!spec.domain)
          throw UnsupportedSpec("weighted_norm: Kmu1 needs a domain");
        if (spec.m < 0 || spec.m > 1)
          throw UnsupportedSpec("weighted_norm: Kmu1 supports m in {0, 1}");
        const double th = theta_weight(*spec.domain, r, z);
        const double w0 = std::pow(th, -spec.mu);
        sum += wr * w0 * w0 * v * v;
        if (spec.m == 1) {
          const double w1 = std::pow(th, 1.0 - spec.mu);
          sum += wr * w1 * w1 * g.squaredNorm();
        }
        break;
      }
    }
  }
};

}  // namespace

double weighted_norm(const ScalarSpace& space, const Eigen::VectorXd& coef,
                     const NormSpec& spec) {
  const TriMesh& mesh = *space.mesh;
  const auto& el = space.element();
  const int qdeg =
      spec.quadrature_degree > 0 ? spec.quadrature_degree : 2 * space.degree + 4;
  const auto& rule = quadrature_rule(qdeg);
  const Eigen::MatrixXd bv = el.eval(rule.points);
  Eigen::MatrixXd bx, by;
  el.eval_grad(rule.points, bx, by);

  Accumulator acc{spec};
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::Vector2d p0 = mesh.node(mesh.triangles(t, 0));
    Eigen::Matrix2d J;
    J.col(0) = mesh.node(mesh.triangles(t, 1)) - p0;
    J.col(1) = mesh.node(mesh.triangles(t, 2)) - p0;
    const double detJ = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
    const Eigen::Matrix2d Jit = J.inverse().transpose();

    Eigen::VectorXd local(el.num_nodes());
    for (int i = 0; i < el.num_nodes(); ++i)
      local(i) = coef(space.cell_dofs(t, i));

    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d x = p0 + J * rule.points.row(q).transpose().eval();
      const double v = bv.row(q).dot(local);
      const Eigen::Vector2d gref(bx.row(q).dot(local), by.row(q).dot(local));
      acc.add(rule.weights(q) * detJ, x(0), x(1), v, Jit * gref);
    }
  }
  return std::sqrt(acc.sum);
}

double weighted_norm(const std::function<double(double, double)>& v,
                     const std::function<Eigen::Vector2d(double, double)>& dv,
                     const TriMesh& mesh, const NormSpec& spec) {
  const int qdeg = spec.quadrature_degree > 0 ? spec.quadrature_degree : 12;
  const auto& rule = quadrature_rule(qdeg);
  Accumulator acc{spec};
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::Vector2d p0 = mesh.node(mesh.triangles(t, 0));
    Eigen::Matrix2d J;
    J.col(0) = mesh.node(mesh.triangles(t, 1)) - p0;
    J.col(1) = mesh.node(mesh.triangles(t, 2)) - p0;
    const double detJ = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d x = p0 + J * rule.points.row(q).transpose().eval();
      acc.add(rule.weights(q) * detJ, x(0), x(1), v(x(0), x(1)),
              dv(x(0), x(1)));
    }
  }
  return std::sqrt(acc.sum);
}

namespace {

int level_of(const MeshHierarchy& h, const TriMesh* mesh) {
  for (size_t j = 0; j < h.levels.size(); ++j)
    if (&h.levels[j] == mesh) return static_cast<int>(j);
  return -1;
}

}  // namespace

Eigen::VectorXd prolong_scalar(const MeshHierarchy& hierarchy,
                               const ScalarSpace& coarse,
                               const Eigen::VectorXd& coarse_coef,
                               const ScalarSpace& fine) {
  const int ci = level_of(hierarchy, coarse.mesh);
  const int fi = level_of(hierarchy, fine.mesh);
  if (ci < 0 || fi < 0 || fi < ci || coarse.degree != fine.degree)
    throw NotNested("prolong_scalar: spaces not on nested hierarchy levels");
  if (fi == ci) return coarse_coef;

  const auto& el = coarse.element();
  const TriMesh& fmesh = *fine.mesh;
  const TriMesh& cmesh = *coarse.mesh;
  Eigen::VectorXd out(fine.num_dofs);

  for (int t = 0; t < fmesh.num_triangles(); ++t) {
    int a = t;
    for (int l = fi; l > ci; --l) {
      const auto& pm = hierarchy.levels[l].parent_map;
      if (pm.empty()) throw NotNested("prolong_scalar: missing parent map");
      a = pm[a];
    }
    const Eigen::Vector2d p0 = cmesh.node(cmesh.triangles(a, 0));
    Eigen::Matrix2d J;
    J.col(0) = cmesh.node(cmesh.triangles(a, 1)) - p0;
    J.col(1) = cmesh.node(cmesh.triangles(a, 2)) - p0;
    const Eigen::Matrix2d Jinv = J.inverse();

    const int nb = el.num_nodes();
    Eigen::Matrix<double, Eigen::Dynamic, 2> ref(nb, 2);
    for (int n = 0; n < nb; ++n) {
      const int dof = fine.cell_dofs(t, n);
      const Eigen::Vector2d x(fine.dof_coords(dof, 0),
                              fine.dof_coords(dof, 1));
      ref.row(n) = (Jinv * (x - p0)).transpose();
    }
    const Eigen::MatrixXd phi = el.eval(ref);  // nb x nb
    Eigen::VectorXd local(nb);
    for (int i = 0; i < nb; ++i) local(i) = coarse_coef(coarse.cell_dofs(a, i));
    const Eigen::VectorXd vals = phi * local;
    for (int n = 0; n < nb; ++n) out(fine.cell_dofs(t, n)) = vals(n);
  }
  return out;
}

Eigen::VectorXd prolong_solution(const MeshHierarchy& hierarchy,
                                 const FieldSolution& coarse,
                                 const TaylorHoodSpace& fine) {
  const TaylorHoodSpace& cs = *coarse.space;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(fine.total());
  x.segment(0, fine.n_ur()) =
      prolong_scalar(hierarchy, cs.velocity, coarse.ur, fine.velocity);
  x.segment(fine.n_ur(), fine.n_uz()) =
      prolong_scalar(hierarchy, cs.velocity, coarse.uz, fine.velocity);
  x.segment(2 * fine.n_ur(), fine.n_p()) =
      prolong_scalar(hierarchy, cs.pressure, coarse.p, fine.pressure);
  return x;
}

RateTable level_errors(const MeshHierarchy& hierarchy,
                       const std::vector<FieldSolution>& solutions) {
  if (solutions.size() != hierarchy.levels.size())
    throw LevelMismatch("level_errors: one solution per level required");
  for (size_t j = 0; j < solutions.size(); ++j)
    if (solutions[j].space->mesh != &hierarchy.levels[j])
      throw LevelMismatch("level_errors: solution/hierarchy level mismatch");

  RateTable table;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (size_t j = 1; j < solutions.size(); ++j) {
    const TaylorHoodSpace& fs = *solutions[j].space;
    const int qdeg = 2 * (fs.k + 1) + 4;
    const Eigen::VectorXd dur =
        solutions[j].ur - prolong_scalar(hierarchy, solutions[j - 1].space->velocity,
                                         solutions[j - 1].ur, fs.velocity);
    const Eigen::VectorXd duz =
        solutions[j].uz - prolong_scalar(hierarchy, solutions[j - 1].space->velocity,
                                         solutions[j - 1].uz, fs.velocity);
    const Eigen::VectorXd dp =
        solutions[j].p - prolong_scalar(hierarchy, solutions[j - 1].space->pressure,
                                        solutions[j - 1].p, fs.pressure);

    NormSpec minus{NormKind::H1_minus};
    NormSpec plus{NormKind::H1_plus};
    NormSpec l2{NormKind::L2_1};
    minus.quadrature_degree = plus.quadrature_degree = l2.quadrature_degree =
        qdeg;
    const double er = weighted_norm(fs.velocity, dur, minus);
    const double ez = weighted_norm(fs.velocity, duz, plus);

    RateTable::Row row;
    row.level = static_cast<int>(j);
    row.err_u = std::sqrt(er * er + ez * ez);
    row.err_p = weighted_norm(fs.pressure, dp, l2);
    if (table.rows.empty()) {
      row.rate_u = row.rate_p = nan;
    } else {
      const auto& prev = table.rows.back();
      row.rate_u = row.err_u > 0 ? std::log2(prev.err_u / row.err_u) : nan;
      row.rate_p = row.err_p > 0 ? std::log2(prev.err_p / row.err_p) : nan;
    }
    table.rows.push_back(row);
  }
  return table;
}

namespace {

void format_rate(std::ostream& out, double r) {
  if (std::isnan(r))
    out << "x";
  else
    out << std::fixed << std::setprecision(3) << r << std::defaultfloat;
}

}  // namespace

void write_rate_table_markdown(const RateTable& table, std::ostream& out) {
  out << "| level | error_u | rate_u | error_p | rate_p |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto& row : table.rows) {
    out << "| " << row.level << " | " << std::scientific
        << std::setprecision(8) << row.err_u << " | ";
    format_rate(out, row.rate_u);
    out << " | " << std::scientific << std::setprecision(8) << row.err_p
        << " | ";
    format_rate(out, row.rate_p);
    out << " |\n";
  }
  out << std::defaultfloat;
}

void write_rate_table_csv(const RateTable& table, std::ostream& out) {
  out << std::setprecision(17);
  out << "level,error_u,rate_u,error_p,rate_p\n";
  for (const auto& row : table.rows)
    out << row.level << "," << row.err_u << "," << row.rate_u << ","
        << row.err_p << "," << row.rate_p << "\n";
}

DilationNorms dilation_scaling_check(
    const std::function<double(double, double)>& v,
    const std::function<Eigen::Vector2d(double, double)>& dv,
    const std::vector<Eigen::Matrix<double, 3, 2>>& region, double half_L,
    double lambda, int m, double a) {
  if (m < 0 || m > 1)
    throw UnsupportedSpec("dilation_scaling_check: m in {0, 1}");
  const auto& rule = quadrature_rule(12);
  DilationNorms out;
  double kmu = 0, kmu_s = 0, rinv = 0, rinv_s = 0;
  for (const auto& tri : region) {
    const Eigen::Vector2d p0 = tri.row(0);
    Eigen::Matrix2d J;
    J.col(0) = (tri.row(1) - tri.row(0)).transpose();
    J.col(1) = (tri.row(2) - tri.row(0)).transpose();
    const double detJ = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d x = p0 + J * rule.points.row(q).transpose().eval();
      const double rho = x.norm();
      if (rho > half_L || rho / lambda > half_L)
        throw RegionOutsideNeighborhood(
            "dilation_scaling_check: region leaves the vertex neighborhood");
      const double r = x(0);
      if (!(r > 0))
        throw RegionOutsideNeighborhood(
            "dilation_scaling_check: nonpositive r in region");
      const double w = rule.weights(q) * std::abs(detJ);
      const double vx = v(x(0), x(1));
      const Eigen::Vector2d g = dv(x(0), x(1));

      // G contribution, theta = |x|
      kmu += w * r * std::pow(rho, -2 * a) * vx * vx;
      if (m == 1) kmu += w * r * std::pow(rho, 2 - 2 * a) * g.squaredNorm();
      rinv += w * vx * vx / r;

      // G_lambda at y = x / lambda with v_lambda(y) = v(lambda y) = v(x):
      // weight w |detJ|/lambda^2, r_y = r/lambda, theta = rho/lambda,
      // grad v_lambda = lambda g
      const double wl = w / (lambda * lambda);
      const double rl = r / lambda, rhol = rho / lambda;
      kmu_s += wl * rl * std::pow(rhol, -2 * a) * vx * vx;
      if (m == 1)
        kmu_s += wl * rl * std::pow(rhol, 2 - 2 * a) * lambda * lambda *
                 g.squaredNorm();
      rinv_s += wl * vx * vx / rl;
    }
  }
  out.kmu = std::sqrt(kmu);
  out.kmu_scaled = std::sqrt(kmu_s);
  out.rinv = std::sqrt(rinv);
  out.rinv_scaled = std::sqrt(rinv_s);
  return out;
}

}  // namespace axistokes
