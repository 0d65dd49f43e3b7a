// Acceptance suite. --fast runs the cheap criteria (1, 2, 6, 7, 8);
// --rates runs the level-7 convergence studies (3, 4, 5); no flag runs all.
// One PASS/FAIL line per criterion; exit code 1 on any failure.

#include <Eigen/LU>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "axistokes/experiment.hpp"
#include "axistokes/interp.hpp"
#include "axistokes/norms.hpp"
#include "axistokes/quadrature.hpp"
#include "axistokes/solver.hpp"

using namespace axistokes;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("ACCEPTANCE %d: %s  (%s)\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void guard(int criterion, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(criterion, false, std::string("exception: ") + e.what());
  }
}

// ---- criterion 1: polynomial exactness --------------------------------

void criterion_1() {
  TriMesh mesh = initial_triangulation(builtin_domain("unit_square"), 0.5);
  const MeridianDomain dom = builtin_domain("unit_square");
  mesh = kappa_refine(mesh, dom, GradingPlan{});
  const TaylorHoodSpace th = build_space(mesh, 1);

  AssemblyOptions opts;
  opts.dirichlet_ur = [](double r, double) { return r; };
  opts.dirichlet_uz = [](double, double z) { return -2 * z; };
  const SaddleSystem sys = assemble_system(
      th, [](double, double) { return Eigen::Vector2d(1.0, 1.0).eval(); },
      opts);
  const FieldSolution sol = solve_saddle(sys);

  // c-bar from int p r = 0 on the unit square: int (r+z) r / int r = 7/6
  const double pbar = 7.0 / 6.0;
  double err = 0, scale = 0;
  for (int i = 0; i < th.n_ur(); ++i) {
    err = std::max(err, std::abs(sol.ur(i) - th.velocity.dof_coords(i, 0)));
    err = std::max(err,
                   std::abs(sol.uz(i) + 2 * th.velocity.dof_coords(i, 1)));
    scale = std::max(scale, std::abs(th.velocity.dof_coords(i, 0)) +
                                2 * std::abs(th.velocity.dof_coords(i, 1)));
  }
  for (int i = 0; i < th.n_p(); ++i)
    err = std::max(err, std::abs(sol.p(i) - (th.pressure.dof_coords(i, 0) +
                                             th.pressure.dof_coords(i, 1) -
                                             pbar)));
  const double rel = err / scale;
  char buf[128];
  std::snprintf(buf, sizeof buf, "relative coefficient error %.3e", rel);
  report(1, rel <= 1e-8, buf);
}

// ---- criterion 2: corner exponent -------------------------------------

void criterion_2() {
  const double e1 = corner_exponent_2d(1.05 * M_PI);
  const double e2 = corner_exponent_2d(2.0 * M_PI);
  char buf[128];
  std::snprintf(buf, sizeof buf, "eta(1.05pi)=%.6f eta(2pi)=%.12f", e1, e2);
  report(2, std::abs(e1 - 0.909) <= 5e-3 && std::abs(e2 - 0.5) <= 1e-9, buf);
}

// ---- criteria 3-5: graded-mesh convergence studies --------------------

RateTable study(const std::string& domain, const std::string& kappa,
                int levels) {
  ExperimentConfig cfg;
  cfg.domain = domain;
  cfg.k = 1;
  cfg.kappa = kappa;
  cfg.levels = levels;
  cfg.data = "paper";
  return run_experiment(cfg).table;
}

void criterion_3() {
  const RateTable t = study("omega1", "0.2", 7);
  const auto& a = t.rows[t.rows.size() - 2];
  const auto& b = t.rows.back();
  const bool pass = a.rate_u >= 1.85 && a.rate_u <= 2.15 && a.rate_p >= 1.85 &&
                    a.rate_p <= 2.15 && b.rate_u >= 1.85 && b.rate_u <= 2.15 &&
                    b.rate_p >= 1.85 && b.rate_p <= 2.15;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "rates u=(%.3f, %.3f) p=(%.3f, %.3f), target [1.85, 2.15]",
                a.rate_u, b.rate_u, a.rate_p, b.rate_p);
  report(3, pass, buf);
}

void criterion_4() {
  const RateTable t = study("omega1", "0.5", 7);
  const double r = t.rows.back().rate_u;
  char buf[96];
  std::snprintf(buf, sizeof buf, "last rate_u %.3f, target <= 1.3", r);
  report(4, r <= 1.3, buf);
}

void criterion_5() {
  const RateTable g = study("omega2", "0.3", 7);
  const auto& a = g.rows[g.rows.size() - 2];
  const auto& b = g.rows.back();
  const bool graded_ok = a.rate_u >= 1.80 && a.rate_u <= 2.10 &&
                         b.rate_u >= 1.80 && b.rate_u <= 2.10 &&
                         a.rate_p >= 1.80 && a.rate_p <= 2.10 &&
                         b.rate_p >= 1.80 && b.rate_p <= 2.10;
  const RateTable q = study("omega2", "0.5", 7);
  const double last = q.rows.back().rate_u;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "kappa=0.3 rates u=(%.3f, %.3f) p=(%.3f, %.3f); "
                "kappa=0.5 last rate_u %.3f <= 1.5",
                a.rate_u, b.rate_u, a.rate_p, b.rate_p, last);
  report(5, graded_ok && last <= 1.5, buf);
}

// ---- criterion 6: dilation scaling ------------------------------------

void criterion_6() {
  std::vector<Eigen::Matrix<double, 3, 2>> region;
  Eigen::Matrix<double, 3, 2> t1, t2;
  t1 << 0.01, -0.02, 0.05, 0.0, 0.02, 0.03;
  t2 << 0.05, 0.0, 0.055, 0.04, 0.02, 0.03;
  region = {t1, t2};

  struct Sample {
    std::function<double(double, double)> v;
    std::function<Eigen::Vector2d(double, double)> dv;
  };
  const std::vector<Sample> samples = {
      {[](double r, double) { return r; },
       [](double, double) { return Eigen::Vector2d(1, 0).eval(); }},
      {[](double r, double z) { return r * z; },
       [](double r, double z) { return Eigen::Vector2d(z, r).eval(); }},
      {[](double r, double) { return r * r; },
       [](double r, double) { return Eigen::Vector2d(2 * r, 0).eval(); }},
      {[](double r, double z) { return r * (1 + z); },
       [](double r, double z) { return Eigen::Vector2d(1 + z, r).eval(); }},
      {[](double r, double z) { return r * r * z + r; },
       [](double r, double z) {
         return Eigen::Vector2d(2 * r * z + 1, r * r).eval();
       }}};

  double worst = 0;
  for (const auto& s : samples)
    for (double lambda : {0.25, 0.5})
      for (double a : {0.7, 1.2}) {
        const DilationNorms d =
            dilation_scaling_check(s.v, s.dv, region, 0.5, lambda, 1, a);
        worst = std::max(worst, std::abs(d.kmu_scaled / d.kmu -
                                         std::pow(lambda, a - 1.5)));
        worst = std::max(worst, std::abs(d.rinv_scaled / d.rinv -
                                         std::pow(lambda, -0.5)));
      }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst ratio deviation %.3e", worst);
  report(6, worst <= 1e-8, buf);
}

// ---- criterion 7: interpolation oracle suite --------------------------

double fe_l2_error(const ScalarSpace& sp, const Eigen::VectorXd& coef,
                   const std::function<double(double, double)>& v,
                   const std::function<Eigen::Vector2d(double, double)>& dv,
                   double& h1) {
  const auto& el = sp.element();
  const QuadratureRule rule = quadrature_rule(2 * sp.degree + 6);
  const Eigen::MatrixXd vals = el.eval(rule.points);
  Eigen::MatrixXd dx, dy;
  el.eval_grad(rule.points, dx, dy);
  double l2 = 0;
  h1 = 0;
  const TriMesh& mesh = *sp.mesh;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::Vector2d a = mesh.node(mesh.triangles(t, 0));
    const Eigen::Vector2d b = mesh.node(mesh.triangles(t, 1));
    const Eigen::Vector2d c = mesh.node(mesh.triangles(t, 2));
    Eigen::Matrix2d J;
    J.col(0) = b - a;
    J.col(1) = c - a;
    const double detJ = J.determinant();
    const Eigen::Matrix2d Jit = J.inverse().transpose();
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d x =
          a + rule.points(q, 0) * (b - a) + rule.points(q, 1) * (c - a);
      double fe = 0;
      Eigen::Vector2d g = Eigen::Vector2d::Zero();
      for (int l = 0; l < el.num_nodes(); ++l) {
        const double cl = coef(sp.cell_dofs(t, l));
        fe += cl * vals(q, l);
        g += cl * (Jit * Eigen::Vector2d(dx(q, l), dy(q, l)));
      }
      const double w = rule.weights(q) * detJ * x(0);
      l2 += w * (fe - v(x(0), x(1))) * (fe - v(x(0), x(1)));
      h1 += w * (g - dv(x(0), x(1))).squaredNorm();
    }
  }
  h1 = std::sqrt(h1);
  return std::sqrt(l2);
}

void criterion_7() {
  GradingPlan plan;
  plan.degree_k = 1;
  const MeshHierarchy h =
      build_hierarchy(builtin_domain("unit_square"), plan, 3, 0.5);

  bool invariant = true;
  for (int d : {1, 2}) {
    const ScalarSpace sp = build_scalar_space(h.levels[1], d);
    const Scalar2D poly = [d](double r, double z) {
      return std::pow(0.7 * r + 0.3 * z, d) + r;
    };
    const Eigen::VectorXd nodal = interpolate_nodal(sp, poly);
    for (const Eigen::VectorXd& c :
         {interpolate_plus(poly, sp), interpolate_minus(poly, sp),
          project_nodewise(poly, sp)})
      invariant = invariant && (c - nodal).cwiseAbs().maxCoeff() <= 1e-12;
  }

  const Scalar2D v = [](double r, double z) {
    return std::sin(1.5 * r + 0.5) * std::cos(z);
  };
  const auto dv = [](double r, double z) {
    return Eigen::Vector2d(1.5 * std::cos(1.5 * r + 0.5) * std::cos(z),
                           -std::sin(1.5 * r + 0.5) * std::sin(z))
        .eval();
  };
  bool orders = true;
  double worst_l2 = 0, worst_h1 = 0;
  for (int k : {1, 2}) {
    std::vector<double> l2s, h1s;
    for (int lev = 1; lev <= 3; ++lev) {
      const ScalarSpace sp = build_scalar_space(h.levels[lev], k);
      double h1;
      l2s.push_back(fe_l2_error(sp, interpolate_plus(v, sp), v, dv, h1));
      h1s.push_back(h1);
    }
    const double rl = std::log2(l2s[1] / l2s[2]);
    const double rh = std::log2(h1s[1] / h1s[2]);
    worst_l2 = std::max(worst_l2, std::abs(rl - (k + 1)));
    worst_h1 = std::max(worst_h1, std::abs(rh - k));
    orders = orders && std::abs(rl - (k + 1)) <= 0.2 && std::abs(rh - k) <= 0.2;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "invariance %s, order deviations L2 %.3f H1 %.3f",
                invariant ? "ok" : "broken", worst_l2, worst_h1);
  report(7, invariant && orders, buf);
}

// ---- criterion 8: mesh invariants -------------------------------------

void criterion_8() {
  const MeridianDomain dom = builtin_domain("omega1");
  GradingPlan plan;
  plan.degree_k = 1;
  for (int q : dom.corner_set) plan.entries.push_back({q, 0.2});
  const MeshHierarchy h = build_hierarchy(dom, plan, 6, dom.separation_L / 2);

  bool pass = true;
  std::string why = "ok";
  const int T0 = h.levels[0].num_triangles();
  long double domain_area = 0;
  for (int t = 0; t < T0; ++t) domain_area += h.levels[0].triangle_area(t);

  const double angle0 = h.levels[1].min_angle();
  for (int lev = 0; lev <= 6 && pass; ++lev) {
    const TriMesh& mesh = h.levels[lev];
    if (mesh.num_triangles() != T0 * (1 << (2 * lev))) {
      pass = false;
      why = "triangle count is not 4^n scaled";
      break;
    }
    long double area = 0;
    for (int t = 0; t < mesh.num_triangles(); ++t)
      area += mesh.triangle_area(t);
    if (std::abs(static_cast<double>(area - domain_area)) >
        1e-12 * static_cast<double>(domain_area)) {
      pass = false;
      why = "refined area drifts";
      break;
    }
    // children tile their parent
    if (lev > 0) {
      std::vector<double> parent_area(h.levels[lev - 1].num_triangles(), 0.0);
      for (int t = 0; t < mesh.num_triangles(); ++t)
        parent_area[mesh.parent_map[t]] += mesh.triangle_area(t);
      for (int t = 0; t < h.levels[lev - 1].num_triangles(); ++t)
        if (std::abs(parent_area[t] - h.levels[lev - 1].triangle_area(t)) >
            1e-12) {
          pass = false;
          why = "children do not tile their parent";
        }
    }
    if (lev >= 1 && mesh.min_angle() < angle0 - 1e-12) {
      pass = false;
      why = "minimum angle decays with level";
    }
    // marked-vertex edge ratio: shortest edge at the vertex halves by kappa
    if (lev >= 2) {
      const GradingReport rep = grading_diagnostics(h);
      for (size_t e = 0; e < plan.entries.size(); ++e) {
        const double ratio = rep.levels[lev].marked_edge_length[e] /
                             rep.levels[lev - 1].marked_edge_length[e];
        if (std::abs(ratio - plan.entries[e].kappa) > 1e-12) {
          pass = false;
          why = "marked edge ratio is not kappa";
        }
      }
    }
  }
  report(8, pass, why);
}

}  // namespace

int main(int argc, char** argv) {
  bool fast = false, rates = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--fast")) fast = true;
    if (!std::strcmp(argv[i], "--rates")) rates = true;
  }
  const bool all = !fast && !rates;

  if (fast || all) {
    guard(1, criterion_1);
    guard(2, criterion_2);
    guard(6, criterion_6);
    guard(7, criterion_7);
    guard(8, criterion_8);
  }
  if (rates || all) {
    guard(3, criterion_3);
    guard(4, criterion_4);
    guard(5, criterion_5);
  }
  return g_failures == 0 ? 0 : 1;
}
