#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "axistokes/errors.hpp"
#include "axistokes/solver.hpp"

using namespace axistokes;

namespace {

TriMesh square_mesh(int refinements = 0) {
  TriMesh m = initial_triangulation(builtin_domain("unit_square"), 0.5);
  const MeridianDomain dom = builtin_domain("unit_square");
  GradingPlan plan;  // no marked vertices: plain midpoint refinement
  for (int i = 0; i < refinements; ++i) m = kappa_refine(m, dom, plan);
  return m;
}

// u = (r, -2z), p = r + z - pbar solves the system with f = (1, 1):
// the momentum residual of u is (0, 0), so f = grad p = (1, 1).
AssemblyOptions manufactured_bc() {
  AssemblyOptions opts;
  opts.dirichlet_ur = [](double r, double) { return r; };
  opts.dirichlet_uz = [](double, double z) { return -2 * z; };
  return opts;
}

const VectorField kOnes = [](double, double) {
  return Eigen::Vector2d(1.0, 1.0).eval();
};

double weighted_mean_offset(const TaylorHoodSpace& th) {
  // pbar with int p r = 0 for p = r + z on the unit square:
  // int (r + z) r = 1/3 + 1/4, int r = 1/2 -> pbar = 7/6
  (void)th;
  return 7.0 / 6.0;
}

}  // namespace

TEST_CASE("manufactured solution is reproduced to solver accuracy") {
  for (int k : {1, 2}) {
    const TriMesh mesh = square_mesh(1);
    const TaylorHoodSpace th = build_space(mesh, k);
    const SaddleSystem sys = assemble_system(th, kOnes, manufactured_bc());
    const FieldSolution sol = solve_saddle(sys);
    CHECK(sol.method == "sparselu");
    CHECK(sol.residual < 1e-10);

    const double pbar = weighted_mean_offset(th);
    for (int i = 0; i < th.n_ur(); ++i) {
      CHECK(sol.ur(i) ==
            doctest::Approx(th.velocity.dof_coords(i, 0)).epsilon(1e-9));
      CHECK(sol.uz(i) ==
            doctest::Approx(-2 * th.velocity.dof_coords(i, 1)).epsilon(1e-9));
    }
    for (int i = 0; i < th.n_p(); ++i) {
      const double exact =
          th.pressure.dof_coords(i, 0) + th.pressure.dof_coords(i, 1) - pbar;
      CHECK(sol.p(i) == doctest::Approx(exact).epsilon(1e-8));
    }
  }
}

TEST_CASE("zero data gives the zero solution") {
  const TriMesh mesh = square_mesh();
  const TaylorHoodSpace th = build_space(mesh, 1);
  const SaddleSystem sys = assemble_system(
      th, [](double, double) { return Eigen::Vector2d::Zero().eval(); });
  const FieldSolution sol = solve_saddle(sys);
  CHECK(sol.raw.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("an unsolvable system is reported, not returned") {
  const TriMesh mesh = square_mesh();
  const TaylorHoodSpace th = build_space(mesh, 1);
  SaddleSystem sys = assemble_system(th, kOnes, manufactured_bc());
  // disconnect one free dof: its equation becomes 0 = b_i with b_i != 0
  int dead = -1;
  for (int i = 0; i < th.total(); ++i)
    if (!sys.constrained[i] && sys.rhs(i) != 0.0) {
      dead = i;
      break;
    }
  REQUIRE(dead >= 0);
  sys.K.prune([dead](const int& r, const int& c, const double&) {
    return r != dead && c != dead;
  });
  CHECK_THROWS_AS(solve_saddle(sys), const Error&);
}

TEST_CASE("solution scales linearly with the data") {
  const TriMesh mesh = square_mesh();
  const TaylorHoodSpace th = build_space(mesh, 1);
  const VectorField f = [](double r, double z) {
    return Eigen::Vector2d(std::sin(3 * r) + 1, r * z).eval();
  };
  const VectorField f3 = [&](double r, double z) {
    return (3.0 * f(r, z)).eval();
  };
  const FieldSolution a = solve_saddle(assemble_system(th, f));
  const FieldSolution b = solve_saddle(assemble_system(th, f3));
  CHECK((b.raw - 3.0 * a.raw).cwiseAbs().maxCoeff() <
        1e-9 * a.raw.cwiseAbs().maxCoeff());
}

TEST_CASE("iterative path matches the direct one") {
  const TriMesh mesh = square_mesh(1);
  const TaylorHoodSpace th = build_space(mesh, 1);
  const SaddleSystem sys = assemble_system(th, kOnes, manufactured_bc());
  const FieldSolution direct = solve_saddle(sys);

  SolverOptions it_opts;
  it_opts.direct_threshold = 0;  // force minres
  it_opts.rel_tol = 1e-11;
  const FieldSolution iter = solve_saddle(sys, it_opts);
  CHECK(iter.method == "minres");
  CHECK(iter.iterations > 0);
  CHECK((iter.raw - direct.raw).cwiseAbs().maxCoeff() < 1e-6);

  // a warm start from the exact solution converges immediately
  SolverOptions warm = it_opts;
  warm.warm_start = direct.raw;
  const FieldSolution rerun = solve_saddle(sys, warm);
  CHECK(rerun.iterations <= 5);
}
