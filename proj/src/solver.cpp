#include "axistokes/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cmath>
#include <iostream>

#include "axistokes/errors.hpp"

namespace axistokes {

namespace {

// Block-diagonal SPD preconditioner: exact Cholesky of the velocity block
// (SPD after symmetric elimination; its factor keeps the iteration count
// level-independent), the r-weighted pressure mass diagonal on the pressure
// block, and identity on the multiplier/constrained slots.
class BlockPreconditioner {
 public:
  BlockPreconditioner(const SaddleSystem& sys) {
    const auto& space = *sys.space;
    nvel_ = 2 * space.velocity.num_dofs;
    n_ = static_cast<int>(sys.K.rows());

    {
      Eigen::SparseMatrix<double> A(nvel_, nvel_);
      {
        std::vector<Eigen::Triplet<double>> trips;
        for (int c = 0; c < nvel_; ++c)
          for (Eigen::SparseMatrix<double>::InnerIterator it(sys.K, c); it;
               ++it) {
            if (it.row() < nvel_) trips.emplace_back(it.row(), c, it.value());
            else break;  // rows sorted; pressure rows follow
          }
        A.setFromTriplets(trips.begin(), trips.end());
      }
      ldlt_.compute(A);
      use_ldlt_ = ldlt_.info() == Eigen::Success;
      if (!use_ldlt_) {
        vel_diag_inv_ = A.diagonal().cwiseInverse();
        if (!vel_diag_inv_.allFinite())
          throw SingularSystem("preconditioner: zero velocity diagonal");
      }
    }

    tail_inv_ = Eigen::VectorXd::Ones(n_ - nvel_);
    for (int m = 0; m < space.n_p(); ++m) {
      const double d = sys.p_mass_diag(m);
      if (d > 0) tail_inv_(m) = 1.0 / d;
    }
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& r) const {
    Eigen::VectorXd y(n_);
    if (use_ldlt_)
      y.head(nvel_) = ldlt_.solve(r.head(nvel_));
    else
      y.head(nvel_) = vel_diag_inv_.cwiseProduct(r.head(nvel_));
    y.tail(n_ - nvel_) = tail_inv_.cwiseProduct(r.tail(n_ - nvel_));
    return y;
  }

 private:
  int n_ = 0, nvel_ = 0;
  bool use_ldlt_ = false;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  Eigen::VectorXd vel_diag_inv_;
  Eigen::VectorXd tail_inv_;
};

// Preconditioned MINRES (Paige & Saunders) for symmetric indefinite K.
int minres(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& b,
           const BlockPreconditioner& M, double rel_tol, int max_iter,
           Eigen::VectorXd& x) {
  const double bnorm = b.norm();
  if (bnorm == 0) {
    x.setZero();
    return 0;
  }
  Eigen::VectorXd r1 = b - K * x;
  if (r1.norm() <= rel_tol * bnorm) return 0;  // warm start already good
  Eigen::VectorXd y = M.apply(r1);
  double beta1 = r1.dot(y);
  if (beta1 < 0) throw SingularSystem("minres: preconditioner not SPD");
  beta1 = std::sqrt(beta1);
  if (beta1 == 0) return 0;

  double oldb = 0, beta = beta1, dbar = 0, epsln = 0, phibar = beta1;
  double cs = -1, sn = 0;
  Eigen::VectorXd r2 = r1;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd w2 = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd v(x.size());

  for (int it = 1; it <= max_iter; ++it) {
    v = y / beta;
    y = K * v;
    if (it >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1 = r2;
    r2 = y;
    y = M.apply(r2);
    oldb = beta;
    const double beta2 = r2.dot(y);
    if (beta2 < 0) throw SingularSystem("minres: preconditioner not SPD");
    beta = std::sqrt(beta2);

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    double gamma = std::sqrt(gbar * gbar + beta * beta);
    gamma = std::max(gamma, 1e-300);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    const Eigen::VectorXd w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    x += phi * w;

    // phibar tracks the preconditioned residual; confirm against the true
    // one before declaring victory (and periodically, so a warm start whose
    // small initial residual skews beta1 still terminates)
    if (phibar <= 0.1 * rel_tol * beta1 || it % 200 == 0) {
      const double res = (b - K * x).norm() / bnorm;
      if (res <= rel_tol) return it;
    }
  }
  const double res = (b - K * x).norm() / bnorm;
  if (res <= 10 * rel_tol) return max_iter;
  throw NoConvergence("minres: relative residual " + std::to_string(res) +
                      " after " + std::to_string(max_iter) + " iterations");
}

}  // namespace

FieldSolution solve_saddle(const SaddleSystem& system,
                           const SolverOptions& opts) {
  const auto& space = *system.space;
  const int N = static_cast<int>(system.K.rows());
  const Eigen::VectorXd& b = system.rhs;
  const double bnorm = b.norm();

  FieldSolution sol;
  sol.space = &space;
  Eigen::VectorXd x;

  const int mult = space.multiplier_index();
  const bool bordered = !system.constrained[mult] && system.c_row.size() > 0 &&
                        system.c_row.cwiseAbs().maxCoeff() > 0;

  if (N <= opts.direct_threshold && bordered) {
    // The mean-zero row is dense and wrecks the fill-reducing ordering, so
    // factor the saddle block S alone. S has the one-dimensional kernel
    // k = (0, 1_p); the multiplier follows from the compatibility
    // k^T (b - c lambda) = 0 and the kernel component from c^T p = 0,
    // with one pressure dof pinned to pick a particular solution.
    const double csum = system.c_row.sum();
    int pin = 0;
    system.c_row.cwiseAbs().maxCoeff(&pin);
    const int J = space.p_index(pin);

    double psum = 0;
    for (int m = 0; m < space.n_p(); ++m) psum += b(space.p_index(m));
    const double lambda = psum / csum;

    Eigen::VectorXd r = b.head(mult);
    for (int m = 0; m < space.n_p(); ++m)
      r(space.p_index(m)) -= lambda * system.c_row(m);
    r(J) = 0;

    Eigen::SparseMatrix<double> S(mult, mult);
    {
      std::vector<Eigen::Triplet<double>> trips;
      trips.reserve(system.K.nonZeros());
      for (int c = 0; c < mult; ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(system.K, c); it;
             ++it) {
          if (it.row() >= mult) break;
          if (it.row() == J || c == J) continue;
          trips.emplace_back(it.row(), c, it.value());
        }
      trips.emplace_back(J, J, 1.0);
      S.setFromTriplets(trips.begin(), trips.end());
    }
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(S);
    if (lu.info() != Eigen::Success)
      throw SingularSystem("solve_saddle: factorization failed (" +
                           lu.lastErrorMessage() + ")");
    Eigen::VectorXd y = lu.solve(r);
    y += lu.solve(r - S * y);  // one step of iterative refinement

    double cp = 0;
    for (int m = 0; m < space.n_p(); ++m)
      cp += system.c_row(m) * y(space.p_index(m));
    const double alpha = -cp / csum;

    x.resize(N);
    x.head(mult) = y;
    for (int m = 0; m < space.n_p(); ++m) x(space.p_index(m)) += alpha;
    x(mult) = lambda;
    sol.method = "sparselu";
  } else if (N <= opts.direct_threshold) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(system.K);
    if (lu.info() != Eigen::Success)
      throw SingularSystem("solve_saddle: factorization failed (" +
                           lu.lastErrorMessage() + ")");
    x = lu.solve(b);
    // one step of iterative refinement
    x += lu.solve(b - system.K * x);
    sol.method = "sparselu";
  } else {
    x = opts.warm_start && opts.warm_start->size() == N
            ? *opts.warm_start
            : Eigen::VectorXd::Zero(N);
    const BlockPreconditioner M(system);
    sol.iterations =
        minres(system.K, b, M, opts.rel_tol, opts.max_iterations, x);
    sol.method = "minres";
  }

  sol.residual = bnorm == 0 ? (system.K * x).norm()
                            : (b - system.K * x).norm() / bnorm;
  if (!(sol.residual <= 10 * opts.rel_tol))
    throw SingularSystem("solve_saddle: residual check failed: " +
                         std::to_string(sol.residual));

  sol.raw = x;
  sol.ur = x.segment(0, space.n_ur());
  sol.uz = x.segment(space.n_ur(), space.n_uz());
  sol.p = x.segment(2 * space.n_ur(), space.n_p());
  return sol;
}

}  // namespace axistokes
