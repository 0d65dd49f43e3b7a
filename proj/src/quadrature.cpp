#include "axistokes/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>

#include "axistokes/errors.hpp"

namespace axistokes {

namespace {
constexpr int kMaxDegree = 50;

// Golub-Welsch on the symmetric tridiagonal Jacobi matrix.
void gauss_from_recurrence(const Eigen::VectorXd& diag,
                           const Eigen::VectorXd& offdiag, double mu0,
                           Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = diag(i);
    if (i + 1 < n) {
      J(i, i + 1) = offdiag(i);
      J(i + 1, i) = offdiag(i);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes = es.eigenvalues();
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    weights(i) = mu0 * v0 * v0;
  }
}
}  // namespace

void gauss_jacobi(int n, double alpha, double beta, Eigen::VectorXd& nodes,
                  Eigen::VectorXd& weights) {
  Eigen::VectorXd diag(n), offdiag(n - 1 > 0 ? n - 1 : 0);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    const double den = (2 * k + ab) * (2 * k + ab + 2);
    diag(k) = (den == 0.0) ? (beta - alpha) / (ab + 2)
                           : (beta * beta - alpha * alpha) / den;
  }
  for (int k = 1; k < n; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) * (2 + ab) * (3 + ab));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           ((2 * k + ab) * (2 * k + ab) * (2 * k + ab + 1) * (2 * k + ab - 1));
    }
    offdiag(k - 1) = std::sqrt(b2);
  }
  // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
  const double mu0 = std::pow(2.0, ab + 1.0) *
                     std::exp(std::lgamma(alpha + 1) + std::lgamma(beta + 1) -
                              std::lgamma(ab + 2));
  gauss_from_recurrence(diag, offdiag, mu0, nodes, weights);
}

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  gauss_jacobi(n, 0.0, 0.0, nodes, weights);
}

const QuadratureRule& quadrature_rule(int exactness_degree) {
  if (exactness_degree < 0 || exactness_degree > kMaxDegree)
    throw UnsupportedDegree("quadrature_rule: degree " +
                            std::to_string(exactness_degree) +
                            " outside [0, " + std::to_string(kMaxDegree) + "]");

  static std::map<int, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(exactness_degree);
  if (it != cache.end()) return it->second;

  // n points per direction integrate total degree 2n-1 through the Duffy map.
  const int n = exactness_degree / 2 + 1;
  Eigen::VectorXd xj, wj, xl, wl;
  gauss_jacobi(n, 1.0, 0.0, xj, wj);  // weight (1-t) for the collapsed axis
  gauss_legendre(n, xl, wl);

  QuadratureRule rule;
  rule.degree = exactness_degree;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  int q = 0;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (xj(i) + 1.0);
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (xl(j) + 1.0);
      rule.points(q, 0) = u;
      rule.points(q, 1) = (1.0 - u) * v;
      rule.weights(q) = wj(i) * wl(j) / 8.0;
      ++q;
    }
  }
  return cache.emplace(exactness_degree, std::move(rule)).first->second;
}

}  // namespace axistokes
