#include "axistokes/lagrange.hpp"

#include <Eigen/LU>

#include <map>
#include <mutex>

#include "axistokes/errors.hpp"

namespace axistokes {

namespace {

// monomial exponent table x^a y^b, a+b <= d, in a fixed deterministic order
std::vector<std::pair<int, int>> monomials(int d) {
  std::vector<std::pair<int, int>> m;
  for (int total = 0; total <= d; ++total)
    for (int a = total; a >= 0; --a) m.emplace_back(a, total - a);
  return m;
}

Eigen::MatrixXd monomial_values(
    const std::vector<std::pair<int, int>>& mono,
    const Eigen::Matrix<double, Eigen::Dynamic, 2>& pts) {
  Eigen::MatrixXd v(pts.rows(), mono.size());
  for (int p = 0; p < pts.rows(); ++p)
    for (size_t j = 0; j < mono.size(); ++j)
      v(p, j) = std::pow(pts(p, 0), mono[j].first) *
                std::pow(pts(p, 1), mono[j].second);
  return v;
}

LagrangeElement make_element(int d) {
  LagrangeElement el;
  el.degree = d;
  const int nb = (d + 1) * (d + 2) / 2;
  el.nodes.resize(nb, 2);
  el.entity_dim.resize(nb);
  el.entity_index.resize(nb);
  el.entity_order.resize(nb);

  // reference vertices in lattice coordinates (i, j) with i+j <= d
  const int vi[3] = {0, d, 0};
  const int vj[3] = {0, 0, d};
  int n = 0;
  auto add = [&](int i, int j, int dim, int idx, int order) {
    el.nodes(n, 0) = static_cast<double>(i) / d;
    el.nodes(n, 1) = static_cast<double>(j) / d;
    el.entity_dim[n] = dim;
    el.entity_index[n] = idx;
    el.entity_order[n] = order;
    ++n;
  };
  for (int v = 0; v < 3; ++v) add(vi[v], vj[v], 0, v, 0);
  for (int e = 0; e < 3; ++e) {
    const int a = e, b = (e + 1) % 3;
    for (int s = 1; s < d; ++s)
      add(vi[a] + (vi[b] - vi[a]) * s / d, vj[a] + (vj[b] - vj[a]) * s / d, 1,
          e, s - 1);
  }
  int order = 0;
  for (int i = 1; i < d; ++i)
    for (int j = 1; i + j < d; ++j) add(i, j, 2, 0, order++);
  if (n != nb) throw Error("make_element: node count mismatch");

  const auto mono = monomials(d);
  const Eigen::MatrixXd V = monomial_values(mono, el.nodes);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
  if (!lu.isInvertible())
    throw Error("make_element: singular Vandermonde matrix");
  el.coeffs = lu.inverse();  // column j: monomial coefficients of phi_j
  return el;
}

}  // namespace

Eigen::MatrixXd LagrangeElement::eval(
    const Eigen::Matrix<double, Eigen::Dynamic, 2>& pts) const {
  return monomial_values(monomials(degree), pts) * coeffs;
}

void LagrangeElement::eval_grad(
    const Eigen::Matrix<double, Eigen::Dynamic, 2>& pts, Eigen::MatrixXd& dx,
    Eigen::MatrixXd& dy) const {
  const auto mono = monomials(degree);
  Eigen::MatrixXd mx(pts.rows(), mono.size()), my(pts.rows(), mono.size());
  for (int p = 0; p < pts.rows(); ++p)
    for (size_t j = 0; j < mono.size(); ++j) {
      const auto [a, b] = mono[j];
      mx(p, j) = a == 0 ? 0.0
                        : a * std::pow(pts(p, 0), a - 1) *
                              std::pow(pts(p, 1), b);
      my(p, j) = b == 0 ? 0.0
                        : b * std::pow(pts(p, 0), a) *
                              std::pow(pts(p, 1), b - 1);
    }
  dx = mx * coeffs;
  dy = my * coeffs;
}

const LagrangeElement& lagrange_element(int degree) {
  if (degree < 1 || degree > 10)
    throw UnsupportedDegree("lagrange_element: degree must be in [1, 10]");
  static std::mutex mu;
  static std::map<int, LagrangeElement> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_element(degree)).first;
  return it->second;
}

}  // namespace axistokes
