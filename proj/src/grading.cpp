#include "axistokes/grading.hpp"

#include <cmath>

#include "axistokes/errors.hpp"

namespace axistokes {

namespace {

double g(double lambda, double omega) {
  const double s = std::sin(lambda * omega);
  const double sw = std::sin(omega);
  return s * s - lambda * lambda * sw * sw;
}

double bisect(double lo, double hi, double omega) {
  double flo = g(lo, omega);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = g(mid, omega);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> corner_exponent_roots(double angle, double lo, double hi) {
  std::vector<double> roots;
  const double step = 1e-3;
  double x0 = lo;
  double f0 = g(x0, angle);
  for (double x1 = lo + step; x0 < hi; x1 += step) {
    if (x1 > hi) x1 = hi;
    const double f1 = g(x1, angle);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 > 0) != (f1 > 0)) {
      roots.push_back(bisect(x0, x1, angle));
    }
    x0 = x1;
    f0 = f1;
    if (x0 >= hi) break;
  }
  return roots;
}

double corner_exponent_2d(double angle) {
  if (!(angle > 0.0) || angle > 2 * M_PI + 1e-12)
    throw Error("corner_exponent_2d: angle must lie in (0, 2*pi]");
  if (std::abs(std::sin(angle)) < 1e-12) {
    // g reduces to sin^2(l*w) = 0; smallest positive root is pi/w.
    return M_PI / angle;
  }
  auto roots = corner_exponent_roots(angle, 0.05, 1.0 - 1e-9);
  if (!roots.empty()) return roots.front();
  roots = corner_exponent_roots(angle, 1.0, 3.0);
  // Drop the trivial root l = 1 (always present) when a larger one exists.
  for (double r : roots)
    if (r > 1.0 + 1e-9) return r;
  if (!roots.empty()) return roots.front();
  throw NoRootFound("corner_exponent_2d: no root on (0.05, 3] for angle " +
                    std::to_string(angle));
}

VertexExponent eta_for_vertex(AxisKind kind, double angle,
                              std::optional<double> override_omega,
                              int vertex_index) {
  VertexExponent e;
  e.vertex_index = vertex_index;
  if (kind == AxisKind::OffAxis) {
    if (override_omega) {
      e.omega = *override_omega;
      e.source = ExponentSource::UserSupplied;
    } else {
      e.omega = corner_exponent_2d(angle);
      e.source = ExponentSource::Computed2D;
    }
    e.eta = e.omega;
  } else {
    if (override_omega) {
      e.omega = *override_omega;
      e.source = ExponentSource::UserSupplied;
    } else if (std::abs(angle - 0.75 * M_PI) < 1e-9) {
      e.omega = 0.711;
      e.source = ExponentSource::Default;
    } else if (std::abs(angle - 0.5 * M_PI) < 1e-9) {
      // Convex right-angle cone: eta > 2, so this vertex never limits the
      // grading (kappa caps at 1/2 already for omega >= 1.5).
      e.omega = 2.0;
      e.source = ExponentSource::Default;
    } else {
      throw MissingOnAxisOmega(
          "eta_for_vertex: no default on-axis exponent for angle " +
          std::to_string(angle) + "; supply an override");
    }
    e.eta = e.omega + 0.5;
  }
  if (!(e.omega > 0)) throw Error("eta_for_vertex: omega must be positive");
  return e;
}

double kappa_from_eta(double a, int k) {
  if (!(a > 0)) throw NonPositiveA("kappa_from_eta: a must be positive");
  if (k < 1) throw Error("kappa_from_eta: k must be >= 1");
  return std::min(0.5, std::pow(2.0, -(k + 1) / a));
}

}  // namespace axistokes
