#pragma once

#include <optional>
#include <vector>

namespace axistokes {

enum class ExponentSource { Computed2D, UserSupplied, Default };

/// Corner singularity data for one vertex of the corner set Q.
struct VertexExponent {
  int vertex_index = -1;
  double omega = 0.0;  // least positive real part of the pencil eigenvalue
  double eta = 0.0;    // grading index: omega off-axis, omega + 1/2 on-axis
  ExponentSource source = ExponentSource::Computed2D;
};

/// Smallest positive root of g(l) = sin^2(l*w) - l^2 sin^2(w) for the 2D
/// Dirichlet Stokes corner of opening angle w. Searches (0.05, 1) first
/// (reentrant branch); falls back to the smallest root in [1, 3].
double corner_exponent_2d(double angle);

/// All roots of g on (lo, hi), by sign-scan (step 1e-3) plus bisection.
std::vector<double> corner_exponent_roots(double angle, double lo, double hi);

enum class AxisKind { OnAxis, OffAxis };

/// Grading index for one vertex. OffAxis: omega from corner_exponent_2d and
/// eta = omega. OnAxis: omega from the override or the default table
/// {0.75*pi: 0.711}, and eta = omega + 1/2.
VertexExponent eta_for_vertex(AxisKind kind, double angle,
                              std::optional<double> override_omega = {},
                              int vertex_index = -1);

/// kappa = min(1/2, 2^{-(k+1)/a}).
double kappa_from_eta(double a, int k);

}  // namespace axistokes
