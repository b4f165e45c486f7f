#pragma once

#include <functional>

namespace kinkfield {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 4000;
};

/// Globally adaptive 7-point Gauss / 15-point Kronrod quadrature on [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|). Interval results are
/// summed in order of their left endpoint, so the result does not depend on
/// the refinement history beyond the final partition.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

/// Same as integrate() but throws QuadratureError when not converged.
QuadratureResult integrate_checked(const std::function<double(double)>& f, double a,
                                   double b, const QuadratureOptions& options = {});

}  // namespace kinkfield
