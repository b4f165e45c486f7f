#pragma once

#include <concepts>
#include <iosfwd>
#include <string>
#include <vector>

#include "kinkfield/background.hpp"
#include "kinkfield/params.hpp"

namespace kinkfield {

// Equation identifiers used in reports.
namespace equation {
inline constexpr const char* kG00 = "G00";                        // Einstein 0-0
inline constexpr const char* kG11 = "G11";                        // Einstein 1-1
inline constexpr const char* kG22 = "G22";                        // Einstein 2-2
inline constexpr const char* kScalar = "scalar";                  // (phi' Psi)' = 0
inline constexpr const char* kMaxwell = "maxwell";                // (e^{-2g} A')' - C^2 P_I e^{-2g} A
inline constexpr const char* kMaxwellExpanded = "maxwell_expanded";  // same with P_I expanded
inline constexpr const char* kBetaGammaSum = "beta_gamma_sum";    // beta'' + gamma'' = 0
inline constexpr const char* kGammaFirstIntegral = "gamma_first_integral";
inline constexpr const char* kMetricIntegral = "metric_integral";
inline constexpr const char* kMaxwellFirstIntegral = "maxwell_first_integral";
// -gamma'^2 + E^2 + kappa/2 (e^{-2g} A'^2 - C^2 P), with E the beta slope
inline constexpr const char* kGammaConstraint = "gamma_constraint";
}  // namespace equation

/// Per-point residual of one equation on the interior grid, with the largest
/// magnitude among the equation's additive terms at each point.
template <std::floating_point Real>
struct EquationResidual {
  std::string id;
  bool uses_finite_differences = false;
  std::vector<Real> value;
  std::vector<Real> scale;
};

/// Sampled background fields on a uniform grid, in working precision Real.
/// A_prime and gamma_prime are the analytic derivatives; the finite-difference
/// residuals never read them.
template <std::floating_point Real>
struct FieldSamples {
  ModelParams params;
  Real spacing{};
  std::vector<BasicBackgroundPoint<Real>> points;

  static FieldSamples from_profile(const Profile& profile);
};

/// n points spaced exactly h apart, centered on x1.
template <std::floating_point Real>
FieldSamples<Real> sample_fields(const ModelParams& params, Real h, int n);

template <std::floating_point Real>
std::vector<EquationResidual<Real>> einstein_residuals(const FieldSamples<Real>& fields,
                                                       int accuracy_order);

/// Scalar equation, Maxwell equation and its P_I-expanded form.
template <std::floating_point Real>
std::vector<EquationResidual<Real>> matter_residuals(const FieldSamples<Real>& fields,
                                                     int accuracy_order);

/// beta'' + gamma'' (finite differences) and the derivative-free first
/// integrals. beta_slope is the constant E of the beta'' + gamma'' = 0
/// integral; the analyzed branch has E = 0.
template <std::floating_point Real>
std::vector<EquationResidual<Real>> first_integral_residuals(
    const FieldSamples<Real>& fields, int accuracy_order, double beta_slope = kBetaSlope);

struct EquationNorms {
  std::string id;
  double max_abs = 0.0;
  double l2 = 0.0;              // sqrt(h * sum r^2)
  double normalized_max = 0.0;  // max|r| / max over grid of the term scale
  double max_pointwise_normalized = 0.0;  // max of |r_i| / scale_i (diagnostic)
  bool pass = false;
};

template <std::floating_point Real>
EquationNorms norms_of(const EquationResidual<Real>& residual, double spacing);

struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  int n = 0;
};

struct ResidualReport {
  ModelParams params;
  GridSpec grid;
  int fd_order = 8;
  double tolerance = 1e-7;
  std::vector<double> interior_x;
  std::vector<EquationResidual<double>> per_point;
  std::vector<EquationNorms> equations;
  bool pass = false;

  const EquationNorms& norms(const std::string& id) const;
  const EquationResidual<double>& residual(const std::string& id) const;
};

/// Every residual on the profile; an equation passes when its normalized_max
/// is at most tolerance.
ResidualReport verify(const Profile& profile, int accuracy_order, double tolerance);

ResidualReport verify(const ModelParams& params, double x_min, double x_max, int n,
                      int accuracy_order = 8, double tolerance = 1e-7);

/// Returns a copy of the profile whose potential is scaled by factor, with I,
/// P, P_I and phi' recomputed from the scaled potential and the unchanged
/// metric. The result is a consistent but wrong candidate solution.
Profile corrupt_potential(const Profile& profile, double factor);

struct ConvergenceStudy {
  std::vector<double> spacings;
  std::vector<double> max_abs;
  double fitted_order = 0.0;
};

/// Max-abs Maxwell residual on [x1 - 10/b, x1 + 10/b] for each spacing,
/// evaluated in long double so that round-off stays below the truncation
/// error, and the least-squares slope of log(max_abs) against log(h).
ConvergenceStudy maxwell_convergence(const ModelParams& params,
                                     const std::vector<double>& spacings,
                                     int accuracy_order = 8);

/// CSV detail: x,<equation id>... per interior point (raw residuals).
void write_residual_csv(std::ostream& out, const ResidualReport& report);

}  // namespace kinkfield
