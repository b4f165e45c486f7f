#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "kinkfield/params.hpp"

namespace kinkfield {

/// Perturbations a0 = dA_0, a1 = dA_1, xi = dphi and their time derivatives,
/// sampled on a strictly increasing grid. Time derivatives default to zero.
struct Perturbation {
  std::vector<double> grid;
  std::vector<double> a0;
  std::vector<double> a1;
  std::vector<double> xi;
  std::vector<double> a0_dot;
  std::vector<double> a1_dot;
  std::vector<double> xi_dot;

  /// All fields zero on the given grid.
  static Perturbation zeros(std::vector<double> grid);

  /// Throws DomainError on mismatched lengths, non-finite values or a grid
  /// that is not strictly increasing.
  void validate() const;

  /// Throws DomainError unless every field is below 1e-12 in magnitude at
  /// both grid ends.
  void require_decay() const;

  Perturbation scaled(double s) const;
  /// Mirror image about x1 on a grid that is symmetric about x1.
  Perturbation reflected() const;
};

inline constexpr double kDecayThreshold = 1e-12;

/// Second variation of the field energy about the flat-space kink:
///   integral of 1/2 (a0' - a1_dot)^2 + 1/2 (xi_dot^2 + xi'^2) / (1 - lambda A0^2)^2
///     - a0^2 lambda phi'^2 (1 - 5 lambda A0^2) / (1 - lambda A0^2)^4
///     - lambda phi'^2 a1^2 / (1 - lambda A0^2)^3  dx.
/// Spatial derivatives use central differences of the given accuracy order
/// on a uniform grid; the integral is the trapezoidal rule over the interior
/// points. Throws DomainError unless kappa == 0.
double second_variation(const ModelParams& params, const Perturbation& pert,
                        int accuracy_order = 8);

struct IndefinitenessWitness {
  Perturbation pert_plus;   // xi = sech^3(b (x - x1)), all else zero
  double value_plus = 0.0;
  Perturbation pert_minus;  // a1 = sech(b (x - x1)), all else zero
  double value_minus = 0.0;
};

/// Evaluates the two canonical bumps on [x1 - 40/b, x1 + 40/b] with n points.
/// Throws InternalError if value_plus <= 0 or value_minus >= 0.
IndefinitenessWitness indefiniteness_witness(const ModelParams& params, int n = 4001);

/// V(x) = 2 lambda phi'^2 / (1 - lambda A0^2)^3, the growth coefficient of a1.
double mode_potential(const ModelParams& params, double x);

using SpaceTimeFunction = std::function<double(double x, double t)>;

struct EvolutionOptions {
  double t_span = 20.0;
  double dt = 1e-3;
  int sample_every = 10;  // store every n-th step
  /// d/dt d/dx a0, prescribed. Empty means zero.
  SpaceTimeFunction source;
  /// Metric perturbation delta alpha, prescribed. Empty means zero.
  SpaceTimeFunction gravity_source;
};

inline constexpr double kOverflowGuard = 1e150;

struct A1Evolution {
  std::vector<double> x;
  std::vector<double> t;                   // sample times
  std::vector<std::vector<double>> a1;     // [point][sample]
  std::vector<std::vector<double>> a1_dot; // [point][sample]
  std::vector<bool> overflowed;            // per point; later samples are NaN
};

/// Integrates a1_tt = V(x) a1 + source(x, t) - 4 A0'(x) delta_alpha(x, t)
/// independently at every grid point with classical fixed-step RK4, from the
/// a1 and a1_dot of the initial perturbation. Throws DomainError unless
/// dt > 0 and t_span >= 10 dt.
A1Evolution evolve_a1(const ModelParams& params, const Perturbation& initial,
                      const EvolutionOptions& options = {});

struct GrowthFit {
  double x = 0.0;
  double fitted_rate = 0.0;
  double predicted_rate = 0.0;  // sqrt(V(x))
  double relative_error = 0.0;
  double fit_r2 = 0.0;
  double window_sensitivity = 0.0;  // relative change of the rate on the final 30%
};

/// Least-squares slope of log|a1| over the final 60% of the span. Throws
/// FitError if a1 vanishes or changes sign in the window, if log|a1| does not
/// vary, or if r^2 < 0.99.
GrowthFit growth_rate(const std::vector<double>& t, const std::vector<double>& a1, double x,
                      const ModelParams& params);

/// CSV with header t,a1(x_1),a1(x_2),...
void write_evolution_csv(std::ostream& out, const A1Evolution& evolution);

}  // namespace kinkfield
