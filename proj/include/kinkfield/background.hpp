#pragma once

#include <concepts>
#include <iosfwd>
#include <vector>

#include "kinkfield/params.hpp"

namespace kinkfield {

/// Beyond |b (x - x1)| = 350 the hyperbolic functions are replaced by their
/// limits (tanh -> +-1, sech^2 -> 0); cosh^2 would overflow soon after.
inline constexpr double kAsymptoticThreshold = 350.0;

/// Model constants re-derived in the working precision from the primary
/// (exactly representable) inputs of a ModelParams.
template <std::floating_point Real>
struct KinkConstants {
  Real kappa;
  Real lambda;
  Real C;
  Real x1;
  Real H;
  Real b;
  Real sigma2;
  Real amplitude;         // sqrt(H / (lambda - kappa/2))
  Real metric_prefactor;  // H lambda / (lambda - kappa/2)

  static KinkConstants from(const ModelParams& params);
};

/// tanh and sech^2 of u = b (x - x1), with the asymptotic switch applied.
template <std::floating_point Real>
struct KinkShape {
  Real u;
  Real tanh;
  Real sech2;
};

template <std::floating_point Real>
KinkShape<Real> kink_shape(const KinkConstants<Real>& k, Real x);

/// All background fields at one coordinate, from closed forms with analytic
/// derivatives.
template <std::floating_point Real>
struct BasicBackgroundPoint {
  Real x{};
  Real A{};            // electromagnetic potential A_0
  Real A_prime{};
  Real gamma{};        // e^{2 gamma} = g_00
  Real gamma_prime{};
  Real beta{};         // = -gamma
  Real alpha{};        // = 2 beta + gamma (harmonic gauge)
  Real I{};            // A_a A^a = e^{-2 gamma} A^2
  Real P{};            // (1 - lambda I)^2
  Real P_I{};          // dP/dI
  Real phi_prime{};    // C P
  // Complements that decay like sech^2 in the tails, kept so that callers
  // never form them by cancellation.
  Real one_minus_lambda_I{};
  Real one_minus_lambda_A_sq{};
};

using BackgroundPoint = BasicBackgroundPoint<double>;

template <std::floating_point Real>
BasicBackgroundPoint<Real> background_point(const ModelParams& params, Real x);

/// A(x) = sqrt(H / (lambda - kappa/2)) tanh(b (x - x1)).
double potential(const ModelParams& params, double x);

/// e^{2 gamma(x)} = (H lambda / (lambda - kappa/2)) (1 - sigma^2 / cosh^2(b (x - x1))).
double metric_gamma_sq(const ModelParams& params, double x);

/// I evaluated literally as e^{-2 gamma} A^2. background_point uses the
/// equivalent tanh^2 / (lambda (1 - sigma^2 sech^2)) form.
double invariant_direct(const ModelParams& params, double x);

struct Profile {
  ModelParams params;
  std::vector<BackgroundPoint> points;

  double spacing() const;
};

/// Uniform grid of n points on [x_min, x_max]. The grid is built about the
/// interval midpoint so that a symmetric interval gives an exactly
/// antisymmetric grid.
std::vector<double> uniform_grid(double x_min, double x_max, int n);

Profile sample_profile(const ModelParams& params, double x_min, double x_max, int n);

/// Default sampling window [x1 - 10/b, x1 + 10/b].
Profile sample_profile(const ModelParams& params, int n = 4001);

/// Left side of the implicit quadrature solution, integrated from A = 0 to
/// A(x), minus |C| (x - x1) / sqrt(H). Throws QuadratureError if tol is not
/// reached.
double implicit_solution_residual(const ModelParams& params, double x, double tol = 1e-12);

/// CSV with header x,A,A_prime,gamma,beta,alpha,I,P,phi_prime.
void write_profile_csv(std::ostream& out, const Profile& profile);

}  // namespace kinkfield
