#pragma once

#include <concepts>
#include <iosfwd>

#include "kinkfield/background.hpp"
#include "kinkfield/params.hpp"
#include "kinkfield/quadrature.hpp"

namespace kinkfield {

/// Mixed components T^mu_mu of the stress-energy tensor of the scalar and
/// electric fields.
template <std::floating_point Real>
struct StressEnergy {
  Real T00;
  Real T11;
  Real T22;
  Real T33;
};

/// T^0_0 = 1/2 e^{-2 alpha} [C^2 P + e^{-2 gamma} A'^2 + 2 C^2 P_I e^{-2 gamma} A^2],
/// T^1_1 = -T^2_2 = -T^3_3 = 1/2 e^{-2 alpha} [-C^2 P + e^{-2 gamma} A'^2].
///
/// The spatial components follow from the general tensor with the scalar
/// gradient phi' = C P; the transverse pair is equal by construction.
template <std::floating_point Real>
StressEnergy<Real> stress_energy(const BasicBackgroundPoint<Real>& point,
                                 const ModelParams& params);

/// Two readings of the reference energy-density closed form: with sigma^2 in
/// every denominator, or with a bare sigma in the first prefactor
/// (cosh^2 - sigma). Only the sigma^2 reading matches the direct evaluation.
enum class EnergyClosedForm { SigmaSquared, LiteralSigma };

struct DensityPair {
  double value;        // from the field values at the point
  double closed_form;  // from the cosh/sinh closed form
};

/// Invariant energy density T^0_0 sqrt(-3g).
DensityPair energy_density(const BackgroundPoint& point, const ModelParams& params,
                           EnergyClosedForm form = EnergyClosedForm::SigmaSquared);

/// Chronometrically invariant charge density rho_e = j^0 / sqrt(g^00).
DensityPair charge_density(const BackgroundPoint& point, const ModelParams& params);

/// j^0 = -C^2 e^{-2(alpha + gamma)} P_I A.
double current_density(const BackgroundPoint& point, const ModelParams& params);

/// sqrt(g^00) = e^{-gamma}; rho_e * sqrt(g^00) == j^0.
double sqrt_g00_upper(const BackgroundPoint& point);

/// sqrt(-3g) = e^{alpha + 2 beta}, the spatial volume factor.
double spatial_volume_factor(const BackgroundPoint& point);

/// Half-width of the truncated x domain in units of 1/b.
inline constexpr double kTruncationWidth = 40.0;

struct EnergyReport {
  QuadratureResult quadrature_x;  // density integrated over x
  QuadratureResult quadrature_I;  // integrated over sqrt(I)
  double closed_form = 0.0;       // reference closed form (reported, never a pass/fail oracle)
  double discrepancy_x_vs_I = 0.0;
  double discrepancy_vs_closed_form = 0.0;
};

/// |a - b| / max(1, |a|, |b|).
double discrepancy(double a, double b);

/// Reference closed form for the total field energy,
/// lambda |C| / (2 (kappa/2)^{3/2}) [sigma / sqrt(1 - sigma^2) - sqrt(1 - sigma^2)/2 ln((1+sigma)/(1-sigma))],
/// continued to its kappa -> 0 limit |C| / (3 sqrt(lambda)).
double energy_closed_form(const ModelParams& params);

/// Throws QuadratureError if either quadrature misses tol.
EnergyReport total_energy(const ModelParams& params, double tol = 1e-10);

enum class HalfLine { Left, Right };

/// Q = integral of rho_e sqrt(-3g) over the symmetric truncated domain.
QuadratureResult total_charge(const ModelParams& params, double tol = 1e-10);

/// Charge on [x1 - 40/b, x1] or [x1, x1 + 40/b].
QuadratureResult half_charge(const ModelParams& params, HalfLine side, double tol = 1e-10);

/// CSV with header x,energy_density,charge_density,T00,T11.
void write_density_csv(std::ostream& out, const Profile& profile);

}  // namespace kinkfield
