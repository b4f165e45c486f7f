#pragma once

namespace kinkfield {

// Integration constants of the solution branch. Only the branch with all
// three equal to zero is analyzed.
inline constexpr double kGammaIntegralConstant = 0.0;    // k
inline constexpr double kMaxwellIntegralConstant = 0.0;  // C1
inline constexpr double kBetaSlope = 0.0;                // E

/// Model constants of the kink solution.
///
/// The primary inputs are the gravitational coupling kappa (0 selects flat
/// space-time), the selfcoupling lambda, the scalar charge C and the kink
/// center x1. The metric constant H, the inverse width b and the ratio
/// sigma2 = kappa / (2 lambda) are derived once at construction. Regular
/// solutions need lambda > kappa / 2, i.e. sigma2 < 1.
class ModelParams {
 public:
  /// Flat-space defaults: kappa = 0, lambda = 1, C = 1, x1 = 0.
  ModelParams() = default;

  double kappa() const noexcept { return kappa_; }
  double lambda() const noexcept { return lambda_; }
  double C() const noexcept { return C_; }
  double x1() const noexcept { return x1_; }
  double H() const noexcept { return H_; }
  double b() const noexcept { return b_; }
  double sigma2() const noexcept { return sigma2_; }

  /// lambda - kappa/2, the positive gap that keeps the solution regular.
  double coupling_gap() const noexcept { return lambda_ - 0.5 * kappa_; }
  bool is_flat() const noexcept { return kappa_ == 0.0; }

  friend ModelParams derive_params(double kappa, double lambda, double C, double x1);
  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double kappa_ = 0.0;
  double lambda_ = 1.0;
  double C_ = 1.0;
  double x1_ = 0.0;
  double H_ = 1.0;
  double b_ = 1.0;
  double sigma2_ = 0.0;
};

/// Validates the inputs and computes H, b and sigma2.
/// Throws DomainError if kappa < 0, lambda <= kappa/2, or C == 0.
ModelParams derive_params(double kappa, double lambda, double C, double x1 = 0.0);

}  // namespace kinkfield
