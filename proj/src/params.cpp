#include "kinkfield/params.hpp"

#include <cmath>
#include <string>

#include "kinkfield/errors.hpp"

namespace kinkfield {

ModelParams derive_params(double kappa, double lambda, double C, double x1) {
  if (!std::isfinite(kappa) || !std::isfinite(lambda) || !std::isfinite(C) ||
      !std::isfinite(x1)) {
    throw DomainError("model parameters must be finite");
  }
  if (kappa < 0.0) {
    throw DomainError("kappa must be >= 0 (got " + std::to_string(kappa) + ")");
  }
  if (lambda <= 0.0) {
    throw DomainError("lambda must be > 0 (got " + std::to_string(lambda) + ")");
  }
  if (C == 0.0) {
    throw DomainError("C must be nonzero: C = 0 is a constant scalar field");
  }
  const double gap = lambda - 0.5 * kappa;
  if (!(gap > 0.0)) {
    throw DomainError("regular kink requires lambda > kappa/2 (lambda = " +
                      std::to_string(lambda) + ", kappa/2 = " +
                      std::to_string(0.5 * kappa) + ")");
  }

  ModelParams p;
  p.kappa_ = kappa;
  p.lambda_ = lambda;
  p.C_ = C;
  p.x1_ = x1;
  p.H_ = gap / lambda;
  p.b_ = std::sqrt(C * C * gap);
  p.sigma2_ = kappa / (2.0 * lambda);
  return p;
}

}  // namespace kinkfield
