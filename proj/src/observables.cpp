#include "kinkfield/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "kinkfield/errors.hpp"

namespace kinkfield {

template <std::floating_point Real>
StressEnergy<Real> stress_energy(const BasicBackgroundPoint<Real>& p,
                                 const ModelParams& params) {
  const Real C2 = static_cast<Real>(params.C()) * static_cast<Real>(params.C());
  const Real half_lapse = std::exp(-2 * p.alpha) / 2;
  const Real e_m2g = std::exp(-2 * p.gamma);
  const Real electric = e_m2g * p.A_prime * p.A_prime;

  StressEnergy<Real> t;
  t.T00 = half_lapse * (C2 * p.P + electric + 2 * C2 * p.P_I * e_m2g * p.A * p.A);
  t.T11 = half_lapse * (-C2 * p.P + electric);
  t.T22 = -t.T11;
  t.T33 = -t.T11;
  return t;
}

template StressEnergy<double> stress_energy(const BasicBackgroundPoint<double>&,
                                            const ModelParams&);
template StressEnergy<long double> stress_energy(const BasicBackgroundPoint<long double>&,
                                                 const ModelParams&);

double sqrt_g00_upper(const BackgroundPoint& p) { return std::exp(-p.gamma); }

double spatial_volume_factor(const BackgroundPoint& p) {
  return std::exp(p.alpha + 2.0 * p.beta);
}

DensityPair energy_density(const BackgroundPoint& p, const ModelParams& params,
                           EnergyClosedForm form) {
  const double C2 = params.C() * params.C();
  const double electric = std::exp(-2.0 * p.gamma) * p.A_prime * p.A_prime;
  const double value =
      0.5 * (C2 * p.P + electric + 2.0 * C2 * p.P_I * p.I) * std::exp(-p.gamma);

  // Closed form in s = sech^2(bx), t = tanh(bx) after dividing every
  // cosh^2 - sigma^2 by cosh^2.
  const auto k = KinkConstants<double>::from(params);
  const auto shape = kink_shape(k, p.x);
  const double s = shape.sech2;
  const double t = shape.tanh;
  const double sig2 = k.sigma2;
  const double depth = 1.0 - sig2 * s;
  const double prefactor_depth =
      form == EnergyClosedForm::SigmaSquared ? depth : 1.0 - std::sqrt(sig2) * s;
  const double prefactor = C2 * (1.0 - sig2) * s / prefactor_depth;
  const double bracket = (1.0 - sig2) * s / depth + s - 4.0 * t * t / depth;
  const double closed = 0.5 * prefactor * bracket * std::exp(-p.gamma);
  return {value, closed};
}

double current_density(const BackgroundPoint& p, const ModelParams& params) {
  const double C2 = params.C() * params.C();
  return -C2 * std::exp(-2.0 * (p.alpha + p.gamma)) * p.P_I * p.A;
}

DensityPair charge_density(const BackgroundPoint& p, const ModelParams& params) {
  const double C2 = params.C() * params.C();
  const double value = -C2 * std::exp(-2.0 * p.alpha - p.gamma) * p.P_I * p.A;

  // 2 C^2 sqrt(lambda) (1 - sigma^2) sinh / (cosh^2 sqrt(cosh^2 - sigma^2))
  //   = 2 C^2 sqrt(lambda) (1 - sigma^2) tanh sech^2 / sqrt(1 - sigma^2 sech^2)
  const auto k = KinkConstants<double>::from(params);
  const auto shape = kink_shape(k, p.x);
  const double closed = 2.0 * C2 * std::sqrt(k.lambda) * (1.0 - k.sigma2) * shape.tanh *
                        shape.sech2 / std::sqrt(1.0 - k.sigma2 * shape.sech2);
  return {value, closed};
}

double discrepancy(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double energy_closed_form(const ModelParams& params) {
  const double sigma = std::sqrt(params.sigma2());
  const double scale = std::abs(params.C()) / (2.0 * std::sqrt(params.lambda()));
  // bracket / sigma^3; the series avoids the cancellation for small sigma.
  double reduced;
  if (sigma < 1e-2) {
    const double s2 = sigma * sigma;
    reduced = 2.0 / 3.0 + s2 * (7.0 / 15.0 + s2 * 157.0 / 420.0);
  } else {
    const double root = std::sqrt(1.0 - sigma * sigma);
    // 1/2 ln((1 + sigma)/(1 - sigma)) == artanh(sigma), without the rounding of the quotient.
    const double bracket = sigma / root - root * std::atanh(sigma);
    reduced = bracket / (sigma * sigma * sigma);
  }
  return scale * reduced;
}

EnergyReport total_energy(const ModelParams& params, double tol) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be > 0");
  if (!(params.sigma2() < 1.0)) throw DomainError("energy requires sigma^2 < 1");

  const double b = params.b();
  const double x1 = params.x1();
  const double half = kTruncationWidth / b;

  auto density = [&params](double x) {
    return energy_density(background_point(params, x), params).value;
  };
  // Split at the center so each half sees a monotone tail; the tail beyond the
  // cut decays like e^{-2b|x|}, bounded by |f(cut)| / b.
  const QuadratureOptions opts{.abs_tol = 0.5 * tol};
  const auto left = integrate_checked(density, x1 - half, x1, opts);
  const auto right = integrate_checked(density, x1, x1 + half, opts);
  const double tail = (std::abs(density(x1 - half)) + std::abs(density(x1 + half))) / b;

  EnergyReport report;
  report.quadrature_x.value = left.value + right.value;
  report.quadrature_x.error_estimate = left.error_estimate + right.error_estimate + tail;
  report.quadrature_x.evaluations = left.evaluations + right.evaluations + 2;
  report.quadrature_x.converged = report.quadrature_x.error_estimate <= tol;
  if (!report.quadrature_x.converged) {
    throw QuadratureError("x-space energy quadrature missed tolerance after truncation");
  }

  // sqrt(I) route: E = C / (2 sqrt(H)) * integral of
  //   [sqrt(P) (1 + e^{2 gamma} / H) + 2 I P_I / sqrt(P)] d sqrt(I),
  // where both x half-lines map onto sqrt(I) in [0, 1/sqrt(lambda)].
  const double lambda = params.lambda();
  const double kappa = params.kappa();
  const double H = params.H();
  auto i_space = [=](double root_I) {
    const double I = root_I * root_I;
    const double one_minus = 1.0 - lambda * I;
    const double sqrt_P = std::abs(one_minus);
    const double P_I = -2.0 * lambda * one_minus;
    const double e2g = H / (1.0 - 0.5 * kappa * I);
    // 2 I P_I / sqrt(P) has a removable 0/0 at the endpoint.
    const double coupling = sqrt_P > 0.0 ? 2.0 * I * P_I / sqrt_P : -4.0 * lambda * I;
    return sqrt_P * (1.0 + e2g / H) + coupling;
  };
  const double branch_factor = 2.0 * std::abs(params.C()) / (2.0 * std::sqrt(H));
  auto raw = integrate_checked(i_space, 0.0, 1.0 / std::sqrt(lambda),
                               {.abs_tol = tol / branch_factor});
  report.quadrature_I = raw;
  report.quadrature_I.value = branch_factor * raw.value;
  report.quadrature_I.error_estimate = branch_factor * raw.error_estimate;

  report.closed_form = energy_closed_form(params);
  report.discrepancy_x_vs_I =
      discrepancy(report.quadrature_x.value, report.quadrature_I.value);
  report.discrepancy_vs_closed_form =
      discrepancy(report.quadrature_x.value, report.closed_form);
  return report;
}

namespace {

double charge_integrand(const ModelParams& params, double x) {
  const auto p = background_point(params, x);
  return charge_density(p, params).value * spatial_volume_factor(p);
}

}  // namespace

QuadratureResult half_charge(const ModelParams& params, HalfLine side, double tol) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be > 0");
  const double x1 = params.x1();
  const double half = kTruncationWidth / params.b();
  auto f = [&params](double x) { return charge_integrand(params, x); };
  return side == HalfLine::Left ? integrate_checked(f, x1 - half, x1, {.abs_tol = tol})
                                : integrate_checked(f, x1, x1 + half, {.abs_tol = tol});
}

QuadratureResult total_charge(const ModelParams& params, double tol) {
  const auto left = half_charge(params, HalfLine::Left, 0.5 * tol);
  const auto right = half_charge(params, HalfLine::Right, 0.5 * tol);
  QuadratureResult q;
  q.value = left.value + right.value;
  q.error_estimate = left.error_estimate + right.error_estimate;
  q.evaluations = left.evaluations + right.evaluations;
  q.converged = left.converged && right.converged && q.error_estimate <= tol;
  return q;
}

void write_density_csv(std::ostream& out, const Profile& profile) {
  out << "x,energy_density,charge_density,T00,T11\n";
  char line[256];
  for (const auto& p : profile.points) {
    const auto t = stress_energy(p, profile.params);
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.x,
                  energy_density(p, profile.params).value,
                  charge_density(p, profile.params).value, t.T00, t.T11);
    out << line;
  }
}

}  // namespace kinkfield
