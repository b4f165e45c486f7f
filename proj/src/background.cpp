#include "kinkfield/background.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "kinkfield/errors.hpp"
#include "kinkfield/quadrature.hpp"

namespace kinkfield {

template <std::floating_point Real>
KinkConstants<Real> KinkConstants<Real>::from(const ModelParams& params) {
  KinkConstants k;
  k.kappa = static_cast<Real>(params.kappa());
  k.lambda = static_cast<Real>(params.lambda());
  k.C = static_cast<Real>(params.C());
  k.x1 = static_cast<Real>(params.x1());
  const Real gap = k.lambda - k.kappa / 2;
  k.H = gap / k.lambda;
  k.b = std::sqrt(k.C * k.C * gap);
  k.sigma2 = k.kappa / (2 * k.lambda);
  k.amplitude = std::sqrt(k.H / gap);
  k.metric_prefactor = k.H * k.lambda / gap;
  return k;
}

template <std::floating_point Real>
KinkShape<Real> kink_shape(const KinkConstants<Real>& k, Real x) {
  const Real u = k.b * (x - k.x1);
  if (std::abs(u) > static_cast<Real>(kAsymptoticThreshold)) {
    return {u, std::copysign(Real(1), u), Real(0)};
  }
  const Real c = std::cosh(u);
  return {u, std::tanh(u), 1 / (c * c)};
}

template <std::floating_point Real>
BasicBackgroundPoint<Real> background_point(const ModelParams& params, Real x) {
  const auto k = KinkConstants<Real>::from(params);
  const auto s = kink_shape(k, x);

  // 1 - sigma^2 sech^2 = (cosh^2 - sigma^2) / cosh^2, bounded below by 1 - sigma^2.
  const Real depth = 1 - k.sigma2 * s.sech2;

  BasicBackgroundPoint<Real> p;
  p.x = x;
  p.A = k.amplitude * s.tanh;
  p.A_prime = k.amplitude * k.b * s.sech2;
  p.gamma = (std::log(k.metric_prefactor) + std::log1p(-k.sigma2 * s.sech2)) / 2;
  p.gamma_prime = k.sigma2 * k.b * s.sech2 * s.tanh / depth;
  p.beta = -p.gamma;
  p.alpha = 2 * p.beta + p.gamma;

  // lambda I = sinh^2 / (cosh^2 - sigma^2), written without cosh^2 so it
  // survives the tails; 1 - lambda I = (1 - sigma^2) / (cosh^2 - sigma^2).
  p.I = s.tanh * s.tanh / (k.lambda * depth);
  p.one_minus_lambda_I = (1 - k.sigma2) * s.sech2 / depth;
  p.P = p.one_minus_lambda_I * p.one_minus_lambda_I;
  p.P_I = -2 * k.lambda * p.one_minus_lambda_I;
  p.phi_prime = k.C * p.P;
  // lambda * amplitude^2 = 1, so 1 - lambda A^2 = sech^2.
  p.one_minus_lambda_A_sq = s.sech2;
  return p;
}

template struct KinkConstants<double>;
template struct KinkConstants<long double>;
template KinkShape<double> kink_shape(const KinkConstants<double>&, double);
template KinkShape<long double> kink_shape(const KinkConstants<long double>&, long double);
template BasicBackgroundPoint<double> background_point(const ModelParams&, double);
template BasicBackgroundPoint<long double> background_point(const ModelParams&, long double);

double potential(const ModelParams& params, double x) {
  const auto k = KinkConstants<double>::from(params);
  return k.amplitude * kink_shape(k, x).tanh;
}

double metric_gamma_sq(const ModelParams& params, double x) {
  const auto k = KinkConstants<double>::from(params);
  return k.metric_prefactor * (1.0 - k.sigma2 * kink_shape(k, x).sech2);
}

double invariant_direct(const ModelParams& params, double x) {
  const double a = potential(params, x);
  return a * a / metric_gamma_sq(params, x);
}

double Profile::spacing() const {
  if (points.size() < 2) return 0.0;
  return (points.back().x - points.front().x) / static_cast<double>(points.size() - 1);
}

std::vector<double> uniform_grid(double x_min, double x_max, int n) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw DomainError("grid requires finite x_min < x_max");
  }
  if (n < 3) throw DomainError("grid requires n >= 3 points");
  const double center = 0.5 * (x_min + x_max);
  const double h = (x_max - x_min) / (n - 1);
  const double mid = 0.5 * (n - 1);
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[i] = center + (i - mid) * h;
  return grid;
}

Profile sample_profile(const ModelParams& params, double x_min, double x_max, int n) {
  const auto grid = uniform_grid(x_min, x_max, n);
  Profile profile{params, {}};
  profile.points.reserve(grid.size());
  for (double x : grid) profile.points.push_back(background_point(params, x));
  return profile;
}

Profile sample_profile(const ModelParams& params, int n) {
  const double half = 10.0 / params.b();
  return sample_profile(params, params.x1() - half, params.x1() + half, n);
}

double implicit_solution_residual(const ModelParams& params, double x, double tol) {
  const double kappa = params.kappa();
  const double lambda = params.lambda();
  const double H = params.H();
  const double a_end = potential(params, x);

  auto integrand = [=](double a) {
    const double metric = 0.5 * kappa * a * a + H;
    const double I = a * a / metric;
    const double sqrt_P = std::abs(1.0 - lambda * I);
    return 1.0 / (metric * sqrt_P);
  };

  const auto lhs = integrate_checked(integrand, 0.0, a_end, {.abs_tol = tol});
  return lhs.value - std::abs(params.C()) * (x - params.x1()) / std::sqrt(H);
}

void write_profile_csv(std::ostream& out, const Profile& profile) {
  out << "x,A,A_prime,gamma,beta,alpha,I,P,phi_prime\n";
  char line[512];
  for (const auto& p : profile.points) {
    std::snprintf(line, sizeof line,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.x, p.A,
                  p.A_prime, p.gamma, p.beta, p.alpha, p.I, p.P, p.phi_prime);
    out << line;
  }
}

}  // namespace kinkfield
