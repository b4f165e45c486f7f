#include "kinkfield/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <span>

#include "kinkfield/errors.hpp"
#include "kinkfield/finite_difference.hpp"
#include "kinkfield/observables.hpp"

namespace kinkfield {
namespace {

template <std::floating_point Real>
std::vector<Real> column(const FieldSamples<Real>& f, Real BasicBackgroundPoint<Real>::*field) {
  std::vector<Real> out;
  out.reserve(f.points.size());
  for (const auto& p : f.points) out.push_back(p.*field);
  return out;
}

template <std::floating_point Real>
std::vector<Real> derivative(const FieldSamples<Real>& f,
                             Real BasicBackgroundPoint<Real>::*field, int order,
                             int accuracy_order) {
  const auto values = column(f, field);
  return differentiate<Real>(std::span<const Real>(values), f.spacing, order,
                             accuracy_order);
}

template <std::floating_point Real>
void push(EquationResidual<Real>& r, std::initializer_list<Real> terms) {
  Real sum = 0;
  Real scale = 0;
  for (Real t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  r.value.push_back(sum);
  r.scale.push_back(scale);
}

template <std::floating_point Real>
std::size_t interior_count(const FieldSamples<Real>& f, int accuracy_order) {
  const auto m = static_cast<std::size_t>(stencil_half_width(accuracy_order));
  if (f.points.size() <= 2 * m) {
    throw DomainError("grid too short for the requested stencil");
  }
  return f.points.size() - 2 * m;
}

}  // namespace

template <std::floating_point Real>
FieldSamples<Real> FieldSamples<Real>::from_profile(const Profile& profile) {
  FieldSamples<Real> f{profile.params, static_cast<Real>(profile.spacing()), {}};
  f.points.reserve(profile.points.size());
  for (const auto& p : profile.points) {
    BasicBackgroundPoint<Real> q;
    q.x = p.x;
    q.A = p.A;
    q.A_prime = p.A_prime;
    q.gamma = p.gamma;
    q.gamma_prime = p.gamma_prime;
    q.beta = p.beta;
    q.alpha = p.alpha;
    q.I = p.I;
    q.P = p.P;
    q.P_I = p.P_I;
    q.phi_prime = p.phi_prime;
    q.one_minus_lambda_I = p.one_minus_lambda_I;
    q.one_minus_lambda_A_sq = p.one_minus_lambda_A_sq;
    f.points.push_back(q);
  }
  return f;
}

template <std::floating_point Real>
FieldSamples<Real> sample_fields(const ModelParams& params, Real h, int n) {
  if (!(h > 0) || n < 3) throw DomainError("sample_fields needs h > 0 and n >= 3");
  FieldSamples<Real> f{params, h, {}};
  f.points.reserve(static_cast<std::size_t>(n));
  const Real x1 = static_cast<Real>(params.x1());
  const Real mid = static_cast<Real>(n - 1) / 2;
  for (int i = 0; i < n; ++i) {
    f.points.push_back(background_point<Real>(params, x1 + (static_cast<Real>(i) - mid) * h));
  }
  return f;
}

template <std::floating_point Real>
std::vector<EquationResidual<Real>> einstein_residuals(const FieldSamples<Real>& f,
                                                       int accuracy_order) {
  using P = BasicBackgroundPoint<Real>;
  const auto count = interior_count(f, accuracy_order);
  const auto m = static_cast<std::size_t>(stencil_half_width(accuracy_order));
  const auto beta1 = derivative(f, &P::beta, 1, accuracy_order);
  const auto beta2 = derivative(f, &P::beta, 2, accuracy_order);
  const auto gamma1 = derivative(f, &P::gamma, 1, accuracy_order);
  const auto gamma2 = derivative(f, &P::gamma, 2, accuracy_order);
  const auto a1 = derivative(f, &P::A, 1, accuracy_order);
  const Real kappa = static_cast<Real>(f.params.kappa());

  EquationResidual<Real> g00{equation::kG00, true, {}, {}};
  EquationResidual<Real> g11{equation::kG11, true, {}, {}};
  EquationResidual<Real> g22{equation::kG22, true, {}, {}};
  for (std::size_t i = 0; i < count; ++i) {
    P pt = f.points[i + m];
    pt.A_prime = a1[i];
    pt.gamma_prime = gamma1[i];
    const auto T = stress_energy(pt, f.params);
    const Real lapse = std::exp(-2 * pt.alpha);
    const Real b1 = beta1[i];
    const Real cross = lapse * gamma1[i] * b1;
    const Real square = lapse * b1 * b1;

    push(g00, {2 * lapse * beta2[i], -2 * cross, -square, kappa * T.T00});
    push(g11, {2 * cross, square, kappa * T.T11});
    push(g22, {lapse * beta2[i], lapse * gamma2[i], -2 * cross, -square, kappa * T.T22});
  }
  return {g00, g11, g22};
}

template <std::floating_point Real>
std::vector<EquationResidual<Real>> matter_residuals(const FieldSamples<Real>& f,
                                                     int accuracy_order) {
  using P = BasicBackgroundPoint<Real>;
  const auto count = interior_count(f, accuracy_order);
  const auto m = static_cast<std::size_t>(stencil_half_width(accuracy_order));
  const Real C = static_cast<Real>(f.params.C());
  const Real lambda = static_cast<Real>(f.params.lambda());

  // Scalar equation: Psi = 1 / P, so (phi' Psi)' = (phi' / P)'.
  std::vector<Real> flux;
  std::vector<Real> inv_P;
  for (const auto& p : f.points) {
    flux.push_back(p.phi_prime / p.P);
    inv_P.push_back(1 / p.P);
  }
  const auto flux1 = differentiate<Real>(std::span<const Real>(flux), f.spacing, 1, accuracy_order);
  const auto inv_P1 = differentiate<Real>(std::span<const Real>(inv_P), f.spacing, 1, accuracy_order);
  const auto phi1 = derivative(f, &P::phi_prime, 1, accuracy_order);

  const auto a1 = derivative(f, &P::A, 1, accuracy_order);
  const auto a2 = derivative(f, &P::A, 2, accuracy_order);
  const auto gamma1 = derivative(f, &P::gamma, 1, accuracy_order);

  EquationResidual<Real> scalar{equation::kScalar, true, {}, {}};
  EquationResidual<Real> maxwell{equation::kMaxwell, true, {}, {}};
  EquationResidual<Real> expanded{equation::kMaxwellExpanded, true, {}, {}};
  for (std::size_t i = 0; i < count; ++i) {
    const P& p = f.points[i + m];
    scalar.value.push_back(flux1[i]);
    scalar.scale.push_back(std::max(std::abs(phi1[i] / p.P), std::abs(p.phi_prime * inv_P1[i])));

    // (e^{-2 gamma} A')' = e^{-2 gamma} (A'' - 2 gamma' A')
    const Real e = std::exp(-2 * p.gamma);
    const Real curvature = e * a2[i];
    const Real drag = -2 * e * gamma1[i] * a1[i];
    push(maxwell, {curvature, drag, -C * C * p.P_I * e * p.A});
    push(expanded, {curvature, drag, 2 * lambda * C * C * e * p.A,
                    -2 * lambda * lambda * C * C * e * e * p.A * p.A * p.A});
  }
  return {scalar, maxwell, expanded};
}

template <std::floating_point Real>
std::vector<EquationResidual<Real>> first_integral_residuals(const FieldSamples<Real>& f,
                                                             int accuracy_order,
                                                             double beta_slope) {
  using P = BasicBackgroundPoint<Real>;
  const auto count = interior_count(f, accuracy_order);
  const auto m = static_cast<std::size_t>(stencil_half_width(accuracy_order));
  const auto beta2 = derivative(f, &P::beta, 2, accuracy_order);
  const auto gamma2 = derivative(f, &P::gamma, 2, accuracy_order);
  const Real kappa = static_cast<Real>(f.params.kappa());
  const Real H = static_cast<Real>(f.params.H());
  const Real C2 = static_cast<Real>(f.params.C()) * static_cast<Real>(f.params.C());
  const Real k = kGammaIntegralConstant;
  const Real c1 = kMaxwellIntegralConstant;
  const Real E = static_cast<Real>(beta_slope);

  EquationResidual<Real> sum{equation::kBetaGammaSum, true, {}, {}};
  EquationResidual<Real> gamma_int{equation::kGammaFirstIntegral, false, {}, {}};
  EquationResidual<Real> metric{equation::kMetricIntegral, false, {}, {}};
  EquationResidual<Real> maxwell_int{equation::kMaxwellFirstIntegral, false, {}, {}};
  EquationResidual<Real> constraint{equation::kGammaConstraint, false, {}, {}};
  for (std::size_t i = 0; i < count; ++i) {
    const P& p = f.points[i + m];
    const Real e_m2g = std::exp(-2 * p.gamma);
    const Real metric_poly = kappa * p.A * p.A / 2 + H;
    const Real field = p.A_prime / metric_poly;

    push(sum, {beta2[i], gamma2[i]});
    push(gamma_int, {p.gamma_prime, -kappa / 2 * p.A * p.A_prime * e_m2g, -k});
    push(metric, {std::exp(2 * p.gamma), -kappa * p.A * p.A / 2, -H});
    push(maxwell_int, {field * field, -C2 / H * p.P, -c1});
    push(constraint, {-p.gamma_prime * p.gamma_prime, E * E, -kappa / 2 * C2 * p.P,
                      kappa / 2 * e_m2g * p.A_prime * p.A_prime});
  }
  return {sum, gamma_int, metric, maxwell_int, constraint};
}

template <std::floating_point Real>
EquationNorms norms_of(const EquationResidual<Real>& r, double spacing) {
  EquationNorms n;
  n.id = r.id;
  double sum_sq = 0.0;
  double max_scale = 0.0;
  for (std::size_t i = 0; i < r.value.size(); ++i) {
    const double v = std::abs(static_cast<double>(r.value[i]));
    const double s = static_cast<double>(r.scale[i]);
    n.max_abs = std::max(n.max_abs, v);
    max_scale = std::max(max_scale, s);
    sum_sq += v * v;
    n.max_pointwise_normalized = std::max(n.max_pointwise_normalized, s > 0.0 ? v / s : v);
  }
  n.l2 = std::sqrt(spacing * sum_sq);
  n.normalized_max = max_scale > 0.0 ? n.max_abs / max_scale : n.max_abs;
  return n;
}

#define KINKFIELD_INSTANTIATE(Real)                                                     \
  template struct FieldSamples<Real>;                                                   \
  template FieldSamples<Real> sample_fields(const ModelParams&, Real, int);             \
  template std::vector<EquationResidual<Real>> einstein_residuals(                      \
      const FieldSamples<Real>&, int);                                                  \
  template std::vector<EquationResidual<Real>> matter_residuals(                        \
      const FieldSamples<Real>&, int);                                                  \
  template std::vector<EquationResidual<Real>> first_integral_residuals(                \
      const FieldSamples<Real>&, int, double);                                          \
  template EquationNorms norms_of(const EquationResidual<Real>&, double);

KINKFIELD_INSTANTIATE(double)
KINKFIELD_INSTANTIATE(long double)
#undef KINKFIELD_INSTANTIATE

const EquationNorms& ResidualReport::norms(const std::string& id) const {
  for (const auto& n : equations) {
    if (n.id == id) return n;
  }
  throw DomainError("no equation '" + id + "' in residual report");
}

const EquationResidual<double>& ResidualReport::residual(const std::string& id) const {
  for (const auto& r : per_point) {
    if (r.id == id) return r;
  }
  throw DomainError("no equation '" + id + "' in residual report");
}

ResidualReport verify(const Profile& profile, int accuracy_order, double tolerance) {
  if (profile.points.size() < 3) throw DomainError("profile needs at least 3 points");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  const double h = profile.spacing();
  for (std::size_t i = 1; i < profile.points.size(); ++i) {
    const double step = profile.points[i].x - profile.points[i - 1].x;
    if (!(step > 0.0) || std::abs(step - h) > 1e-9 * h) {
      throw DomainError("residual verification needs a strictly increasing uniform grid");
    }
  }

  const auto fields = FieldSamples<double>::from_profile(profile);
  ResidualReport report;
  report.params = profile.params;
  report.grid = {profile.points.front().x, profile.points.back().x,
                 static_cast<int>(profile.points.size())};
  report.fd_order = accuracy_order;
  report.tolerance = tolerance;

  for (auto group : {einstein_residuals(fields, accuracy_order),
                     matter_residuals(fields, accuracy_order),
                     first_integral_residuals(fields, accuracy_order)}) {
    for (auto& r : group) report.per_point.push_back(std::move(r));
  }

  const auto m = static_cast<std::size_t>(stencil_half_width(accuracy_order));
  for (std::size_t i = m; i + m < profile.points.size(); ++i) {
    report.interior_x.push_back(profile.points[i].x);
  }

  report.pass = true;
  for (const auto& r : report.per_point) {
    auto n = norms_of(r, h);
    n.pass = n.normalized_max <= tolerance;
    report.pass = report.pass && n.pass;
    report.equations.push_back(n);
  }
  return report;
}

ResidualReport verify(const ModelParams& params, double x_min, double x_max, int n,
                      int accuracy_order, double tolerance) {
  return verify(sample_profile(params, x_min, x_max, n), accuracy_order, tolerance);
}

Profile corrupt_potential(const Profile& profile, double factor) {
  Profile out = profile;
  const double lambda = profile.params.lambda();
  const double C = profile.params.C();
  for (auto& p : out.points) {
    p.A *= factor;
    p.A_prime *= factor;
    p.I = std::exp(-2.0 * p.gamma) * p.A * p.A;
    p.one_minus_lambda_I = 1.0 - lambda * p.I;
    p.P = p.one_minus_lambda_I * p.one_minus_lambda_I;
    p.P_I = -2.0 * lambda * p.one_minus_lambda_I;
    p.phi_prime = C * p.P;
    p.one_minus_lambda_A_sq = 1.0 - lambda * p.A * p.A;
  }
  return out;
}

ConvergenceStudy maxwell_convergence(const ModelParams& params,
                                     const std::vector<double>& spacings,
                                     int accuracy_order) {
  if (spacings.size() < 2) throw DomainError("convergence study needs >= 2 spacings");
  ConvergenceStudy study;
  const double half_width = 10.0 / params.b();
  for (double h : spacings) {
    if (!(h > 0.0)) throw DomainError("grid spacing must be > 0");
    const int half_n = static_cast<int>(std::lround(half_width / h));
    const auto fields =
        sample_fields<long double>(params, static_cast<long double>(h), 2 * half_n + 1);
    const auto matter = matter_residuals(fields, accuracy_order);
    study.spacings.push_back(h);
    study.max_abs.push_back(norms_of(matter[1], h).max_abs);
  }

  // Least-squares slope of log(error) against log(h).
  const auto count = static_cast<double>(spacings.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    mx += std::log(study.spacings[i]);
    my += std::log(study.max_abs[i]);
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    const double dx = std::log(study.spacings[i]) - mx;
    sxy += dx * (std::log(study.max_abs[i]) - my);
    sxx += dx * dx;
  }
  study.fitted_order = sxy / sxx;
  return study;
}

void write_residual_csv(std::ostream& out, const ResidualReport& report) {
  out << "x";
  for (const auto& r : report.per_point) out << ',' << r.id;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < report.interior_x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", report.interior_x[i]);
    out << buf;
    for (const auto& r : report.per_point) {
      std::snprintf(buf, sizeof buf, ",%.17g", r.value[i]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace kinkfield
