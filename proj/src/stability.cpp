#include "kinkfield/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <span>
#include <string>

#include "kinkfield/background.hpp"
#include "kinkfield/errors.hpp"
#include "kinkfield/finite_difference.hpp"

namespace kinkfield {
namespace {

std::vector<double> Perturbation::*const kFields[] = {
    &Perturbation::a0,     &Perturbation::a1,     &Perturbation::xi,
    &Perturbation::a0_dot, &Perturbation::a1_dot, &Perturbation::xi_dot};

double sech(double u) { return 1.0 / std::cosh(u); }

// phi' / (1 - lambda A0^2)^2, finite everywhere even where both factors
// underflow: phi' = C (1 - lambda I)^2.
double flux_ratio(const BackgroundPoint& p, double C) {
  if (p.one_minus_lambda_A_sq == 0.0) return 0.0;
  const double q = p.one_minus_lambda_I / p.one_minus_lambda_A_sq;
  return C * q * q;
}

}  // namespace

Perturbation Perturbation::zeros(std::vector<double> grid) {
  Perturbation p;
  const std::size_t n = grid.size();
  p.grid = std::move(grid);
  for (auto field : kFields) (p.*field).assign(n, 0.0);
  return p;
}

void Perturbation::validate() const {
  if (grid.empty()) throw DomainError("perturbation grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("perturbation grid must be strictly increasing");
  }
  for (auto field : kFields) {
    const auto& v = this->*field;
    if (v.size() != grid.size()) {
      throw DomainError("perturbation field length " + std::to_string(v.size()) +
                        " does not match grid length " + std::to_string(grid.size()));
    }
    for (double value : v) {
      if (!std::isfinite(value)) throw DomainError("perturbation fields must be finite");
    }
  }
}

void Perturbation::require_decay() const {
  for (auto field : kFields) {
    const auto& v = this->*field;
    if (std::abs(v.front()) > kDecayThreshold || std::abs(v.back()) > kDecayThreshold) {
      throw DomainError("perturbation must decay below 1e-12 at both grid ends");
    }
  }
}

Perturbation Perturbation::scaled(double s) const {
  Perturbation out = *this;
  for (auto field : kFields) {
    for (double& value : out.*field) value *= s;
  }
  return out;
}

Perturbation Perturbation::reflected() const {
  // a1 is the x-component of a vector and changes sign under x -> -x.
  Perturbation out = *this;
  for (auto field : kFields) {
    std::reverse((out.*field).begin(), (out.*field).end());
  }
  for (double& v : out.a1) v = -v;
  for (double& v : out.a1_dot) v = -v;
  return out;
}

double second_variation(const ModelParams& params, const Perturbation& pert,
                        int accuracy_order) {
  if (!params.is_flat()) {
    throw DomainError("the second variation is defined for flat space-time only (kappa = 0)");
  }
  pert.validate();
  pert.require_decay();

  const std::size_t n = pert.grid.size();
  const double h = (pert.grid.back() - pert.grid.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(pert.grid[i] - pert.grid[i - 1] - h) > 1e-9 * h) {
      throw DomainError("second variation needs a uniform grid");
    }
  }

  const auto da0 = differentiate<double>(std::span<const double>(pert.a0), h, 1, accuracy_order);
  const auto dxi = differentiate<double>(std::span<const double>(pert.xi), h, 1, accuracy_order);
  const auto m = static_cast<std::size_t>(stencil_half_width(accuracy_order));

  const double lambda = params.lambda();
  const double C = params.C();
  double sum = 0.0;
  double first = 0.0;
  double last = 0.0;
  for (std::size_t i = 0; i < da0.size(); ++i) {
    const std::size_t j = i + m;
    const auto bg = background_point(params, pert.grid[j]);
    const double w = bg.one_minus_lambda_A_sq;
    const double r = flux_ratio(bg, C);  // phi' / w^2

    const double electric = da0[i] - pert.a1_dot[j];
    const double scalar = (pert.xi_dot[j] * pert.xi_dot[j] + dxi[i] * dxi[i]) / (w * w);
    const double a0_weight = lambda * r * r * (1.0 - 5.0 * lambda * bg.A * bg.A);
    const double a1_weight = lambda * r * r * w;

    const double f = 0.5 * electric * electric + 0.5 * scalar -
                     a0_weight * pert.a0[j] * pert.a0[j] - a1_weight * pert.a1[j] * pert.a1[j];
    if (i == 0) first = f;
    last = f;
    sum += f;
  }
  return h * (sum - 0.5 * (first + last));
}

IndefinitenessWitness indefiniteness_witness(const ModelParams& params, int n) {
  const double b = params.b();
  const double x1 = params.x1();
  const auto grid = uniform_grid(x1 - 40.0 / b, x1 + 40.0 / b, n);

  IndefinitenessWitness w;
  w.pert_plus = Perturbation::zeros(grid);
  w.pert_minus = Perturbation::zeros(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = sech(b * (grid[i] - x1));
    w.pert_plus.xi[i] = s * s * s;
    w.pert_minus.a1[i] = s;
  }
  w.value_plus = second_variation(params, w.pert_plus);
  w.value_minus = second_variation(params, w.pert_minus);
  if (!(w.value_plus > 0.0) || !(w.value_minus < 0.0)) {
    throw InternalError("indefiniteness witness failed its sign check: value_plus = " +
                        std::to_string(w.value_plus) +
                        ", value_minus = " + std::to_string(w.value_minus));
  }
  return w;
}

double mode_potential(const ModelParams& params, double x) {
  const auto p = background_point(params, x);
  const double r = flux_ratio(p, params.C());
  return 2.0 * params.lambda() * r * r * p.one_minus_lambda_A_sq;
}

A1Evolution evolve_a1(const ModelParams& params, const Perturbation& initial,
                      const EvolutionOptions& options) {
  const double dt = options.dt;
  const double span = options.t_span;
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be > 0");
  if (!(span >= 10.0 * dt) || !std::isfinite(span)) {
    throw DomainError("t_span must be at least 10 dt");
  }
  if (options.sample_every < 1) throw DomainError("sample_every must be >= 1");
  initial.validate();

  const long steps = std::lround(span / dt);
  const long every = options.sample_every;
  const auto& source = options.source;
  const auto& gravity = options.gravity_source;

  A1Evolution out;
  out.x = initial.grid;
  for (long s = 0; s <= steps; ++s) {
    if (s % every == 0 || s == steps) out.t.push_back(static_cast<double>(s) * dt);
  }
  const std::size_t n_points = initial.grid.size();
  out.a1.assign(n_points, {});
  out.a1_dot.assign(n_points, {});
  out.overflowed.assign(n_points, false);

  for (std::size_t j = 0; j < n_points; ++j) {
    const double x = initial.grid[j];
    const double V = mode_potential(params, x);
    const double dA0 = background_point(params, x).A_prime;

    auto accel = [&](double a, double t) {
      double f = V * a;
      if (source) f += source(x, t);
      if (gravity) f -= 4.0 * dA0 * gravity(x, t);
      return f;
    };

    double a = initial.a1[j];
    double v = initial.a1_dot[j];
    auto& as = out.a1[j];
    auto& vs = out.a1_dot[j];
    as.reserve(out.t.size());
    vs.reserve(out.t.size());
    as.push_back(a);
    vs.push_back(v);

    for (long s = 1; s <= steps; ++s) {
      const double t = static_cast<double>(s - 1) * dt;
      const double k1a = v;
      const double k1v = accel(a, t);
      const double k2a = v + 0.5 * dt * k1v;
      const double k2v = accel(a + 0.5 * dt * k1a, t + 0.5 * dt);
      const double k3a = v + 0.5 * dt * k2v;
      const double k3v = accel(a + 0.5 * dt * k2a, t + 0.5 * dt);
      const double k4a = v + dt * k3v;
      const double k4v = accel(a + dt * k3a, t + dt);
      a += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
      v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

      if (!std::isfinite(a) || std::abs(a) > kOverflowGuard) {
        out.overflowed[j] = true;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        as.resize(out.t.size(), nan);
        vs.resize(out.t.size(), nan);
        break;
      }
      if (s % every == 0 || s == steps) {
        as.push_back(a);
        vs.push_back(v);
      }
    }
  }
  return out;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
};

LineFit fit_log_abs(std::span<const double> t, std::span<const double> a) {
  const double n = static_cast<double>(t.size());
  double mt = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    my += std::log(std::abs(a[i]));
  }
  mt /= n;
  my /= n;
  double stt = 0.0;
  double sty = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dt = t[i] - mt;
    const double dy = std::log(std::abs(a[i])) - my;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = sty / stt;
  // A flat log|a1| has no exponential regime to fit.
  fit.r2 = syy > 0.0 ? (sty * sty) / (stt * syy) : 0.0;
  return fit;
}

}  // namespace

GrowthFit growth_rate(const std::vector<double>& t, const std::vector<double>& a1, double x,
                      const ModelParams& params) {
  if (t.size() != a1.size() || t.size() < 10) {
    throw FitError("growth fit needs matching time and amplitude series of >= 10 samples");
  }
  const double t0 = t.front();
  const double span = t.back() - t0;
  auto window_start = [&](double fraction) {
    const double cut = t0 + (1.0 - fraction) * span;
    return static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), cut) - t.begin());
  };
  const std::size_t start = window_start(0.6);
  const std::size_t late = window_start(0.3);
  if (t.size() - late < 3) throw FitError("fit window holds too few samples");

  const double sign = std::copysign(1.0, a1[start]);
  for (std::size_t i = start; i < a1.size(); ++i) {
    if (!std::isfinite(a1[i]) || a1[i] == 0.0 || std::copysign(1.0, a1[i]) != sign) {
      throw FitError("a1 crosses zero or is not finite in the fit window at x = " +
                     std::to_string(x));
    }
  }

  const std::span<const double> ts(t);
  const std::span<const double> as(a1);
  const auto main = fit_log_abs(ts.subspan(start), as.subspan(start));
  const auto tail = fit_log_abs(ts.subspan(late), as.subspan(late));

  GrowthFit fit;
  fit.x = x;
  fit.fitted_rate = main.slope;
  fit.predicted_rate = std::sqrt(mode_potential(params, x));
  fit.relative_error = fit.predicted_rate > 0.0
                           ? std::abs(fit.fitted_rate - fit.predicted_rate) / fit.predicted_rate
                           : std::numeric_limits<double>::infinity();
  fit.fit_r2 = std::clamp(main.r2, 0.0, 1.0);
  fit.window_sensitivity =
      main.slope != 0.0 ? std::abs(tail.slope - main.slope) / std::abs(main.slope) : 0.0;
  if (fit.fit_r2 < 0.99) {
    throw FitError("no exponential regime at x = " + std::to_string(x) +
                   " (r^2 = " + std::to_string(fit.fit_r2) + ")");
  }
  return fit;
}

void write_evolution_csv(std::ostream& out, const A1Evolution& evolution) {
  char buf[40];
  out << 't';
  for (double x : evolution.x) {
    std::snprintf(buf, sizeof buf, ",a1(%.17g)", x);
    out << buf;
  }
  out << '\n';
  for (std::size_t s = 0; s < evolution.t.size(); ++s) {
    std::snprintf(buf, sizeof buf, "%.17g", evolution.t[s]);
    out << buf;
    for (const auto& series : evolution.a1) {
      std::snprintf(buf, sizeof buf, ",%.17g", series[s]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace kinkfield
