#include "kinkfield/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "kinkfield/errors.hpp"

namespace kinkfield {
namespace {

// Kronrod abscissae, descending; odd indices are the Gauss points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

Segment gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);

  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }

  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  const double value = kronrod * half;
  abs_sum *= std::abs(half);
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * abs_sum, err);
  }
  return {a, b, value, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::vector<Segment> segments{gauss_kronrod15(f, a, b)};
  result.evaluations = 15;

  auto totals = [&segments] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& s : segments) {
      value += s.value;
      error += s.error;
    }
    return std::pair{value, error};
  };

  for (;;) {
    const auto [value, error] = totals();
    const double target = std::max(options.abs_tol, options.rel_tol * std::abs(value));
    if (error <= target) {
      result.converged = true;
      break;
    }
    if (static_cast<int>(segments.size()) >= options.max_intervals) break;

    auto worst = std::max_element(segments.begin(), segments.end(),
                                  [](const Segment& l, const Segment& r) {
                                    return l.error < r.error;
                                  });
    const Segment s = *worst;
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > std::min(s.a, s.b) && mid < std::max(s.a, s.b))) break;  // cannot split further

    *worst = gauss_kronrod15(f, s.a, mid);
    segments.push_back(gauss_kronrod15(f, mid, s.b));
    result.evaluations += 30;
  }

  std::sort(segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  const auto [value, error] = totals();
  result.value = value;
  result.error_estimate = error;
  return result;
}

QuadratureResult integrate_checked(const std::function<double(double)>& f, double a,
                                   double b, const QuadratureOptions& options) {
  QuadratureResult r = integrate(f, a, b, options);
  if (!r.converged) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "quadrature on [" << a << ", " << b << "] did not converge: error estimate "
        << r.error_estimate << " > tolerance " << options.abs_tol << " after "
        << r.evaluations << " evaluations";
    throw QuadratureError(msg.str());
  }
  return r;
}

}  // namespace kinkfield
