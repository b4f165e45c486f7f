#include "kinkfield/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kinkfield/errors.hpp"

namespace kinkfield {

std::vector<long double> central_weights(int derivative_order, int accuracy_order) {
  if (derivative_order != 1 && derivative_order != 2) {
    throw DomainError("derivative order must be 1 or 2 (got " +
                      std::to_string(derivative_order) + ")");
  }
  if (accuracy_order < 2 || accuracy_order % 2 != 0) {
    throw DomainError("accuracy order must be an even integer >= 2 (got " +
                      std::to_string(accuracy_order) + ")");
  }

  const int m = stencil_half_width(accuracy_order);
  const int n = 2 * m + 1;
  const int d = derivative_order;
  std::vector<long double> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = static_cast<long double>(i - m);

  // c[i][k]: weight of node i for the k-th derivative at 0.
  std::vector<std::vector<long double>> c(n, std::vector<long double>(d + 1, 0.0L));
  long double c1 = 1.0L;
  long double c4 = nodes[0];
  c[0][0] = 1.0L;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, d);
    long double c2 = 1.0L;
    const long double c5 = c4;
    c4 = nodes[i];
    for (int j = 0; j < i; ++j) {
      const long double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }

  std::vector<long double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][d];
  return w;
}

template <std::floating_point Real>
std::vector<Real> differentiate(std::span<const Real> values, Real spacing,
                                int derivative_order, int accuracy_order) {
  const auto weights = central_weights(derivative_order, accuracy_order);
  const auto n = static_cast<long>(values.size());
  if (n <= accuracy_order + derivative_order) {
    throw DomainError("sequence of length " + std::to_string(n) +
                      " too short for a central stencil of accuracy order " +
                      std::to_string(accuracy_order));
  }
  if (!(spacing > 0) || !std::isfinite(static_cast<double>(spacing))) {
    throw DomainError("grid spacing must be positive and finite");
  }

  const int m = stencil_half_width(accuracy_order);
  std::vector<Real> w(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) w[i] = static_cast<Real>(weights[i]);
  const Real scale = derivative_order == 1 ? spacing : spacing * spacing;

  std::vector<Real> out(static_cast<std::size_t>(n - 2 * m));
  for (long i = m; i < n - m; ++i) {
    Real sum = 0;
    for (int s = -m; s <= m; ++s) sum += w[s + m] * values[i + s];
    out[i - m] = sum / scale;
  }
  return out;
}

template std::vector<double> differentiate(std::span<const double>, double, int, int);
template std::vector<long double> differentiate(std::span<const long double>, long double,
                                                int, int);

}  // namespace kinkfield
