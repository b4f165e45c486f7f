#pragma once

#include <concepts>
#include <span>
#include <vector>

namespace kinkfield {

/// Central finite-difference weights for derivative order 1 or 2 on the
/// 2m+1 points -m..m (m = accuracy_order / 2), computed with Fornberg's
/// recursion in long double. Throws DomainError for odd or < 2 accuracy
/// orders, or derivative orders other than 1 and 2.
std::vector<long double> central_weights(int derivative_order, int accuracy_order);

/// Number of points dropped at each end by a central stencil.
constexpr int stencil_half_width(int accuracy_order) { return accuracy_order / 2; }

/// Central-difference derivative of uniformly spaced samples. The result
/// holds interior points only: element i corresponds to input index
/// i + stencil_half_width(accuracy_order).
template <std::floating_point Real>
std::vector<Real> differentiate(std::span<const Real> values, Real spacing,
                                int derivative_order, int accuracy_order);

}  // namespace kinkfield
