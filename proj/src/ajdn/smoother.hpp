#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ajdn {

// Rule-of-thumb bandwidth for local-linear regression on an equispaced design
// x = 0..L-1: a global quartic pilot gives sigma^2 and the curvature term,
//   h = 1.719 * [sigma^2 (L - 1) / sum_k m''(x_k)^2]^{1/5}   (Epanechnikov constant),
// clamped to [2, L - 1].
double rot_bandwidth(std::span<const double> y);

// Local-linear fit with Epanechnikov weights K(u) = 3/4 (1 - u^2), u = (x - x0)/h.
std::vector<double> local_linear_fit(std::span<const double> y, double bandwidth);

// Residuals after smoothing each segment [1, d_1], [d_1 + 1, d_2], ..., [d_M + 1, n]
// independently. `breaks` holds 1-based last-pre-jump indices.
std::vector<double> piecewise_detrend(std::span<const double> series, std::vector<std::size_t> breaks);

} // namespace ajdn
