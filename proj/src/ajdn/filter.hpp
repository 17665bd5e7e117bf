#pragma once

#include "ajdn/panel.hpp"
#include "ajdn/report.hpp"

#include <array>
#include <cstddef>

namespace ajdn {

// Odd, compactly supported jump-pass kernel
//   W(x) = sign(x) * sum_{q=1..6} coefficients[q-1] * |x|^q   for |x| <= 1,
//   W(x) = 0                                                  otherwise.
struct JumpPassFilter {
    std::array<double, 6> coefficients{};
    // Number of vanishing moments u = 1..order_k.
    int order_k = 2;

    // The sixth-degree optimal jump-pass filter, coefficients at four decimals.
    static JumpPassFilter optimal();

    [[nodiscard]] double operator()(double x) const noexcept;
    [[nodiscard]] double derivative(double x) const noexcept;
};

double eval_filter(const JumpPassFilter& filter, double x) noexcept;

// Quadrature-based checks of the filter class: unit half-integral, vanishing
// moments 1..k, oddness, support, flat boundary derivative and the requirement
// that |F(x)| = |int_{-1}^x W| peaks uniquely at 0. Never throws on a failed
// check; throws only when quadrature_points < 1000.
ValidationReport validate_filter(const JumpPassFilter& filter, int quadrature_points);

// H(t,s,r) = (ns)^{-1/2} sum_j y_{r,j} W((j/n - t)/s) evaluated directly from the
// definition at grid time t = i/n (1-based i). Requires s < t <= 1 - s.
double compute_H(const Panel& panel, std::size_t i, double s, std::size_t r, const JumpPassFilter& filter);

} // namespace ajdn
