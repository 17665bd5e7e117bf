#include "ajdn/filter.hpp"

#include "ajdn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace ajdn {

JumpPassFilter JumpPassFilter::optimal() {
    JumpPassFilter f;
    f.coefficients = {112.0, -933.3333, 3188.8889, -5320.0, 4246.6667, -1294.2222};
    f.order_k = 2;
    return f;
}

double JumpPassFilter::operator()(double x) const noexcept {
    const double a = std::fabs(x);
    if (a > 1.0) {
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t q = coefficients.size(); q-- > 0;) {
        acc = (acc + coefficients[q]) * a;
    }
    return x < 0.0 ? -acc : acc;
}

double JumpPassFilter::derivative(double x) const noexcept {
    // d/dx [sign(x) P(|x|)] = P'(|x|), an even function.
    const double a = std::fabs(x);
    if (a > 1.0) {
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t q = coefficients.size(); q-- > 0;) {
        acc = acc * a + static_cast<double>(q + 1) * coefficients[q];
    }
    return acc;
}

double eval_filter(const JumpPassFilter& filter, double x) noexcept { return filter(x); }

namespace {

// Composite Simpson on [a, b] with an even number of intervals.
template <typename F>
double simpson(F&& f, double a, double b, int intervals) {
    if (intervals % 2 != 0) {
        ++intervals;
    }
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int k = 1; k < intervals; ++k) {
        sum += f(a + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

// W has a jump in its second derivative at 0, so each half is integrated separately.
template <typename F>
double integrate_symmetric(F&& f, int points) {
    const int per_side = std::max(2, points / 2);
    return simpson(f, -1.0, 0.0, per_side) + simpson(f, 0.0, 1.0, per_side);
}

Check make_check(std::string name, double value, double target, double tolerance, bool required = true,
                 std::string note = {}) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.target = target;
    c.tolerance = tolerance;
    c.passed = std::fabs(value - target) <= tolerance;
    c.required = required;
    c.note = std::move(note);
    return c;
}

} // namespace

ValidationReport validate_filter(const JumpPassFilter& filter, int quadrature_points) {
    require(quadrature_points >= 1000, "validate_filter needs at least 1000 quadrature points");
    ValidationReport report;
    constexpr double kTol = 1e-3;

    const double half = simpson([&](double x) { return filter(x); }, 0.0, 1.0, quadrature_points);
    report.checks.push_back(make_check("unit_integral", half, 1.0, kTol));

    for (int u = 1; u <= filter.order_k + 1; ++u) {
        const double m = integrate_symmetric([&](double x) { return std::pow(x, u) * filter(x); }, quadrature_points);
        const bool required = u <= filter.order_k;
        auto c = make_check("moment_" + std::to_string(u), m, 0.0, kTol, required,
                            required ? "" : "first moment beyond order_k; reported only");
        report.checks.push_back(std::move(c));
    }

    // Oddness and support on the quadrature grid plus points outside [-1, 1].
    double odd_residual = 0.0;
    for (int k = 0; k <= quadrature_points; ++k) {
        const double x = -1.0 + 2.0 * k / quadrature_points;
        odd_residual = std::max(odd_residual, std::fabs(filter(x) + filter(-x)));
    }
    report.checks.push_back(make_check("oddness", odd_residual, 0.0, 0.0));
    double outside = 0.0;
    for (double x : {1.0 + 1e-12, 1.0001, 1.5, 2.0, 10.0}) {
        outside = std::max({outside, std::fabs(filter(x)), std::fabs(filter(-x))});
    }
    report.checks.push_back(make_check("support", outside, 0.0, 0.0));

    report.checks.push_back(make_check("boundary_value", filter(1.0), 0.0, kTol, false, "continuity at |x| = 1"));
    report.checks.push_back(make_check("boundary_derivative", filter.derivative(1.0), 0.0, 1e-2));
    {
        auto c = make_check("derivative_at_zero", filter.derivative(0.0), 0.0, 0.0);
        c.passed = filter.derivative(0.0) != 0.0;
        c.note = "must be nonzero";
        report.checks.push_back(std::move(c));
    }

    // F(x) = int_{-1}^x W via cumulative trapezoid on a fine grid; |F| must peak
    // uniquely at 0 and exceed every other local maximum.
    const int grid = quadrature_points;
    const double h = 2.0 / grid;
    std::vector<double> absF(static_cast<std::size_t>(grid) + 1, 0.0);
    double F = 0.0;
    double prev = filter(-1.0);
    for (int k = 1; k <= grid; ++k) {
        const double cur = filter(-1.0 + k * h);
        F += 0.5 * (prev + cur) * h;
        prev = cur;
        absF[static_cast<std::size_t>(k)] = std::fabs(F);
    }
    const auto peak = std::max_element(absF.begin(), absF.end());
    const double peak_x = -1.0 + h * static_cast<double>(peak - absF.begin());
    double other_local = 0.0;
    for (std::size_t k = 1; k + 1 < absF.size(); ++k) {
        const double x = -1.0 + h * static_cast<double>(k);
        if (std::fabs(x) <= 2.0 * h) {
            continue;
        }
        if (absF[k] >= absF[k - 1] && absF[k] >= absF[k + 1]) {
            other_local = std::max(other_local, absF[k]);
        }
    }
    {
        auto c = make_check("w2_peak_location", peak_x, 0.0, h);
        c.note = "argmax of |F_w| on the grid";
        report.checks.push_back(std::move(c));
    }
    {
        Check c;
        c.name = "w2_peak_margin";
        c.value = *peak - other_local;
        c.target = 0.0;
        c.tolerance = 0.0;
        c.passed = c.value > 0.0;
        c.note = "|F_w(0)| minus largest other local maximum; must be positive";
        report.checks.push_back(std::move(c));
    }
    return report;
}

double compute_H(const Panel& panel, std::size_t i, double s, std::size_t r, const JumpPassFilter& filter) {
    require(s > 0.0, "scale must be positive");
    require(r < panel.p(), "dimension index " + std::to_string(r) + " out of range");
    const std::size_t n = panel.n();
    require(i >= 1 && i <= n, "time index out of range");
    const long half = static_cast<long>(offset_floor(n, s));
    const long ii = static_cast<long>(i);
    require(ii - half >= 1 && ii + half <= static_cast<long>(n) && static_cast<double>(i) / n > s,
            "time " + std::to_string(static_cast<double>(i) / n) + " outside (s, 1 - s] for s = " + std::to_string(s));
    const auto y = panel.series(r);
    const double ns = static_cast<double>(n) * s;
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double x = (static_cast<double>(j) - static_cast<double>(i)) / ns;
        if (std::fabs(x) <= 1.0) {
            acc += y[j - 1] * filter(x);
        }
    }
    return acc / std::sqrt(ns);
}

} // namespace ajdn
