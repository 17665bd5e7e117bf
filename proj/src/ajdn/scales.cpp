#include "ajdn/scales.hpp"

#include "ajdn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ajdn {

ScaleGrid::ScaleGrid(std::vector<DimensionScales> dims, int delta_n) : dims_(std::move(dims)), delta_n_(delta_n) {
    require(!dims_.empty(), "scale grid needs at least one dimension");
    require(delta_n_ >= 2, "delta_n must be at least 2");
    for (const auto& d : dims_) {
        require(d.s_min < d.s_max, "s_min must be strictly below s_max");
        require(d.scales.size() == static_cast<std::size_t>(delta_n_), "per-dimension scale count must equal delta_n");
    }
}

ScaleGrid ScaleGrid::uniform(std::size_t p, double s_min, double s_max, int delta_n) {
    DimensionScales d{s_min, s_max, build_scale_grid(s_min, s_max, delta_n)};
    return ScaleGrid(std::vector<DimensionScales>(p, d), delta_n);
}

double ScaleGrid::min_s_min() const {
    double v = dims_.front().s_min;
    for (const auto& d : dims_) {
        v = std::min(v, d.s_min);
    }
    return v;
}

double ScaleGrid::max_s_max() const {
    double v = dims_.front().s_max;
    for (const auto& d : dims_) {
        v = std::max(v, d.s_max);
    }
    return v;
}

ScaleGrid ScaleGrid::permuted(const std::vector<std::size_t>& order) const {
    std::vector<DimensionScales> dims;
    dims.reserve(order.size());
    for (auto r : order) {
        dims.push_back(dims_.at(r));
    }
    return ScaleGrid(std::move(dims), delta_n_);
}

std::vector<double> build_scale_grid(double s_min, double s_max, int delta_n) {
    require(s_min > 0.0 && s_min < s_max && s_max < 0.5, "scale bounds must satisfy 0 < s_min < s_max < 0.5");
    require(delta_n >= 2, "delta_n must be at least 2");
    const double g_lo = std::log2(s_min);
    const double g_hi = std::log2(s_max);
    const double step = (g_hi - g_lo) / static_cast<double>(delta_n - 1);
    std::vector<double> scales(static_cast<std::size_t>(delta_n));
    for (int i = 0; i < delta_n; ++i) {
        scales[static_cast<std::size_t>(i)] = std::exp2(g_lo + i * step);
    }
    // Pin the endpoints so they equal the bounds exactly.
    scales.front() = s_min;
    scales.back() = s_max;
    return scales;
}

int delta_n_default(std::size_t n, std::size_t p, double C, double epsilon, int delta_cap) {
    require(n >= 10, "delta_n_default requires n >= 10");
    require(p >= 1, "delta_n_default requires p >= 1");
    require(C > 0.0, "delta_n_default requires C > 0");
    require(epsilon > 0.5, "delta_n_default requires epsilon > 1/2");
    require(delta_cap >= 2, "delta_cap must be at least 2");
    const double ln_n = std::log(static_cast<double>(n));
    const double ln_pn = std::log(static_cast<double>(p) * static_cast<double>(n));
    const double raw = C * std::pow(ln_n, 1.0 + epsilon) * std::pow(ln_pn, 2.5);
    if (!std::isfinite(raw) || raw >= static_cast<double>(delta_cap)) {
        return delta_cap;
    }
    return std::clamp(static_cast<int>(std::lround(raw)), 2, delta_cap);
}

ValidationReport check_scale_assumptions(const ScaleGrid& grid, std::size_t n) {
    ValidationReport report;
    const double nd = static_cast<double>(n);
    for (std::size_t r = 0; r < grid.p(); ++r) {
        const auto& d = grid.dim(r);
        const std::string tag = "dim" + std::to_string(r) + ".";

        Check upper;
        upper.name = tag + "s_max_below_half";
        upper.value = d.s_max;
        upper.target = 0.5;
        upper.passed = d.s_max < 0.5;
        upper.note = "admissible times (s_max, 1 - s_max] must be nonempty";
        report.checks.push_back(upper);

        Check window;
        window.name = tag + "window_points";
        window.value = nd * d.s_min;
        window.target = 2.0;
        window.passed = nd * d.s_min >= 2.0;
        window.required = false;
        report.checks.push_back(window);
        if (!window.passed) {
            std::ostringstream os;
            os << "dimension " << r << ": n*s_min = " << nd * d.s_min << " gives windows of fewer than 2 points";
            report.warnings.push_back(os.str());
        }

        const double regime = nd * d.s_min * d.s_min;
        if (regime < 0.5) {
            std::ostringstream os;
            os << "dimension " << r << ": n*s_min^2 = " << regime << " is small; asymptotic regime likely violated";
            report.warnings.push_back(os.str());
        }
    }
    return report;
}

} // namespace ajdn
