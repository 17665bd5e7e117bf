#pragma once

#include "ajdn/report.hpp"

#include <cstddef>
#include <vector>

namespace ajdn {

// Scales used in one dimension: geometric sequence from s_min to s_max.
struct DimensionScales {
    double s_min = 0.0;
    double s_max = 0.0;
    std::vector<double> scales;

    friend bool operator==(const DimensionScales&, const DimensionScales&) = default;
};

// Per-dimension sparse scale grids. All grids share the same delta_n.
class ScaleGrid {
public:
    ScaleGrid() = default;
    ScaleGrid(std::vector<DimensionScales> dims, int delta_n);

    // One grid shared by all p dimensions.
    static ScaleGrid uniform(std::size_t p, double s_min, double s_max, int delta_n);

    [[nodiscard]] std::size_t p() const noexcept { return dims_.size(); }
    [[nodiscard]] int delta_n() const noexcept { return delta_n_; }
    [[nodiscard]] const DimensionScales& dim(std::size_t r) const { return dims_.at(r); }
    [[nodiscard]] const std::vector<DimensionScales>& dims() const noexcept { return dims_; }

    // min over dimensions of s_min (the refinement half-width basis uses it).
    [[nodiscard]] double min_s_min() const;
    [[nodiscard]] double max_s_max() const;

    [[nodiscard]] ScaleGrid permuted(const std::vector<std::size_t>& order) const;

private:
    std::vector<DimensionScales> dims_;
    int delta_n_ = 0;
};

// s_i = 2^{g_i}, g_i = log2 s_min + (i-1)(log2 s_max - log2 s_min)/(delta_n - 1).
std::vector<double> build_scale_grid(double s_min, double s_max, int delta_n);

// round(C (ln n)^{1+eps} (ln(pn))^{5/2}) clamped to [2, delta_cap].
int delta_n_default(std::size_t n, std::size_t p, double C, double epsilon, int delta_cap = 40);

// Window-size sanity checks: n*s_min >= 2, s_max < 0.5, and a warning when
// n*s_min^2 is small.
ValidationReport check_scale_assumptions(const ScaleGrid& grid, std::size_t n);

} // namespace ajdn
