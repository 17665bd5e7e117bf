#pragma once

#include "ajdn/panel.hpp"
#include "ajdn/scales.hpp"

#include <cstddef>
#include <vector>

namespace ajdn {

// Pooled two-sided local variance sigma^2_{r,t} for every grid time where it is
// defined, t in [s_max_r, 1 - s_max_r]. Left window i/n in [t - s_max, t - s_min],
// right window i/n in [t + s_min, t + s_max].
class LocalVarianceField {
public:
    LocalVarianceField() = default;

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t p() const noexcept { return values_.size(); }

    [[nodiscard]] bool defined(std::size_t r, std::size_t i) const;
    // Throws Argument if (r, i) is outside the field's domain.
    [[nodiscard]] double variance(std::size_t r, std::size_t i) const;
    // Throws Degenerate when the variance is zero.
    [[nodiscard]] double sd(std::size_t r, std::size_t i) const;

    [[nodiscard]] std::size_t first_index(std::size_t r) const { return first_.at(r); }
    [[nodiscard]] std::size_t last_index(std::size_t r) const { return last_.at(r); }

    [[nodiscard]] const DimensionScales& window(std::size_t r) const { return windows_.at(r); }

    friend LocalVarianceField compute_variance_field(const Panel&, const ScaleGrid&);

private:
    std::size_t n_ = 0;
    std::vector<std::vector<double>> values_; // [r][i], index 0 unused
    std::vector<std::size_t> first_;
    std::vector<std::size_t> last_;
    std::vector<DimensionScales> windows_;
};

// Direct evaluation at one grid time (1-based index i). Throws Argument on an
// empty window and Degenerate on zero pooled variance.
double local_variance(const Panel& panel, std::size_t r, std::size_t i, double s_min, double s_max);

// O(n) per dimension via prefix sums over globally centred data.
LocalVarianceField compute_variance_field(const Panel& panel, const ScaleGrid& grid);

struct WindowIndices {
    long left_lo, left_hi, right_lo, right_hi;
};
// Integer index sets of the two windows, clamped to [1, n].
WindowIndices variance_windows(std::size_t n, std::size_t i, double s_min, double s_max);

} // namespace ajdn
