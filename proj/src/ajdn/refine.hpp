#pragma once

#include "ajdn/detector.hpp"
#include "ajdn/panel.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ajdn {

// Local CUSUM window around a first-stage location d_hat: the statistic is
// built on the wide window d_hat -/+ (2 + alpha_tilde) z_n and maximised over
// the narrow window d_hat -/+ z_n. Both are clamped to [1/n, 1].
struct CusumWindow {
    double center = 0.0;
    double z_n = 0.0;
    double alpha_tilde = -0.5;

    [[nodiscard]] double wide_lo() const { return center - (2.0 + alpha_tilde) * z_n; }
    [[nodiscard]] double wide_hi() const { return center + (2.0 + alpha_tilde) * z_n; }
    [[nodiscard]] double narrow_lo() const { return center - z_n; }
    [[nodiscard]] double narrow_hi() const { return center + z_n; }
};

struct RefineConfig {
    double alpha_tilde = -0.5;
    // Half-width basis; <= 0 selects s_min_min / 2 from the scale grid.
    double z_n = 0.0;
};

// V(t) = S_[l,t] - |lambda([l,t])| / |lambda([l,u])| * S_[l,u] at every grid index
// of the narrow window (returned alongside the indices).
struct CusumProfile {
    std::vector<std::size_t> indices;
    std::vector<double> values;
};
CusumProfile cusum_profile(std::span<const double> series, const CusumWindow& window);

// argmax over the narrow window of |V|, earliest index on ties. Returns a 1-based index.
std::size_t refine_jump(const Panel& panel, std::size_t r, const CusumWindow& window);

// Fills refined_index / refined_time on every record.
void refine_all(const Panel& panel, std::vector<JumpRecord>& records, double z_n, double alpha_tilde);

} // namespace ajdn
