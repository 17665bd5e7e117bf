#pragma once

#include "ajdn/filter.hpp"
#include "ajdn/scales.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace ajdn {

// Filter weights W(d / (n s_j)) for every scale of one grid, materialised once.
// The weight of sample k for the statistic centred at i depends only on the
// offset d = k - i, so each scale is stored as its positive-offset taps; the
// negative side follows from oddness and W(0) = 0.
class FilterBank {
public:
    FilterBank(std::size_t n, std::span<const double> scales, const JumpPassFilter& filter);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t scale_count() const noexcept { return taps_.size(); }
    [[nodiscard]] double scale(std::size_t j) const { return scales_[j]; }
    [[nodiscard]] std::size_t half_width(std::size_t j) const { return taps_[j].size(); }
    // 1 / sqrt(n s_j).
    [[nodiscard]] double normaliser(std::size_t j) const { return normalisers_[j]; }
    // taps(j)[d - 1] = W(d / (n s_j)), d = 1..half_width(j).
    [[nodiscard]] std::span<const double> taps(std::size_t j) const { return taps_[j]; }

    // H at 1-based index i and scale j for a 0-based series x.
    [[nodiscard]] double apply(std::span<const double> x, std::size_t i, std::size_t j) const;

private:
    std::size_t n_;
    std::vector<double> scales_;
    std::vector<double> normalisers_;
    std::vector<std::vector<double>> taps_;
};

// Banks for every dimension, shared between dimensions whose scale lists coincide.
class FilterBankSet {
public:
    FilterBankSet(std::size_t n, const ScaleGrid& grid, const JumpPassFilter& filter);

    [[nodiscard]] const FilterBank& for_dimension(std::size_t r) const { return *by_dim_.at(r); }
    [[nodiscard]] std::size_t distinct_banks() const noexcept { return banks_.size(); }

private:
    std::vector<std::shared_ptr<const FilterBank>> banks_;
    std::vector<const FilterBank*> by_dim_;
};

} // namespace ajdn
