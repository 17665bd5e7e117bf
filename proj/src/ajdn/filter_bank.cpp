#include "ajdn/filter_bank.hpp"

#include "ajdn/errors.hpp"
#include "ajdn/panel.hpp"

#include <cmath>

namespace ajdn {

FilterBank::FilterBank(std::size_t n, std::span<const double> scales, const JumpPassFilter& filter)
    : n_(n), scales_(scales.begin(), scales.end()) {
    require(!scales_.empty(), "filter bank needs at least one scale");
    for (double s : scales_) {
        require(s > 0.0, "filter bank scales must be positive");
        const double ns = static_cast<double>(n) * s;
        const std::size_t m = offset_floor(n, s);
        std::vector<double> taps(m);
        for (std::size_t d = 1; d <= m; ++d) {
            // Same argument arithmetic as compute_H, so the taps match it exactly.
            taps[d - 1] = filter(static_cast<double>(d) / ns);
        }
        taps_.push_back(std::move(taps));
        normalisers_.push_back(1.0 / std::sqrt(ns));
    }
}

double FilterBank::apply(std::span<const double> x, std::size_t i, std::size_t j) const {
    const auto& w = taps_[j];
    const std::size_t m = w.size();
    require(i > m && i + m <= x.size(), "filter window leaves the series");
    const double* centre = x.data() + (i - 1);
    double acc = 0.0;
    for (std::size_t d = 1; d <= m; ++d) {
        acc += w[d - 1] * (centre[d] - centre[-static_cast<std::ptrdiff_t>(d)]);
    }
    return acc * normalisers_[j];
}

FilterBankSet::FilterBankSet(std::size_t n, const ScaleGrid& grid, const JumpPassFilter& filter) {
    std::vector<const std::vector<double>*> keys;
    for (std::size_t r = 0; r < grid.p(); ++r) {
        const auto& scales = grid.dim(r).scales;
        const FilterBank* found = nullptr;
        for (std::size_t b = 0; b < keys.size(); ++b) {
            if (*keys[b] == scales) {
                found = banks_[b].get();
                break;
            }
        }
        if (found == nullptr) {
            banks_.push_back(std::make_shared<const FilterBank>(n, scales, filter));
            keys.push_back(&scales);
            found = banks_.back().get();
        }
        by_dim_.push_back(found);
    }
}

} // namespace ajdn
