#include "ajdn/mask.hpp"

#include "ajdn/errors.hpp"
#include "ajdn/panel.hpp"

#include <algorithm>
#include <numeric>

namespace ajdn {

AdmissibleMask::AdmissibleMask(std::size_t n, std::size_t p)
    : n_(n), flags_(p, std::vector<std::uint8_t>(n + 1, 0)), counts_(p, 0) {}

AdmissibleMask AdmissibleMask::initial(std::size_t n, const ScaleGrid& grid) {
    AdmissibleMask mask(n, grid.p());
    for (std::size_t r = 0; r < grid.p(); ++r) {
        const double s_max = grid.dim(r).s_max;
        // i/n > s_max and i/n <= 1 - s_max.
        const long lo = index_floor(n, s_max) + 1;
        const long hi = index_floor(n, 1.0 - s_max);
        for (long i = std::max(1L, lo); i <= std::min(static_cast<long>(n), hi); ++i) {
            mask.set(r, static_cast<std::size_t>(i), true);
        }
    }
    return mask;
}

void AdmissibleMask::set(std::size_t r, std::size_t i, bool value) {
    require(r < flags_.size() && i >= 1 && i <= n_, "mask index out of range");
    auto& f = flags_[r][i];
    if ((f != 0) != value) {
        f = value ? 1 : 0;
        counts_[r] += value ? 1 : static_cast<std::size_t>(-1);
    }
}

std::size_t AdmissibleMask::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}); }

std::size_t AdmissibleMask::exclude(std::size_t r, std::size_t center, double half_width) {
    require(r < flags_.size(), "mask dimension out of range");
    const long reach = index_floor(n_, half_width);
    const long lo = std::max(1L, static_cast<long>(center) - reach);
    const long hi = std::min(static_cast<long>(n_), static_cast<long>(center) + reach);
    std::size_t removed = 0;
    for (long i = lo; i <= hi; ++i) {
        auto& f = flags_[r][static_cast<std::size_t>(i)];
        if (f != 0) {
            f = 0;
            ++removed;
        }
    }
    counts_[r] -= removed;
    return removed;
}

bool AdmissibleMask::same_dimension(const AdmissibleMask& other, std::size_t r) const {
    return n_ == other.n_ && counts_.at(r) == other.counts_.at(r) && flags_[r] == other.flags_.at(r);
}

bool AdmissibleMask::subset_of(const AdmissibleMask& other) const {
    if (n_ != other.n_ || flags_.size() != other.flags_.size()) {
        return false;
    }
    for (std::size_t r = 0; r < flags_.size(); ++r) {
        for (std::size_t i = 1; i <= n_; ++i) {
            if (flags_[r][i] != 0 && other.flags_[r][i] == 0) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::size_t> AdmissibleMask::indices(std::size_t r) const {
    std::vector<std::size_t> out;
    out.reserve(counts_.at(r));
    for (std::size_t i = 1; i <= n_; ++i) {
        if (flags_[r][i] != 0) {
            out.push_back(i);
        }
    }
    return out;
}

AdmissibleMask AdmissibleMask::permuted(const std::vector<std::size_t>& order) const {
    AdmissibleMask out(n_, order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        out.flags_[k] = flags_.at(order[k]);
        out.counts_[k] = counts_.at(order[k]);
    }
    return out;
}

} // namespace ajdn
