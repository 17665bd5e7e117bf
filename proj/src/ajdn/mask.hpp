#pragma once

#include "ajdn/scales.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ajdn {

// Per-dimension set of admissible grid times T_r, stored as a flag per 1-based
// index. Masks only ever shrink during detection.
class AdmissibleMask {
public:
    AdmissibleMask() = default;
    AdmissibleMask(std::size_t n, std::size_t p);

    // T_r = (s_max_r, 1 - s_max_r] for every dimension.
    static AdmissibleMask initial(std::size_t n, const ScaleGrid& grid);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t p() const noexcept { return flags_.size(); }

    [[nodiscard]] bool allowed(std::size_t r, std::size_t i) const { return flags_[r][i] != 0; }
    void set(std::size_t r, std::size_t i, bool value);

    [[nodiscard]] std::size_t count(std::size_t r) const { return counts_.at(r); }
    [[nodiscard]] std::size_t total() const;
    [[nodiscard]] bool empty() const { return total() == 0; }

    // Removes every i with |i/n - t_hat| <= half_width from dimension r.
    // Returns the number of indices removed.
    std::size_t exclude(std::size_t r, std::size_t center, double half_width);

    [[nodiscard]] bool same_dimension(const AdmissibleMask& other, std::size_t r) const;
    // True when every dimension of *this is contained in the matching dimension of other.
    [[nodiscard]] bool subset_of(const AdmissibleMask& other) const;

    [[nodiscard]] std::vector<std::size_t> indices(std::size_t r) const;

    [[nodiscard]] AdmissibleMask permuted(const std::vector<std::size_t>& order) const;

    friend bool operator==(const AdmissibleMask&, const AdmissibleMask&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::vector<std::uint8_t>> flags_; // [r][i], index 0 unused
    std::vector<std::size_t> counts_;
};

} // namespace ajdn
