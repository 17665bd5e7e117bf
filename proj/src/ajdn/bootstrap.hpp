#pragma once

#include "ajdn/filter_bank.hpp"
#include "ajdn/mask.hpp"
#include "ajdn/panel.hpp"
#include "ajdn/variance.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ajdn {

// Block differences
//   Upsilon_{r,i} = (2 m)^{-1/2} ( sum_{j in [i-m, i)} y_{r,j} - sum_{j in [i, i+m)} y_{r,j} ),
// m = n s' the block length, defined on i in [m+1, n-m] and zero elsewhere.
struct UpsilonPanel {
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t block = 0;
    std::size_t valid_lo = 0; // 1-based, inclusive
    std::size_t valid_hi = 0;
    std::vector<double> values; // dimension-major, like Panel

    [[nodiscard]] std::span<const double> series(std::size_t r) const { return {values.data() + r * n, n}; }
    [[nodiscard]] double at(std::size_t r, std::size_t i) const { return values[r * n + i - 1]; }
};

// Block length ceil(n s') with tolerance.
std::size_t block_length(std::size_t n, double s_prime);

UpsilonPanel build_upsilon(const Panel& panel, double s_prime);
UpsilonPanel build_upsilon_blocks(const Panel& panel, std::size_t block);

// Standard normal multipliers Z^{(l)}_1..n for replicate l. Deterministic in (seed, l).
std::vector<double> replicate_multipliers(std::uint64_t seed, std::size_t replicate, std::size_t n);

// Single bootstrap statistic (unnormalised by sigma):
//   (n s)^{-1/2} sum_k W((k/n - t_i)/s) Upsilon_{r,k} Z_k.
double bootstrap_H(const UpsilonPanel& upsilon, std::span<const double> multipliers, const FilterBank& bank,
                   std::size_t r, std::size_t i, std::size_t j);

// Per-replicate, per-dimension maxima of |H^(l)| / sigma over an admissible mask.
// Only the maxima are kept; a dimension whose mask shrinks is recomputed from
// the retained Upsilon panel by regenerating its multiplier streams.
class BootstrapState {
public:
    struct Inputs {
        std::shared_ptr<const UpsilonPanel> upsilon;
        std::shared_ptr<const LocalVarianceField> variance;
        std::shared_ptr<const FilterBankSet> banks;
    };

    BootstrapState(Inputs inputs, AdmissibleMask mask, std::size_t k0, std::uint64_t seed);

    [[nodiscard]] std::size_t replicates() const noexcept { return k0_; }
    [[nodiscard]] std::size_t p() const noexcept { return p_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] const AdmissibleMask& mask() const noexcept { return mask_; }

    [[nodiscard]] double max_statistic(std::size_t replicate, std::size_t r) const { return maxima_[replicate * p_ + r]; }
    // Overall maximum over dimensions for each replicate.
    [[nodiscard]] std::vector<double> replicate_maxima() const;

    // Applies a shrunken mask; dimensions whose admissible set changed are recomputed.
    // Returns the number of dimensions recomputed.
    std::size_t shrink(const AdmissibleMask& mask);

    // Fresh computation of one dimension's maxima over `mask` (no state change).
    [[nodiscard]] std::vector<double> compute_dimension(std::size_t r, const AdmissibleMask& mask) const;

private:
    void compute_dimensions(std::span<const std::size_t> dims);

    Inputs in_;
    AdmissibleMask mask_;
    std::size_t k0_;
    std::size_t p_;
    std::uint64_t seed_;
    std::vector<double> maxima_; // [replicate][dimension]
};

BootstrapState run_bootstrap(const UpsilonPanel& upsilon, const LocalVarianceField& variance, const FilterBankSet& banks,
                             const AdmissibleMask& mask, std::size_t k0, std::uint64_t seed);
BootstrapState run_bootstrap(BootstrapState::Inputs inputs, const AdmissibleMask& mask, std::size_t k0, std::uint64_t seed);

// The ceil((1 - alpha) K0)-th order statistic of the replicate maxima after
// shrinking the state to `mask`, which must be a subset of the state's mask.
double critical_value(BootstrapState& state, double alpha, const AdmissibleMask& mask);

// Order-statistic quantile used by critical_value, exposed for reuse.
double upper_order_statistic(std::vector<double> values, double alpha);

} // namespace ajdn
