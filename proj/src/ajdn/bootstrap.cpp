#include "ajdn/bootstrap.hpp"

#include "ajdn/errors.hpp"
#include "ajdn/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

namespace ajdn {
namespace {

// Replicates processed together; the innermost loops run across a chunk.
constexpr std::size_t kChunk = 32;

void fill_multipliers(std::uint64_t seed, std::size_t replicate, std::span<double> out) {
    auto engine = substream(seed, replicate, kBootstrapDomain);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& z : out) {
        z = normal(engine);
    }
}

// 1 / sigma at every admissible index of dimension r; throws on degenerate variance.
std::vector<double> inverse_sd(const LocalVarianceField& variance, const AdmissibleMask& mask, std::size_t r) {
    std::vector<double> inv(mask.n() + 1, 0.0);
    for (std::size_t i = 1; i <= mask.n(); ++i) {
        if (mask.allowed(r, i)) {
            inv[i] = 1.0 / variance.sd(r, i);
        }
    }
    return inv;
}

// Maxima over the mask of |H^(l)|/sigma for the replicates of one chunk.
// `z` holds the chunk's multipliers as n rows of kChunk values.
void chunk_maxima(const UpsilonPanel& upsilon, const FilterBank& bank, const std::vector<std::size_t>& times,
                  const std::vector<double>& inv_sd, std::size_t r, const std::vector<double>& z,
                  std::array<double, kChunk>& best) {
    const std::size_t n = upsilon.n;
    std::vector<double> x(n * kChunk);
    const auto ups = upsilon.series(r);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = ups[k];
        const double* zr = z.data() + k * kChunk;
        double* xr = x.data() + k * kChunk;
        for (std::size_t c = 0; c < kChunk; ++c) {
            xr[c] = u * zr[c];
        }
    }
    best.fill(0.0);
    alignas(64) std::array<double, kChunk> acc{};
    for (std::size_t i : times) {
        const double* centre = x.data() + (i - 1) * kChunk;
        for (std::size_t j = 0; j < bank.scale_count(); ++j) {
            const auto taps = bank.taps(j);
            acc.fill(0.0);
            for (std::size_t d = 1; d <= taps.size(); ++d) {
                const double w = taps[d - 1];
                const double* hi = centre + d * kChunk;
                const double* lo = centre - d * kChunk;
                for (std::size_t c = 0; c < kChunk; ++c) {
                    acc[c] += w * (hi[c] - lo[c]);
                }
            }
            const double scale = bank.normaliser(j) * inv_sd[i];
            for (std::size_t c = 0; c < kChunk; ++c) {
                best[c] = std::max(best[c], std::fabs(acc[c]) * scale);
            }
        }
    }
}

} // namespace

std::size_t block_length(std::size_t n, double s_prime) {
    const long m = index_ceil(n, s_prime);
    return m < 0 ? 0 : static_cast<std::size_t>(m);
}

UpsilonPanel build_upsilon(const Panel& panel, double s_prime) {
    require(s_prime > 0.0, "block fraction s' must be positive");
    return build_upsilon_blocks(panel, block_length(panel.n(), s_prime));
}

UpsilonPanel build_upsilon_blocks(const Panel& panel, std::size_t block) {
    const std::size_t n = panel.n();
    require(block >= 1 && 2 * block <= n, "block length n*s' must lie in [1, n/2], got " + std::to_string(block));
    UpsilonPanel out;
    out.n = n;
    out.p = panel.p();
    out.block = block;
    out.valid_lo = block + 1;
    out.valid_hi = n - block;
    out.values.assign(n * panel.p(), 0.0);
    const double norm = 1.0 / std::sqrt(2.0 * static_cast<double>(block));
    for (std::size_t r = 0; r < panel.p(); ++r) {
        const auto y = panel.series(r);
        double* dst = out.values.data() + r * n;
        for (std::size_t i = out.valid_lo; i <= out.valid_hi; ++i) {
            // 0-based: left block [i-1-m, i-1), right block [i-1, i-1+m).
            double left = 0.0;
            double right = 0.0;
            for (std::size_t q = 0; q < block; ++q) {
                left += y[i - 1 - block + q];
                right += y[i - 1 + q];
            }
            dst[i - 1] = (left - right) * norm;
        }
    }
    return out;
}

std::vector<double> replicate_multipliers(std::uint64_t seed, std::size_t replicate, std::size_t n) {
    std::vector<double> z(n);
    fill_multipliers(seed, replicate, z);
    return z;
}

double bootstrap_H(const UpsilonPanel& upsilon, std::span<const double> multipliers, const FilterBank& bank,
                   std::size_t r, std::size_t i, std::size_t j) {
    require(multipliers.size() == upsilon.n, "multiplier count must equal n");
    require(r < upsilon.p, "dimension index out of range");
    const auto ups = upsilon.series(r);
    std::vector<double> x(upsilon.n);
    for (std::size_t k = 0; k < upsilon.n; ++k) {
        x[k] = ups[k] * multipliers[k];
    }
    return bank.apply(x, i, j);
}

BootstrapState::BootstrapState(Inputs inputs, AdmissibleMask mask, std::size_t k0, std::uint64_t seed)
    : in_(std::move(inputs)), mask_(std::move(mask)), k0_(k0), p_(mask_.p()), seed_(seed), maxima_(k0 * p_, 0.0) {
    require(in_.upsilon && in_.variance && in_.banks, "bootstrap inputs must be set");
    require(k0_ >= 2, "K0 must be at least 2");
    require(!mask_.empty(), "admissible mask is empty in every dimension");
    require(in_.upsilon->p == p_ && in_.variance->p() == p_, "bootstrap inputs disagree on dimension count");
    std::vector<std::size_t> all(p_);
    for (std::size_t r = 0; r < p_; ++r) {
        all[r] = r;
    }
    compute_dimensions(all);
}

std::vector<double> BootstrapState::replicate_maxima() const {
    std::vector<double> out(k0_, 0.0);
    for (std::size_t l = 0; l < k0_; ++l) {
        const double* row = maxima_.data() + l * p_;
        out[l] = *std::max_element(row, row + p_);
    }
    return out;
}

void BootstrapState::compute_dimensions(std::span<const std::size_t> dims) {
    const std::size_t n = in_.upsilon->n;
    std::vector<std::vector<std::size_t>> times(dims.size());
    std::vector<std::vector<double>> inv(dims.size());
    for (std::size_t q = 0; q < dims.size(); ++q) {
        times[q] = mask_.indices(dims[q]);
        inv[q] = inverse_sd(*in_.variance, mask_, dims[q]);
    }
    const std::size_t chunks = (k0_ + kChunk - 1) / kChunk;

#pragma omp parallel for schedule(dynamic)
    for (long cc = 0; cc < static_cast<long>(chunks); ++cc) {
        const std::size_t first = static_cast<std::size_t>(cc) * kChunk;
        const std::size_t width = std::min(kChunk, k0_ - first);
        std::vector<double> z(n * kChunk, 0.0);
        std::vector<double> column(n);
        for (std::size_t c = 0; c < width; ++c) {
            fill_multipliers(seed_, first + c, column);
            for (std::size_t k = 0; k < n; ++k) {
                z[k * kChunk + c] = column[k];
            }
        }
        std::array<double, kChunk> best{};
        for (std::size_t q = 0; q < dims.size(); ++q) {
            const std::size_t r = dims[q];
            chunk_maxima(*in_.upsilon, in_.banks->for_dimension(r), times[q], inv[q], r, z, best);
            for (std::size_t c = 0; c < width; ++c) {
                maxima_[(first + c) * p_ + r] = best[c];
            }
        }
    }
}

std::vector<double> BootstrapState::compute_dimension(std::size_t r, const AdmissibleMask& mask) const {
    require(r < p_, "dimension index out of range");
    const std::size_t n = in_.upsilon->n;
    const auto times = mask.indices(r);
    const auto inv = inverse_sd(*in_.variance, mask, r);
    std::vector<double> out(k0_, 0.0);
    std::vector<double> z(n * kChunk, 0.0);
    std::vector<double> column(n);
    std::array<double, kChunk> best{};
    for (std::size_t first = 0; first < k0_; first += kChunk) {
        const std::size_t width = std::min(kChunk, k0_ - first);
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t c = 0; c < width; ++c) {
            fill_multipliers(seed_, first + c, column);
            for (std::size_t k = 0; k < n; ++k) {
                z[k * kChunk + c] = column[k];
            }
        }
        chunk_maxima(*in_.upsilon, in_.banks->for_dimension(r), times, inv, r, z, best);
        std::copy_n(best.begin(), width, out.begin() + static_cast<std::ptrdiff_t>(first));
    }
    return out;
}

std::size_t BootstrapState::shrink(const AdmissibleMask& mask) {
    require(mask.p() == p_ && mask.n() == mask_.n(), "mask shape does not match bootstrap state");
    require(mask.subset_of(mask_), "bootstrap masks may only shrink");
    std::vector<std::size_t> changed;
    for (std::size_t r = 0; r < p_; ++r) {
        if (!mask.same_dimension(mask_, r)) {
            changed.push_back(r);
        }
    }
    if (changed.empty()) {
        return 0;
    }
    mask_ = mask;
    compute_dimensions(changed);
    return changed.size();
}

BootstrapState run_bootstrap(const UpsilonPanel& upsilon, const LocalVarianceField& variance, const FilterBankSet& banks,
                             const AdmissibleMask& mask, std::size_t k0, std::uint64_t seed) {
    BootstrapState::Inputs in{std::make_shared<const UpsilonPanel>(upsilon),
                              std::make_shared<const LocalVarianceField>(variance),
                              std::make_shared<const FilterBankSet>(banks)};
    return BootstrapState(std::move(in), mask, k0, seed);
}

BootstrapState run_bootstrap(BootstrapState::Inputs inputs, const AdmissibleMask& mask, std::size_t k0, std::uint64_t seed) {
    return BootstrapState(std::move(inputs), mask, k0, seed);
}

double upper_order_statistic(std::vector<double> values, double alpha) {
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    require(!values.empty(), "quantile of an empty sample");
    const double k = static_cast<double>(values.size());
    auto rank = static_cast<std::size_t>(std::ceil((1.0 - alpha) * k - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1), values.end());
    return values[rank - 1];
}

double critical_value(BootstrapState& state, double alpha, const AdmissibleMask& mask) {
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    state.shrink(mask);
    return upper_order_statistic(state.replicate_maxima(), alpha);
}

} // namespace ajdn
