#include "ajdn/refine.hpp"

#include "ajdn/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ajdn {
namespace {

struct IndexRange {
    long lo;
    long hi;
    [[nodiscard]] long size() const { return hi - lo + 1; }
};

// lambda([a, b]) = {i : i/n in [a, b]}, after clamping [a, b] to [1/n, 1].
IndexRange lambda(std::size_t n, double a, double b) {
    const double nd = static_cast<double>(n);
    a = std::clamp(a, 1.0 / nd, 1.0);
    b = std::clamp(b, 1.0 / nd, 1.0);
    return {std::max(1L, index_ceil(n, a)), std::min(static_cast<long>(n), index_floor(n, b))};
}

} // namespace

CusumProfile cusum_profile(std::span<const double> series, const CusumWindow& window) {
    const std::size_t n = series.size();
    require(window.z_n > 0.0, "z_n must be positive");
    require(window.alpha_tilde > -1.0, "alpha_tilde must exceed -1");
    const auto wide = lambda(n, window.wide_lo(), window.wide_hi());
    const auto narrow = lambda(n, window.narrow_lo(), window.narrow_hi());
    require(wide.size() >= 3, "CUSUM wide window holds fewer than 3 observations");
    require(narrow.size() >= 1 && narrow.lo >= wide.lo && narrow.hi <= wide.hi, "CUSUM narrow window is empty");

    double total = 0.0;
    for (long k = wide.lo; k <= wide.hi; ++k) {
        total += series[static_cast<std::size_t>(k - 1)];
    }
    const double wide_count = static_cast<double>(wide.size());

    CusumProfile profile;
    double partial = 0.0;
    for (long t = wide.lo; t <= narrow.hi; ++t) {
        partial += series[static_cast<std::size_t>(t - 1)];
        if (t < narrow.lo) {
            continue;
        }
        const double count = static_cast<double>(t - wide.lo + 1);
        profile.indices.push_back(static_cast<std::size_t>(t));
        profile.values.push_back(partial - count / wide_count * total);
    }
    return profile;
}

std::size_t refine_jump(const Panel& panel, std::size_t r, const CusumWindow& window) {
    const auto profile = cusum_profile(panel.series(r), window);
    std::size_t best = 0;
    for (std::size_t k = 1; k < profile.values.size(); ++k) {
        if (std::fabs(profile.values[k]) > std::fabs(profile.values[best])) {
            best = k;
        }
    }
    return profile.indices[best];
}

void refine_all(const Panel& panel, std::vector<JumpRecord>& records, double z_n, double alpha_tilde) {
    const double n = static_cast<double>(panel.n());
    for (auto& rec : records) {
        const CusumWindow window{rec.time, z_n, alpha_tilde};
        const auto idx = refine_jump(panel, rec.dimension, window);
        rec.refined_index = idx;
        rec.refined_time = static_cast<double>(idx) / n;
    }
}

} // namespace ajdn
