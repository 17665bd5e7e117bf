#include "ajdn/variance.hpp"

#include "ajdn/diagnostics.hpp"
#include "ajdn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ajdn {
namespace {
constexpr double kDegenerateRelative = 1e-15;
} // namespace

WindowIndices variance_windows(std::size_t n, std::size_t i, double s_min, double s_max) {
    const long outer = static_cast<long>(offset_floor(n, s_max));
    const long inner = index_ceil(n, s_min);
    const long ii = static_cast<long>(i);
    const long nn = static_cast<long>(n);
    WindowIndices w{};
    w.left_lo = std::max(1L, ii - outer);
    w.left_hi = std::min(nn, ii - inner);
    w.right_lo = std::max(1L, ii + inner);
    w.right_hi = std::min(nn, ii + outer);
    return w;
}

double local_variance(const Panel& panel, std::size_t r, std::size_t i, double s_min, double s_max) {
    require(r < panel.p(), "dimension index out of range");
    require(i >= 1 && i <= panel.n(), "time index out of range");
    require(s_min > 0.0 && s_min < s_max, "variance windows need 0 < s_min < s_max");
    const auto w = variance_windows(panel.n(), i, s_min, s_max);
    const long left_count = w.left_hi - w.left_lo + 1;
    const long right_count = w.right_hi - w.right_lo + 1;
    if (left_count < 1 || right_count < 1) {
        fail(ErrorKind::Argument, "empty variance window at index " + std::to_string(i));
    }
    if (left_count < 4 || right_count < 4) {
        warn("variance window at index " + std::to_string(i) + " has fewer than 4 points");
    }
    const auto y = panel.series(r);
    double raw_square = 0.0;
    auto block_ss = [&](long lo, long hi) {
        double mean = 0.0;
        for (long k = lo; k <= hi; ++k) {
            mean += y[static_cast<std::size_t>(k - 1)];
        }
        mean /= static_cast<double>(hi - lo + 1);
        double ss = 0.0;
        for (long k = lo; k <= hi; ++k) {
            const double d = y[static_cast<std::size_t>(k - 1)] - mean;
            ss += d * d;
            raw_square += y[static_cast<std::size_t>(k - 1)] * y[static_cast<std::size_t>(k - 1)];
        }
        return ss;
    };
    const double pooled =
        (block_ss(w.left_lo, w.left_hi) + block_ss(w.right_lo, w.right_hi)) / static_cast<double>(left_count + right_count);
    // Rounding leaves a residue of order eps * sum(y^2) for constant windows.
    if (!(pooled > kDegenerateRelative * raw_square / static_cast<double>(left_count + right_count))) {
        fail(ErrorKind::Degenerate, "zero local variance in dimension " + std::to_string(r) + " at index " +
                                        std::to_string(i));
    }
    return pooled;
}

LocalVarianceField compute_variance_field(const Panel& panel, const ScaleGrid& grid) {
    require(grid.p() == panel.p(), "scale grid dimension count does not match panel");
    const std::size_t n = panel.n();
    const std::size_t p = panel.p();
    LocalVarianceField field;
    field.n_ = n;
    field.values_.assign(p, {});
    field.first_.assign(p, 0);
    field.last_.assign(p, 0);
    field.windows_ = grid.dims();

#pragma omp parallel for schedule(dynamic)
    for (long rr = 0; rr < static_cast<long>(p); ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        const auto& dim = grid.dim(r);
        const auto y = panel.series(r);
        auto& out = field.values_[r];
        out.assign(n + 1, std::numeric_limits<double>::quiet_NaN());

        // Centre on the global mean so prefix sums stay well conditioned.
        const double centre = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
        std::vector<long double> s1(n + 1, 0.0L), s2(n + 1, 0.0L);
        for (std::size_t k = 1; k <= n; ++k) {
            const long double v = static_cast<long double>(y[k - 1] - centre);
            s1[k] = s1[k - 1] + v;
            s2[k] = s2[k - 1] + v * v;
        }
        auto block_ss = [&](long lo, long hi) {
            const long double m = static_cast<long double>(hi - lo + 1);
            const long double a = s1[static_cast<std::size_t>(hi)] - s1[static_cast<std::size_t>(lo - 1)];
            const long double b = s2[static_cast<std::size_t>(hi)] - s2[static_cast<std::size_t>(lo - 1)];
            const long double ss = b - a * a / m;
            return ss > static_cast<long double>(kDegenerateRelative) * b ? ss : 0.0L;
        };

        const long first = std::max(1L, index_ceil(n, dim.s_max));
        const long last = std::min(static_cast<long>(n), index_floor(n, 1.0 - dim.s_max));
        field.first_[r] = static_cast<std::size_t>(first);
        field.last_[r] = static_cast<std::size_t>(std::max(first - 1, last));
        for (long i = first; i <= last; ++i) {
            const auto w = variance_windows(n, static_cast<std::size_t>(i), dim.s_min, dim.s_max);
            const long lc = w.left_hi - w.left_lo + 1;
            const long rc = w.right_hi - w.right_lo + 1;
            if (lc < 1 || rc < 1) {
                continue;
            }
            const long double pooled =
                (block_ss(w.left_lo, w.left_hi) + block_ss(w.right_lo, w.right_hi)) / static_cast<long double>(lc + rc);
            out[static_cast<std::size_t>(i)] = static_cast<double>(pooled);
        }
    }

    for (std::size_t r = 0; r < p; ++r) {
        const auto& dim = grid.dim(r);
        const auto w = variance_windows(n, (field.first_[r] + field.last_[r]) / 2, dim.s_min, dim.s_max);
        if (w.left_hi - w.left_lo + 1 < 4 || w.right_hi - w.right_lo + 1 < 4) {
            warn("dimension " + std::to_string(r) + ": variance windows hold fewer than 4 points");
        }
    }
    return field;
}

bool LocalVarianceField::defined(std::size_t r, std::size_t i) const {
    return r < values_.size() && i >= 1 && i <= n_ && !std::isnan(values_[r][i]);
}

double LocalVarianceField::variance(std::size_t r, std::size_t i) const {
    if (!defined(r, i)) {
        fail(ErrorKind::Argument, "local variance undefined for dimension " + std::to_string(r) + " at index " +
                                      std::to_string(i));
    }
    return values_[r][i];
}

double LocalVarianceField::sd(std::size_t r, std::size_t i) const {
    const double v = variance(r, i);
    if (!(v > 0.0)) {
        fail(ErrorKind::Degenerate, "zero local variance in dimension " + std::to_string(r) + " at index " +
                                        std::to_string(i));
    }
    return std::sqrt(v);
}

} // namespace ajdn
