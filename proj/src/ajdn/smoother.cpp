#include "ajdn/smoother.hpp"

#include "ajdn/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ajdn {

double rot_bandwidth(std::span<const double> y) {
    const std::size_t L = y.size();
    require(L >= 2, "bandwidth selection needs at least 2 points");
    const double range = static_cast<double>(L - 1);
    if (L < 8) {
        return std::max(1.0, range);
    }
    // Quartic pilot on a standardised abscissa.
    const double centre = range / 2.0;
    const double spread = range / 2.0;
    Eigen::MatrixXd X(static_cast<Eigen::Index>(L), 5);
    Eigen::VectorXd Y(static_cast<Eigen::Index>(L));
    for (std::size_t k = 0; k < L; ++k) {
        const double u = (static_cast<double>(k) - centre) / spread;
        double pw = 1.0;
        for (int q = 0; q < 5; ++q) {
            X(static_cast<Eigen::Index>(k), q) = pw;
            pw *= u;
        }
        Y(static_cast<Eigen::Index>(k)) = y[k];
    }
    const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(Y);
    const double rss = (Y - X * beta).squaredNorm();
    const double sigma2 = rss / static_cast<double>(L - 5);

    // m''(x) = d^2/dx^2 sum beta_q u^q with u = (x - centre)/spread.
    double curvature = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
        const double u = (static_cast<double>(k) - centre) / spread;
        const double m2 = (2.0 * beta(2) + 6.0 * beta(3) * u + 12.0 * beta(4) * u * u) / (spread * spread);
        curvature += m2 * m2;
    }
    if (!(curvature > 0.0) || !(sigma2 > 0.0)) {
        return range;
    }
    const double h = 1.719 * std::pow(sigma2 * range / curvature, 0.2);
    return std::clamp(h, 2.0, range);
}

std::vector<double> local_linear_fit(std::span<const double> y, double bandwidth) {
    const std::size_t L = y.size();
    require(bandwidth > 0.0, "bandwidth must be positive");
    std::vector<double> fit(L, 0.0);
    if (L == 0) {
        return fit;
    }
    if (L <= 2) {
        const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(L);
        std::fill(fit.begin(), fit.end(), mean);
        return fit;
    }
    const long reach = static_cast<long>(std::ceil(bandwidth));
    for (std::size_t k0 = 0; k0 < L; ++k0) {
        const long lo = std::max(0L, static_cast<long>(k0) - reach);
        const long hi = std::min(static_cast<long>(L) - 1, static_cast<long>(k0) + reach);
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, t0 = 0.0, t1 = 0.0;
        for (long k = lo; k <= hi; ++k) {
            const double dx = static_cast<double>(k) - static_cast<double>(k0);
            const double u = dx / bandwidth;
            if (std::fabs(u) >= 1.0) {
                continue;
            }
            const double w = 0.75 * (1.0 - u * u);
            const double v = y[static_cast<std::size_t>(k)];
            s0 += w;
            s1 += w * dx;
            s2 += w * dx * dx;
            t0 += w * v;
            t1 += w * dx * v;
        }
        const double det = s0 * s2 - s1 * s1;
        if (std::fabs(det) > 1e-12 * std::max(1.0, s0 * s2)) {
            fit[k0] = (s2 * t0 - s1 * t1) / det;
        } else {
            fit[k0] = s0 > 0.0 ? t0 / s0 : y[k0];
        }
    }
    return fit;
}

std::vector<double> piecewise_detrend(std::span<const double> series, std::vector<std::size_t> breaks) {
    const std::size_t n = series.size();
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<double> residuals(n, 0.0);
    std::size_t start = 0; // 0-based first index of the current segment
    auto smooth_segment = [&](std::size_t lo, std::size_t hi) { // [lo, hi)
        if (hi <= lo) {
            return;
        }
        const auto seg = series.subspan(lo, hi - lo);
        const auto fit = local_linear_fit(seg, rot_bandwidth(seg.size() >= 2 ? seg : series.subspan(lo, 1)));
        for (std::size_t k = 0; k < seg.size(); ++k) {
            residuals[lo + k] = seg[k] - fit[k];
        }
    };
    for (std::size_t d : breaks) {
        if (d == 0 || d >= n) {
            continue;
        }
        smooth_segment(start, d);
        start = d;
    }
    smooth_segment(start, n);
    return residuals;
}

} // namespace ajdn
