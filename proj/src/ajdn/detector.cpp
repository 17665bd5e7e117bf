#include "ajdn/detector.hpp"

#include "ajdn/errors.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <string>

namespace ajdn {

StatisticField statistic_field(const Panel& panel, const FilterBankSet& banks, const LocalVarianceField& variance,
                               const AdmissibleMask& mask) {
    require(mask.n() == panel.n() && mask.p() == panel.p(), "mask shape does not match panel");
    const std::size_t n = panel.n();
    const std::size_t p = panel.p();
    StatisticField field;
    field.n = n;
    field.gmax.assign(p, std::vector<double>(n + 1, std::numeric_limits<double>::quiet_NaN()));
    field.argmax.assign(p, std::vector<std::uint16_t>(n + 1, 0));
    std::vector<std::exception_ptr> errors(p);

#pragma omp parallel for schedule(dynamic)
    for (long rr = 0; rr < static_cast<long>(p); ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        try {
            const auto& bank = banks.for_dimension(r);
            const auto y = panel.series(r);
            for (std::size_t i = 1; i <= n; ++i) {
                if (!mask.allowed(r, i)) {
                    continue;
                }
                const double inv_sd = 1.0 / variance.sd(r, i);
                double best = -1.0;
                std::uint16_t best_j = 0;
                for (std::size_t j = 0; j < bank.scale_count(); ++j) {
                    const double g = std::fabs(bank.apply(y, i, j)) * inv_sd;
                    if (g > best) {
                        best = g;
                        best_j = static_cast<std::uint16_t>(j);
                    }
                }
                field.gmax[r][i] = best;
                field.argmax[r][i] = best_j;
            }
        } catch (...) {
            errors[r] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return field;
}

FieldMaximum field_maximum(const StatisticField& field, const AdmissibleMask& mask) {
    FieldMaximum best;
    // Scan time-major so the first strict improvement keeps the smallest time;
    // at equal time prefer the smaller scale, then the smaller dimension.
    for (std::size_t i = 1; i <= field.n; ++i) {
        for (std::size_t r = 0; r < field.p(); ++r) {
            if (!mask.allowed(r, i)) {
                continue;
            }
            const double g = field.gmax[r][i];
            if (std::isnan(g)) {
                continue;
            }
            const std::size_t j = field.argmax[r][i];
            const bool better = !best.found || g > best.value ||
                                (g == best.value && best.index == i && j < best.scale_index);
            if (better) {
                best = FieldMaximum{true, g, r, i, j};
            }
        }
    }
    return best;
}

Detection run_detection(const Panel& panel, const ScaleGrid& grid, const JumpPassFilter& filter,
                        const DetectConfig& config) {
    require(!panel.empty(), "panel is empty");
    require(grid.p() == panel.p(), "scale grid dimension count does not match panel");
    require(config.alpha > 0.0 && config.alpha < 1.0, "alpha must lie in (0, 1)");
    require(config.k0 >= 2, "K0 must be at least 2");
    require(config.exclusion_c >= 0.0, "exclusion constant c must be nonnegative");
    for (double v : panel.values()) {
        if (!std::isfinite(v)) {
            fail(ErrorKind::Data, "panel contains non-finite values");
        }
    }

    const std::size_t n = panel.n();
    Detection out;
    AdmissibleMask mask = AdmissibleMask::initial(n, grid);
    require(!mask.empty(), "no admissible times: s_max leaves an empty interior");

    auto variance = std::make_shared<const LocalVarianceField>(compute_variance_field(panel, grid));
    auto banks = std::make_shared<const FilterBankSet>(n, grid, filter);
    auto upsilon = std::make_shared<const UpsilonPanel>(build_upsilon_blocks(panel, config.block));

    out.field = statistic_field(panel, *banks, *variance, mask);
    BootstrapState state({upsilon, variance, banks}, mask, config.k0, config.seed);

    for (std::size_t round = 1;; ++round) {
        const auto top = field_maximum(out.field, mask);
        if (!top.found) {
            break;
        }
        const double crit = critical_value(state, config.alpha, mask);
        out.trace.statistic_max.push_back(top.value);
        out.trace.critical.push_back(crit);
        if (top.value < crit) {
            break;
        }
        JumpRecord rec;
        rec.dimension = top.dimension;
        rec.index = top.index;
        rec.time = static_cast<double>(top.index) / static_cast<double>(n);
        rec.scale = banks->for_dimension(top.dimension).scale(top.scale_index);
        rec.statistic = top.value;
        rec.critical_value = crit;
        rec.iteration = round;
        out.records.push_back(rec);
        mask.exclude(top.dimension, top.index, (1.0 + config.exclusion_c) * grid.dim(top.dimension).s_max);
    }
    out.variance = *variance;
    out.final_mask = std::move(mask);
    return out;
}

std::vector<JumpRecord> detect_jumps(const Panel& panel, const ScaleGrid& grid, const JumpPassFilter& filter,
                                     const DetectConfig& config) {
    return run_detection(panel, grid, filter, config).records;
}

} // namespace ajdn
