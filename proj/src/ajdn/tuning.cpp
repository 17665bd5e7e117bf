#include "ajdn/tuning.hpp"

#include "ajdn/errors.hpp"
#include "ajdn/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ajdn {

void validate_hyperparams(const HyperParams& params, std::size_t n) {
    require(params.s_min > 0.0 && params.s_min < params.s_max, "hyperparameters need 0 < s_min < s_max");
    require(params.alpha > 0.0 && params.alpha < 1.0, "alpha must lie in (0, 1)");
    require(params.k0 >= 2, "K0 must be at least 2");
    const double block = static_cast<double>(n) * params.s_prime;
    require(block >= 1.0 - kIndexTolerance, "n s' must be at least 1");
    require(block <= static_cast<double>(n) * params.s_min + kIndexTolerance, "n s' must not exceed n s_min");
}

RuleOfThumb rule_of_thumb(std::size_t n, std::size_t p) {
    require(n >= 100, "rule of thumb needs n >= 100");
    require(p >= 1, "rule of thumb needs p >= 1");
    const double nd = static_cast<double>(n);
    const double lpn = std::log(static_cast<double>(p) * nd);
    RuleOfThumb out;
    out.s_min = std::pow(nd, -1.0 / 3.0) * lpn * lpn / 120.0;
    out.s_max = std::pow(nd, -1.0 / 6.0) * lpn / 27.0;
    out.s_prime_max = std::pow(nd, -2.0 / 3.0);
    out.lrv_target = 1.0 + 17.0 / (20.0 * std::log(nd));
    out.conflict = out.s_min >= out.s_max;
    return out;
}

std::size_t ns_prime_max(std::size_t n) {
    const double v = std::round(std::cbrt(static_cast<double>(n)));
    return std::max<std::size_t>(1, static_cast<std::size_t>(v));
}

std::vector<double> autocovariances(std::span<const double> segment, std::size_t max_lag) {
    const std::size_t L = segment.size();
    require(L > max_lag, "segment shorter than the requested lag");
    const double mean = std::accumulate(segment.begin(), segment.end(), 0.0) / static_cast<double>(L);
    std::vector<double> centred(L);
    for (std::size_t k = 0; k < L; ++k) {
        centred[k] = segment[k] - mean;
    }
    std::vector<double> gamma(max_lag + 1, 0.0);
    for (std::size_t h = 0; h <= max_lag; ++h) {
        double acc = 0.0;
        for (std::size_t k = 0; k + h < L; ++k) {
            acc += centred[k] * centred[k + h];
        }
        gamma[h] = acc / static_cast<double>(L - h);
    }
    return gamma;
}

double lrv_ratio_from_autocov(std::span<const double> gamma, std::size_t ns_prime, std::size_t ns_prime_max) {
    require(ns_prime >= 1 && ns_prime <= ns_prime_max, "ns' must lie in [1, ns'_max]");
    require(gamma.size() >= ns_prime_max, "not enough autocovariances");
    double num = gamma[0];
    for (std::size_t j = 1; j < ns_prime_max; ++j) {
        num += 2.0 * gamma[j];
    }
    double den = gamma[0];
    const double m = static_cast<double>(ns_prime);
    for (std::size_t h = 1; h < ns_prime; ++h) {
        den += 2.0 * (m - static_cast<double>(h)) / m * gamma[h];
    }
    if (!(den > 0.0)) {
        fail(ErrorKind::Numeric, "LRV ratio denominator is not positive");
    }
    return num / den;
}

namespace {

void require_segment(std::size_t length, std::size_t ns_prime_max) {
    require(ns_prime_max >= 1, "ns'_max must be at least 1");
    require(length >= 4 * ns_prime_max, "LRV segment must hold at least 4 ns'_max observations");
}

std::size_t closest_to_target(std::span<const double> gamma, std::size_t ns_prime_max, double target) {
    // The population ratio is nonincreasing in ns', so only the first crossing
    // of the target and its predecessor are candidates. Beyond the crossing the
    // sample ratio is flat up to noise and must not attract the choice.
    std::size_t cross = ns_prime_max;
    for (std::size_t m = 1; m <= ns_prime_max; ++m) {
        if (lrv_ratio_from_autocov(gamma, m, ns_prime_max) <= target) {
            cross = m;
            break;
        }
    }
    if (cross == 1) {
        return 1;
    }
    const double above = std::fabs(lrv_ratio_from_autocov(gamma, cross - 1, ns_prime_max) - target);
    const double below = std::fabs(lrv_ratio_from_autocov(gamma, cross, ns_prime_max) - target);
    return above <= below ? cross - 1 : cross;
}

} // namespace

double lrv_ratio(std::span<const double> segment, std::size_t ns_prime, std::size_t ns_prime_max) {
    require_segment(segment.size(), ns_prime_max);
    const auto gamma = autocovariances(segment, ns_prime_max - 1);
    return lrv_ratio_from_autocov(gamma, ns_prime, ns_prime_max);
}

std::size_t select_s_prime(std::span<const double> segment, std::size_t ns_prime_max, double lrv_target) {
    require_segment(segment.size(), ns_prime_max);
    return closest_to_target(autocovariances(segment, ns_prime_max - 1), ns_prime_max, lrv_target);
}

std::size_t select_s_prime_pooled(const std::vector<std::span<const double>>& segments, std::size_t ns_prime_max,
                                  double lrv_target) {
    require(!segments.empty(), "no segments for s' selection");
    std::vector<double> pooled(ns_prime_max, 0.0);
    double weight = 0.0;
    for (const auto& seg : segments) {
        require_segment(seg.size(), ns_prime_max);
        const auto gamma = autocovariances(seg, ns_prime_max - 1);
        const double w = static_cast<double>(seg.size());
        for (std::size_t h = 0; h < ns_prime_max; ++h) {
            pooled[h] += w * gamma[h];
        }
        weight += w;
    }
    for (auto& g : pooled) {
        g /= weight;
    }
    return closest_to_target(pooled, ns_prime_max, lrv_target);
}

std::vector<Segment> jump_free_segments(std::size_t n, std::size_t p, const std::vector<JumpRecord>& records,
                                        std::size_t buffer) {
    std::vector<std::vector<std::size_t>> breaks(p);
    for (const auto& rec : records) {
        require(rec.dimension < p, "jump record dimension out of range");
        breaks[rec.dimension].push_back(rec.refined_index.value_or(rec.index));
    }
    std::vector<Segment> out;
    out.reserve(p);
    for (std::size_t r = 0; r < p; ++r) {
        auto& b = breaks[r];
        std::sort(b.begin(), b.end());
        Segment best{r, 1, 0};
        long lo = 1;
        bool after_jump = false;
        auto consider = [&](long hi_raw, bool before_jump) {
            const long lo_eff = lo + (after_jump ? static_cast<long>(buffer) : 0L);
            const long hi_eff = hi_raw - (before_jump ? static_cast<long>(buffer) : 0L);
            if (hi_eff >= lo_eff) {
                const Segment cand{r, static_cast<std::size_t>(lo_eff), static_cast<std::size_t>(hi_eff)};
                if (cand.length() > best.length()) {
                    best = cand;
                }
            }
        };
        for (std::size_t d : b) {
            consider(static_cast<long>(d), true);
            lo = static_cast<long>(d) + 1;
            after_jump = true;
        }
        consider(static_cast<long>(n), false);
        out.push_back(best);
    }
    return out;
}

double gm_criterion(std::span<const double> sse, std::span<const std::size_t> jumps, std::size_t n) {
    require(sse.size() == jumps.size(), "SSE and jump counts differ in length");
    const double nd = static_cast<double>(n);
    const double ln_n = std::log(nd);
    double gm = 0.0;
    for (std::size_t r = 0; r < sse.size(); ++r) {
        if (!(sse[r] > 0.0)) {
            fail(ErrorKind::Numeric, "zero residual sum of squares in GM criterion");
        }
        gm += nd * std::log(sse[r] / nd) + static_cast<double>(jumps[r]) * ln_n;
    }
    return gm;
}

std::vector<double> piecewise_sse(const Panel& panel, const std::vector<JumpRecord>& records) {
    std::vector<std::vector<std::size_t>> breaks(panel.p());
    for (const auto& rec : records) {
        breaks.at(rec.dimension).push_back(rec.refined_index.value_or(rec.index));
    }
    std::vector<double> sse(panel.p(), 0.0);
    for (std::size_t r = 0; r < panel.p(); ++r) {
        const auto res = piecewise_detrend(panel.series(r), breaks[r]);
        sse[r] = std::inner_product(res.begin(), res.end(), res.begin(), 0.0);
    }
    return sse;
}

BicSelection penalized_bic(const Panel& panel, const std::vector<HyperParams>& candidates,
                           const CandidateRunner& runner) {
    require(!candidates.empty(), "penalized BIC needs at least one candidate");
    BicSelection out;
    out.table.reserve(candidates.size());
    bool any = false;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        CandidateScore score;
        score.params = candidates[c];
        try {
            const auto records = runner(panel, candidates[c]);
            score.jumps.assign(panel.p(), 0);
            for (const auto& rec : records) {
                ++score.jumps.at(rec.dimension);
            }
            score.sse = piecewise_sse(panel, records);
            score.gm = gm_criterion(score.sse, score.jumps, panel.n());
            score.ok = true;
        } catch (const Error& e) {
            score.error = e.what();
        }
        if (score.ok) {
            const auto better = [&](const CandidateScore& a, const CandidateScore& b) {
                if (a.gm != b.gm) {
                    return a.gm < b.gm;
                }
                if (a.params.s_prime != b.params.s_prime) {
                    return a.params.s_prime < b.params.s_prime;
                }
                return a.params.s_min + a.params.s_max < b.params.s_min + b.params.s_max;
            };
            if (!any || better(score, out.table[out.best_index])) {
                out.best_index = c;
                out.best = score.params;
            }
            any = true;
        }
        out.table.push_back(std::move(score));
    }
    if (!any) {
        fail(ErrorKind::Argument, "every tuning candidate failed: " + out.table.front().error);
    }
    return out;
}

} // namespace ajdn
