#include "ajdn/evaluate.hpp"

#include "ajdn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ajdn {

double matching_margin(std::size_t n, std::size_t p, double delta) {
    require(delta > 0.0, "matching margin needs Delta > 0");
    const double nd = static_cast<double>(n);
    return std::log(nd) * std::log(static_cast<double>(p)) / (2.0 * nd * delta * delta);
}

RunScore score_run(const std::vector<JumpRecord>& detected, const std::vector<GroundTruthJump>& truth, std::size_t n,
                   std::size_t p, const ScoreOptions& options) {
    RunScore out;
    const double nd = static_cast<double>(n);
    std::vector<double> margins(truth.size(), 0.0);
    for (std::size_t k = 0; k < truth.size(); ++k) {
        if (options.margin) {
            margins[k] = *options.margin;
        } else {
            const double d = truth[k].delta > 0.0 ? truth[k].delta : options.delta;
            margins[k] = matching_margin(n, p, d);
        }
    }
    out.margin = options.margin ? *options.margin : (margins.empty() ? 0.0 : margins.front());

    std::vector<bool> taken(truth.size(), false);
    for (std::size_t a = 0; a < detected.size(); ++a) {
        const auto& rec = detected[a];
        const std::size_t idx = options.use_refined ? rec.refined_index.value_or(rec.index) : rec.index;
        const double t_hat = static_cast<double>(idx) / nd;
        std::size_t best = truth.size();
        double best_gap = 0.0;
        for (std::size_t k = 0; k < truth.size(); ++k) {
            if (taken[k] || truth[k].dimension != rec.dimension) {
                continue;
            }
            const double gap = std::fabs(t_hat - static_cast<double>(truth[k].index) / nd);
            if (gap > margins[k] + kIndexTolerance / nd) {
                continue;
            }
            const bool earlier = best < truth.size() && gap == best_gap && truth[k].index < truth[best].index;
            if (best == truth.size() || gap < best_gap || earlier) {
                best = k;
                best_gap = gap;
            }
        }
        if (best == truth.size()) {
            out.false_positives.push_back(a);
            continue;
        }
        taken[best] = true;
        const double err = std::fabs(static_cast<double>(idx) - static_cast<double>(truth[best].index));
        out.matches.push_back({a, best, err});
    }
    for (std::size_t k = 0; k < truth.size(); ++k) {
        if (!taken[k]) {
            out.missed.push_back(k);
        }
    }
    std::set<std::size_t> matched_times;
    for (const auto& m : out.matches) {
        matched_times.insert(truth[m.truth].index);
    }
    out.counted_jumps = matched_times.size() + out.false_positives.size();
    out.exact_recovery = out.missed.empty() && out.false_positives.empty();
    if (!out.matches.empty()) {
        double sum = 0.0;
        for (const auto& m : out.matches) {
            sum += m.abs_error;
        }
        out.mad = sum / static_cast<double>(out.matches.size());
    }
    return out;
}

EvaluationResult aggregate(const std::vector<RunScore>& runs) {
    EvaluationResult out;
    out.runs = runs.size();
    if (runs.empty()) {
        return out;
    }
    double counted = 0.0;
    double exact = 0.0;
    double mad_sum = 0.0;
    for (const auto& run : runs) {
        counted += static_cast<double>(run.counted_jumps);
        exact += run.exact_recovery ? 1.0 : 0.0;
        if (run.mad) {
            mad_sum += *run.mad;
            ++out.runs_with_match;
        }
        if (!run.matches.empty() || !run.false_positives.empty()) {
            ++out.runs_with_detection;
        }
    }
    const double R = static_cast<double>(runs.size());
    out.m_bar = counted / R;
    out.m_hat_p = exact / R;
    out.mad = out.runs_with_match > 0 ? mad_sum / static_cast<double>(out.runs_with_match) : 0.0;
    out.margin = runs.front().margin;
    return out;
}

EvaluationResult match_and_score(const std::vector<JumpRecord>& detected, const std::vector<GroundTruthJump>& truth,
                                 std::size_t n, std::size_t p, const ScoreOptions& options) {
    return aggregate({score_run(detected, truth, n, p, options)});
}

} // namespace ajdn
