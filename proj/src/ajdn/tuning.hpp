#pragma once

#include "ajdn/detector.hpp"
#include "ajdn/panel.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ajdn {

struct HyperParams {
    double s_min = 0.0;
    double s_max = 0.0;
    double s_prime = 0.0; // block length is ceil(n s')
    double alpha = 0.05;
    std::size_t k0 = 500;
    std::uint64_t seed = 1;

    friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

// Throws Argument unless s_min < s_max and 1 <= n s' <= n s_min.
void validate_hyperparams(const HyperParams& params, std::size_t n);

struct RuleOfThumb {
    double s_min = 0.0;
    double s_max = 0.0;
    double s_prime_max = 0.0;
    double lrv_target = 0.0;
    bool conflict = false; // s_min >= s_max
};

RuleOfThumb rule_of_thumb(std::size_t n, std::size_t p);

// n s'_max rounded to the nearest integer, at least 1.
std::size_t ns_prime_max(std::size_t n);

// gamma_hat(h) = 1/(L - h) sum_{k} (x_k - mean)(x_{k+h} - mean), h = 0..max_lag.
std::vector<double> autocovariances(std::span<const double> segment, std::size_t max_lag);

// Ratio of the truncated long-run variance at lag ns'_max - 1 to the
// Bartlett-weighted one at block length ns'.
double lrv_ratio(std::span<const double> segment, std::size_t ns_prime, std::size_t ns_prime_max);
double lrv_ratio_from_autocov(std::span<const double> gamma, std::size_t ns_prime, std::size_t ns_prime_max);

// ns' whose ratio is closest to the target among the first ns' at or below the
// target and its predecessor; ties to the smaller ns'. Equals the plain argmin
// whenever the ratio is monotone in ns'.
std::size_t select_s_prime(std::span<const double> segment, std::size_t ns_prime_max, double lrv_target);
// Same selection on autocovariances averaged over several segments.
std::size_t select_s_prime_pooled(const std::vector<std::span<const double>>& segments, std::size_t ns_prime_max,
                                  double lrv_target);

struct Segment {
    std::size_t dimension = 0;
    std::size_t lo = 0; // 1-based, inclusive
    std::size_t hi = 0;
    [[nodiscard]] std::size_t length() const { return hi >= lo ? hi - lo + 1 : 0; }
};

// Longest gap per dimension between consecutive jumps (indices are last
// pre-jump points), shrunk by `buffer` on each side adjacent to a jump.
std::vector<Segment> jump_free_segments(std::size_t n, std::size_t p, const std::vector<JumpRecord>& records,
                                        std::size_t buffer);

// GM = sum_r [ n ln(SSE_r / n) + M_r ln n ].
double gm_criterion(std::span<const double> sse, std::span<const std::size_t> jumps, std::size_t n);

// Residual sum of squares per dimension after piecewise local-linear detrending
// between the given jumps (refined locations when present).
std::vector<double> piecewise_sse(const Panel& panel, const std::vector<JumpRecord>& records);

struct CandidateScore {
    HyperParams params;
    bool ok = false;
    std::string error;
    double gm = 0.0;
    std::vector<std::size_t> jumps; // per dimension
    std::vector<double> sse;        // per dimension
};

struct BicSelection {
    HyperParams best;
    std::size_t best_index = 0;
    std::vector<CandidateScore> table;
};

// Runs detection for one candidate. Supplied by the caller so tuning stays
// independent of how scales and refinement are configured.
using CandidateRunner = std::function<std::vector<JumpRecord>(const Panel&, const HyperParams&)>;

// Minimiser of GM over the candidates. Ties: smallest s', then smallest s_min + s_max,
// then candidate order. Throws Argument if every candidate fails.
BicSelection penalized_bic(const Panel& panel, const std::vector<HyperParams>& candidates,
                           const CandidateRunner& runner);

} // namespace ajdn
