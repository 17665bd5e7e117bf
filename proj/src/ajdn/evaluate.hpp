#pragma once

#include "ajdn/detector.hpp"
#include "ajdn/simulate.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ajdn {

// Matching radius ln n ln p / (2 n Delta^2) on the fractional time scale.
double matching_margin(std::size_t n, std::size_t p, double delta);

struct ScoreOptions {
    double delta = 0.0;                 // used for truths whose own delta is zero
    std::optional<double> margin;       // overrides the computed radius
    bool use_refined = true;            // compare refined locations when present
};

struct Match {
    std::size_t detection = 0; // index into the detection list
    std::size_t truth = 0;     // index into the truth list
    double abs_error = 0.0;    // |d_hat - d| in grid points
};

struct RunScore {
    std::vector<Match> matches;
    std::vector<std::size_t> false_positives; // detection indices
    std::vector<std::size_t> missed;          // truth indices
    std::size_t counted_jumps = 0;            // AJDN counting rule
    bool exact_recovery = false;
    std::optional<double> mad; // mean abs error over matches, grid points
    double margin = 0.0;       // radius used for the first truth (or the override)
};

// A detection matches a truth in the same dimension within that truth's margin;
// the nearest truth wins, ties to the earlier. Each truth absorbs at most one
// detection. Matched detections sharing one true time count once.
RunScore score_run(const std::vector<JumpRecord>& detected, const std::vector<GroundTruthJump>& truth, std::size_t n,
                   std::size_t p, const ScoreOptions& options);

struct EvaluationResult {
    double m_bar = 0.0;
    double m_hat_p = 0.0;
    double mad = 0.0; // over runs with at least one match; 0 when there are none
    double margin = 0.0;
    std::size_t runs = 0;
    std::size_t runs_with_match = 0;
    std::size_t runs_with_detection = 0; // type-I numerator when truth is empty
};

EvaluationResult aggregate(const std::vector<RunScore>& runs);

EvaluationResult match_and_score(const std::vector<JumpRecord>& detected, const std::vector<GroundTruthJump>& truth,
                                 std::size_t n, std::size_t p, const ScoreOptions& options);

} // namespace ajdn
