#pragma once

#include "ajdn/bootstrap.hpp"
#include "ajdn/filter.hpp"
#include "ajdn/filter_bank.hpp"
#include "ajdn/mask.hpp"
#include "ajdn/panel.hpp"
#include "ajdn/scales.hpp"
#include "ajdn/variance.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ajdn {

struct JumpRecord {
    std::size_t dimension = 0;
    std::size_t index = 0; // 1-based grid index; time = index / n
    double time = 0.0;
    double scale = 0.0;
    double statistic = 0.0;
    double critical_value = 0.0;
    std::size_t iteration = 0; // 1-based detection round
    std::optional<std::size_t> refined_index;
    std::optional<double> refined_time;

    friend bool operator==(const JumpRecord&, const JumpRecord&) = default;
};

// Max over scales of G(t_i, s_{r,j}, r) = |H| / sigma at every time of the mask
// it was computed on. Scale ties go to the smallest scale.
struct StatisticField {
    std::size_t n = 0;
    std::vector<std::vector<double>> gmax;          // [r][i], NaN where not computed
    std::vector<std::vector<std::uint16_t>> argmax; // [r][i] scale index

    [[nodiscard]] std::size_t p() const noexcept { return gmax.size(); }
};

StatisticField statistic_field(const Panel& panel, const FilterBankSet& banks, const LocalVarianceField& variance,
                               const AdmissibleMask& mask);

struct FieldMaximum {
    bool found = false;
    double value = 0.0;
    std::size_t dimension = 0;
    std::size_t index = 0;
    std::size_t scale_index = 0;
};

// Maximum over the mask. Ties: smallest time, then smallest scale, then smallest dimension.
FieldMaximum field_maximum(const StatisticField& field, const AdmissibleMask& mask);

struct DetectConfig {
    double alpha = 0.05;
    std::size_t k0 = 500;
    std::size_t block = 1; // n s'
    std::uint64_t seed = 1;
    double exclusion_c = 0.01;
};

struct DetectionTrace {
    std::vector<double> statistic_max; // G_max(T^(a)) per round, including the final failing round
    std::vector<double> critical;      // crit(T^(a)) per round
};

struct Detection {
    std::vector<JumpRecord> records;
    StatisticField field;
    LocalVarianceField variance;
    AdmissibleMask final_mask;
    DetectionTrace trace;
};

// First-stage iterative detection. Records come back in detection order.
Detection run_detection(const Panel& panel, const ScaleGrid& grid, const JumpPassFilter& filter,
                        const DetectConfig& config);

std::vector<JumpRecord> detect_jumps(const Panel& panel, const ScaleGrid& grid, const JumpPassFilter& filter,
                                     const DetectConfig& config);

} // namespace ajdn
