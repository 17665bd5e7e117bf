#pragma once

#include "ajdn/config.hpp"
#include "ajdn/detector.hpp"
#include "ajdn/evaluate.hpp"
#include "ajdn/filter.hpp"
#include "ajdn/scales.hpp"
#include "ajdn/simulate.hpp"
#include "ajdn/tuning.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ajdn {

// Everything a detection run needs. Zero-valued scale / block fields mean "auto".
struct DetectSettings {
    double s_min = 0.0;
    double s_max = 0.0;
    int delta_n = 0;
    double delta_c = 1e-3;
    double delta_epsilon = 0.51;
    int delta_cap = 40;

    std::size_t k0 = 500;
    double s_prime = 0.0;
    std::uint64_t seed = 1;

    double alpha = 0.05;
    double exclusion_c = 0.01;

    bool refine = true;
    double alpha_tilde = -0.5;
    double z_n = 0.0;

    // Manual jump-free segment for automatic s' (1-based, inclusive); unset = pilot.
    std::optional<std::size_t> segment_dim;
    std::optional<std::size_t> segment_lo;
    std::optional<std::size_t> segment_hi;
};

// Keys accepted in configuration files for detection settings.
const std::vector<std::string>& detect_config_keys();
// Reads [scales], [bootstrap], [detect], [refine] and [tune] keys over `base`.
DetectSettings detect_settings_from_config(const ConfigFile& cfg, DetectSettings base = {});
// Inverse of detect_settings_from_config for resolved values.
ConfigFile to_config(const HyperParams& params, const DetectSettings& settings);

struct ResolvedRun {
    HyperParams params;
    ScaleGrid grid;
    std::size_t block = 1;
    std::string s_prime_source; // "config", "lrv" or "fallback"
    RuleOfThumb rule;
    ValidationReport scale_report;
};

// Fills in automatic scales (rule of thumb), delta_n and s' (LRV ratio on
// jump-free segments from a pilot detection).
ResolvedRun resolve_settings(const Panel& panel, const DetectSettings& settings);

struct PipelineResult {
    ResolvedRun resolved;
    Detection detection;
};

PipelineResult run_pipeline(const Panel& panel, const DetectSettings& settings);

// Detection records only, using explicit hyperparameters with the other settings.
std::vector<JumpRecord> detect_with(const Panel& panel, const HyperParams& params, const DetectSettings& settings);

// Automatic s' alone: ns' in [1, ns'_max], capped at floor(n s_min).
std::size_t auto_block_length(const Panel& panel, const DetectSettings& settings, double s_min, double s_max,
                              std::string* source = nullptr);

struct TuneGrid {
    std::vector<double> s_min;
    std::vector<double> s_max;
    std::vector<double> ns_prime; // block lengths in grid points
};

const std::vector<std::string>& tune_grid_keys();
TuneGrid tune_grid_from_config(const ConfigFile& cfg);
// Cartesian product, dropping pairs with s_min >= s_max or n s' > n s_min.
std::vector<HyperParams> tune_candidates(const TuneGrid& grid, std::size_t n, const DetectSettings& settings);
BicSelection run_tuning(const Panel& panel, const TuneGrid& grid, const DetectSettings& settings);

const std::vector<std::string>& simulate_config_keys();
DgpSpec dgp_from_config(const ConfigFile& cfg);

struct BenchSpec {
    DgpSpec dgp;
    std::size_t runs = 10;
    std::optional<double> margin;
};

struct BenchRun {
    std::uint64_t seed = 0;
    std::size_t detected = 0;
    RunScore score;
};

struct BenchResult {
    std::vector<BenchRun> runs;
    EvaluationResult summary;
};

const std::vector<std::string>& bench_config_keys();
BenchSpec bench_from_config(const ConfigFile& cfg);
// Run k uses simulation seed dgp.seed + k and bootstrap seed settings.seed + k.
BenchResult run_bench(const BenchSpec& spec, const DetectSettings& settings);

} // namespace ajdn
