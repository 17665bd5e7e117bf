#include "ajdn/pipeline.hpp"

#include "ajdn/diagnostics.hpp"
#include "ajdn/errors.hpp"
#include "ajdn/refine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ajdn {
namespace {

constexpr double kPilotAlpha = 0.2;
constexpr std::size_t kPilotReplicates = 100;

template <class T>
void assign(std::optional<T> v, T& out) {
    if (v) {
        out = *v;
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::size_t to_size(std::optional<long long> v, const char* key) {
    if (v && *v < 0) {
        fail(ErrorKind::Config, std::string("config key '") + key + "' must be nonnegative");
    }
    return static_cast<std::size_t>(v.value_or(0));
}

} // namespace

const std::vector<std::string>& detect_config_keys() {
    static const std::vector<std::string> keys = {
        "scales.s_min",       "scales.s_max",        "scales.delta_n",    "scales.delta_cap",
        "scales.delta_c",     "scales.delta_epsilon", "bootstrap.k0",      "bootstrap.s_prime",
        "bootstrap.seed",     "detect.alpha",        "detect.exclusion_c", "refine.enabled",
        "refine.alpha_tilde", "refine.z_n",          "tune.segment_dim",  "tune.segment_lo",
        "tune.segment_hi",
    };
    return keys;
}

DetectSettings detect_settings_from_config(const ConfigFile& cfg, DetectSettings s) {
    assign(cfg.get_double("scales.s_min"), s.s_min);
    assign(cfg.get_double("scales.s_max"), s.s_max);
    if (auto v = cfg.get_int("scales.delta_n")) {
        s.delta_n = static_cast<int>(*v);
    }
    if (auto v = cfg.get_int("scales.delta_cap")) {
        s.delta_cap = static_cast<int>(*v);
    }
    assign(cfg.get_double("scales.delta_c"), s.delta_c);
    assign(cfg.get_double("scales.delta_epsilon"), s.delta_epsilon);
    if (cfg.has("bootstrap.k0")) {
        s.k0 = to_size(cfg.get_int("bootstrap.k0"), "bootstrap.k0");
    }
    assign(cfg.get_double("bootstrap.s_prime"), s.s_prime);
    assign(cfg.get_uint64("bootstrap.seed"), s.seed);
    assign(cfg.get_double("detect.alpha"), s.alpha);
    assign(cfg.get_double("detect.exclusion_c"), s.exclusion_c);
    assign(cfg.get_bool("refine.enabled"), s.refine);
    assign(cfg.get_double("refine.alpha_tilde"), s.alpha_tilde);
    assign(cfg.get_double("refine.z_n"), s.z_n);
    if (cfg.has("tune.segment_dim")) {
        s.segment_dim = to_size(cfg.get_int("tune.segment_dim"), "tune.segment_dim");
    }
    if (cfg.has("tune.segment_lo")) {
        s.segment_lo = to_size(cfg.get_int("tune.segment_lo"), "tune.segment_lo");
    }
    if (cfg.has("tune.segment_hi")) {
        s.segment_hi = to_size(cfg.get_int("tune.segment_hi"), "tune.segment_hi");
    }
    if (!(s.alpha > 0.0 && s.alpha < 1.0)) {
        fail(ErrorKind::Config, "detect.alpha must lie in (0, 1)");
    }
    if (s.k0 < 2) {
        fail(ErrorKind::Config, "bootstrap.k0 must be at least 2");
    }
    if (s.delta_n != 0 && s.delta_n < 2) {
        fail(ErrorKind::Config, "scales.delta_n must be 0 (auto) or at least 2");
    }
    if (s.delta_cap < 2) {
        fail(ErrorKind::Config, "scales.delta_cap must be at least 2");
    }
    return s;
}

ConfigFile to_config(const HyperParams& params, const DetectSettings& settings) {
    ConfigFile cfg;
    cfg.set("scales.s_min", fmt(params.s_min));
    cfg.set("scales.s_max", fmt(params.s_max));
    cfg.set("scales.delta_n", std::to_string(settings.delta_n));
    cfg.set("scales.delta_cap", std::to_string(settings.delta_cap));
    cfg.set("bootstrap.k0", std::to_string(params.k0));
    cfg.set("bootstrap.s_prime", fmt(params.s_prime));
    cfg.set("bootstrap.seed", std::to_string(params.seed));
    cfg.set("detect.alpha", fmt(params.alpha));
    cfg.set("detect.exclusion_c", fmt(settings.exclusion_c));
    cfg.set("refine.enabled", settings.refine ? "true" : "false");
    cfg.set("refine.alpha_tilde", fmt(settings.alpha_tilde));
    cfg.set("refine.z_n", fmt(settings.z_n));
    return cfg;
}

std::size_t auto_block_length(const Panel& panel, const DetectSettings& settings, double s_min, double s_max,
                              std::string* source) {
    const std::size_t n = panel.n();
    const std::size_t cap = std::max<std::size_t>(1, offset_floor(n, s_min));
    const std::size_t m_max = std::min(ns_prime_max(n), cap);
    const double target = rule_of_thumb(n, panel.p()).lrv_target;
    auto set_source = [&](const char* s) {
        if (source) {
            *source = s;
        }
    };

    std::vector<Segment> segments;
    if (settings.segment_dim || settings.segment_lo || settings.segment_hi) {
        require(settings.segment_dim && settings.segment_lo && settings.segment_hi,
                "manual LRV segment needs dimension, lo and hi");
        const Segment seg{*settings.segment_dim, *settings.segment_lo, *settings.segment_hi};
        require(seg.dimension < panel.p() && seg.lo >= 1 && seg.hi <= n && seg.lo <= seg.hi,
                "manual LRV segment out of range");
        segments.push_back(seg);
    } else {
        // Cheap pilot on the two bounding scales to locate jump-free stretches.
        HyperParams pilot;
        pilot.s_min = s_min;
        pilot.s_max = s_max;
        pilot.s_prime = static_cast<double>(m_max) / static_cast<double>(n);
        pilot.alpha = kPilotAlpha;
        pilot.k0 = std::min(settings.k0, kPilotReplicates);
        pilot.seed = settings.seed;
        DetectSettings pilot_settings = settings;
        pilot_settings.delta_n = 2;
        pilot_settings.refine = true;
        const auto records = detect_with(panel, pilot, pilot_settings);
        segments = jump_free_segments(n, panel.p(), records, offset_floor(n, s_max));
    }

    std::vector<std::span<const double>> usable;
    for (const auto& seg : segments) {
        if (seg.length() >= 4 * m_max) {
            usable.push_back(panel.series(seg.dimension).subspan(seg.lo - 1, seg.length()));
        }
    }
    if (usable.empty()) {
        warn("no jump-free segment long enough for the LRV ratio; using n s' = 1");
        set_source("fallback");
        return 1;
    }
    set_source("lrv");
    return select_s_prime_pooled(usable, m_max, target);
}

ResolvedRun resolve_settings(const Panel& panel, const DetectSettings& settings) {
    require(!panel.empty(), "panel is empty");
    const std::size_t n = panel.n();
    const std::size_t p = panel.p();
    ResolvedRun out;
    if (settings.s_min <= 0.0 || settings.s_max <= 0.0) {
        require(n >= 100, "automatic scales need n >= 100; set scales.s_min and scales.s_max");
        out.rule = rule_of_thumb(n, p);
        if (out.rule.conflict) {
            warn("rule-of-thumb s_min is not below s_max; set the scales explicitly");
        }
    }
    out.params.s_min = settings.s_min > 0.0 ? settings.s_min : out.rule.s_min;
    out.params.s_max = settings.s_max > 0.0 ? settings.s_max : out.rule.s_max;
    out.params.alpha = settings.alpha;
    out.params.k0 = settings.k0;
    out.params.seed = settings.seed;
    if (!(out.params.s_min < out.params.s_max)) {
        fail(ErrorKind::Argument, "s_min must be strictly below s_max");
    }

    const int delta = settings.delta_n > 0
                          ? settings.delta_n
                          : delta_n_default(n, p, settings.delta_c, settings.delta_epsilon, settings.delta_cap);
    out.grid = ScaleGrid::uniform(p, out.params.s_min, out.params.s_max, delta);
    out.scale_report = check_scale_assumptions(out.grid, n);
    for (const auto& w : out.scale_report.warnings) {
        warn(w);
    }
    if (!out.scale_report.ok()) {
        fail(ErrorKind::Argument, "scale grid violates s_max < 0.5");
    }

    if (settings.s_prime > 0.0) {
        out.block = block_length(n, settings.s_prime);
        out.s_prime_source = "config";
    } else {
        out.block = auto_block_length(panel, settings, out.params.s_min, out.params.s_max, &out.s_prime_source);
    }
    out.params.s_prime = static_cast<double>(out.block) / static_cast<double>(n);
    validate_hyperparams(out.params, n);
    return out;
}

std::vector<JumpRecord> detect_with(const Panel& panel, const HyperParams& params, const DetectSettings& settings) {
    validate_hyperparams(params, panel.n());
    const int delta = settings.delta_n > 0 ? settings.delta_n
                                           : delta_n_default(panel.n(), panel.p(), settings.delta_c,
                                                             settings.delta_epsilon, settings.delta_cap);
    const auto grid = ScaleGrid::uniform(panel.p(), params.s_min, params.s_max, delta);
    DetectConfig dc;
    dc.alpha = params.alpha;
    dc.k0 = params.k0;
    dc.block = block_length(panel.n(), params.s_prime);
    dc.seed = params.seed;
    dc.exclusion_c = settings.exclusion_c;
    auto records = detect_jumps(panel, grid, JumpPassFilter::optimal(), dc);
    if (settings.refine) {
        const double z = settings.z_n > 0.0 ? settings.z_n : grid.min_s_min() / 2.0;
        refine_all(panel, records, z, settings.alpha_tilde);
    }
    return records;
}

PipelineResult run_pipeline(const Panel& panel, const DetectSettings& settings) {
    PipelineResult out;
    out.resolved = resolve_settings(panel, settings);
    DetectConfig dc;
    dc.alpha = out.resolved.params.alpha;
    dc.k0 = out.resolved.params.k0;
    dc.block = out.resolved.block;
    dc.seed = out.resolved.params.seed;
    dc.exclusion_c = settings.exclusion_c;
    out.detection = run_detection(panel, out.resolved.grid, JumpPassFilter::optimal(), dc);
    if (settings.refine) {
        const double z = settings.z_n > 0.0 ? settings.z_n : out.resolved.grid.min_s_min() / 2.0;
        refine_all(panel, out.detection.records, z, settings.alpha_tilde);
    }
    return out;
}

const std::vector<std::string>& tune_grid_keys() {
    static const std::vector<std::string> keys = {"tune.s_min", "tune.s_max", "tune.ns_prime"};
    return keys;
}

TuneGrid tune_grid_from_config(const ConfigFile& cfg) {
    TuneGrid g;
    if (auto v = cfg.get_double_list("tune.s_min")) g.s_min = *v;
    if (auto v = cfg.get_double_list("tune.s_max")) g.s_max = *v;
    if (auto v = cfg.get_double_list("tune.ns_prime")) g.ns_prime = *v;
    return g;
}

std::vector<HyperParams> tune_candidates(const TuneGrid& grid, std::size_t n, const DetectSettings& settings) {
    const auto rot = n >= 100 ? rule_of_thumb(n, 1) : RuleOfThumb{};
    const auto s_mins = grid.s_min.empty() ? std::vector<double>{rot.s_min} : grid.s_min;
    const auto s_maxs = grid.s_max.empty() ? std::vector<double>{rot.s_max} : grid.s_max;
    std::vector<double> blocks = grid.ns_prime;
    if (blocks.empty()) {
        for (std::size_t m = 1; m <= ns_prime_max(n); ++m) {
            blocks.push_back(static_cast<double>(m));
        }
    }
    std::vector<HyperParams> out;
    for (double m : blocks) {
        if (m < 1.0 || m != std::floor(m)) {
            fail(ErrorKind::Config, "tune.ns_prime entries must be positive integers");
        }
        for (double lo : s_mins) {
            for (double hi : s_maxs) {
                if (!(lo > 0.0 && lo < hi && hi < 0.5)) {
                    continue;
                }
                if (m > static_cast<double>(n) * lo + kIndexTolerance) {
                    continue;
                }
                HyperParams hp;
                hp.s_min = lo;
                hp.s_max = hi;
                hp.s_prime = m / static_cast<double>(n);
                hp.alpha = settings.alpha;
                hp.k0 = settings.k0;
                hp.seed = settings.seed;
                out.push_back(hp);
            }
        }
    }
    if (out.empty()) {
        fail(ErrorKind::Config, "tuning grid has no valid (s_min, s_max, ns') combination");
    }
    return out;
}

BicSelection run_tuning(const Panel& panel, const TuneGrid& grid, const DetectSettings& settings) {
    const auto candidates = tune_candidates(grid, panel.n(), settings);
    return penalized_bic(panel, candidates, [&](const Panel& y, const HyperParams& hp) {
        return detect_with(y, hp, settings);
    });
}

const std::vector<std::string>& simulate_config_keys() {
    static const std::vector<std::string> keys = {
        "simulate.process", "simulate.n",     "simulate.p",     "simulate.trend",
        "simulate.scenario", "simulate.gamma", "simulate.delta", "simulate.seed",
    };
    return keys;
}

DgpSpec dgp_from_config(const ConfigFile& cfg) {
    DgpSpec spec;
    if (auto v = cfg.get_string("simulate.process")) spec.process = parse_process(*v);
    spec.n = to_size(cfg.get_int("simulate.n"), "simulate.n");
    spec.p = to_size(cfg.get_int("simulate.p"), "simulate.p");
    assign(cfg.get_bool("simulate.trend"), spec.with_trend);
    if (auto v = cfg.get_string("simulate.scenario")) spec.scenario = parse_scenario(*v);
    assign(cfg.get_double("simulate.gamma"), spec.gamma);
    assign(cfg.get_double("simulate.delta"), spec.delta);
    assign(cfg.get_uint64("simulate.seed"), spec.seed);
    if (spec.n < 10 || spec.p < 1) {
        fail(ErrorKind::Config, "simulate.n must be at least 10 and simulate.p at least 1");
    }
    if (spec.scenario != Scenario::None && !(spec.gamma > 0.0 && spec.gamma <= 1.0)) {
        fail(ErrorKind::Config, "simulate.gamma must lie in (0, 1]");
    }
    if (spec.delta < 0.0) {
        fail(ErrorKind::Config, "simulate.delta must be nonnegative");
    }
    return spec;
}

const std::vector<std::string>& bench_config_keys() {
    static const std::vector<std::string> keys = {"bench.runs", "bench.margin"};
    return keys;
}

BenchSpec bench_from_config(const ConfigFile& cfg) {
    BenchSpec spec;
    spec.dgp = dgp_from_config(cfg);
    if (cfg.has("bench.runs")) {
        spec.runs = to_size(cfg.get_int("bench.runs"), "bench.runs");
    }
    spec.margin = cfg.get_double("bench.margin");
    if (spec.runs == 0) {
        fail(ErrorKind::Config, "bench.runs must be positive");
    }
    return spec;
}

BenchResult run_bench(const BenchSpec& spec, const DetectSettings& settings) {
    BenchResult out;
    std::vector<RunScore> scores;
    ScoreOptions opts;
    opts.delta = spec.dgp.delta;
    opts.margin = spec.margin;
    for (std::size_t k = 0; k < spec.runs; ++k) {
        DgpSpec dgp = spec.dgp;
        dgp.seed = spec.dgp.seed + k;
        DetectSettings ds = settings;
        ds.seed = settings.seed + k;
        const auto data = simulate(dgp);
        const auto result = run_pipeline(data.panel, ds);
        BenchRun run;
        run.seed = dgp.seed;
        run.detected = result.detection.records.size();
        if (data.truth.empty() || spec.dgp.delta > 0.0 || spec.margin) {
            run.score = score_run(result.detection.records, data.truth, dgp.n, dgp.p, opts);
        } else {
            run.score.false_positives.resize(run.detected);
            run.score.counted_jumps = run.detected;
        }
        scores.push_back(run.score);
        out.runs.push_back(std::move(run));
    }
    out.summary = aggregate(scores);
    return out;
}

} // namespace ajdn
