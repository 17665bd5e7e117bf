// Command-line front end. Talks to the library only through the C interface.

#include "ajdn/ajdn.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

// 0 ok, 1 usage/config, 2 data, 3 numeric/degenerate.
int exit_code(ajdn_status s) {
    switch (s) {
    case AJDN_OK: return 0;
    case AJDN_ERR_ARGUMENT:
    case AJDN_ERR_CONFIG: return 1;
    case AJDN_ERR_DATA:
    case AJDN_ERR_IO: return 2;
    default: return 3;
    }
}

struct Failure {
    ajdn_status status;
};

void check(ajdn_status s) {
    if (s != AJDN_OK) {
        throw Failure{s};
    }
}

template <class T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(ptr); }
    T** out() { return &ptr; }
    T* get() const { return ptr; }
};

using PanelHandle = Handle<ajdn_panel, ajdn_panel_free>;
using ConfigHandle = Handle<ajdn_config, ajdn_config_free>;
using ResultHandle = Handle<ajdn_result, ajdn_result_free>;
using TruthHandle = Handle<ajdn_truth, ajdn_truth_free>;

struct Text {
    char* ptr = nullptr;
    ~Text() { ajdn_string_free(ptr); }
};

// Flag values keyed by configuration key; only flags that were given are applied.
struct Overrides {
    std::map<std::string, std::string> values;

    template <class T>
    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { values[key] = v; }, help + " [" + key + "]");
    }
};

void load_config(ConfigHandle& cfg, const std::string& path, const Overrides& ov) {
    if (path.empty()) {
        check(ajdn_config_create(cfg.out()));
    } else {
        check(ajdn_config_load(path.c_str(), cfg.out()));
    }
    for (const auto& [k, v] : ov.values) {
        check(ajdn_config_set(cfg.get(), k.c_str(), v.c_str()));
    }
}

void add_detect_overrides(CLI::App* app, Overrides& ov) {
    ov.add<double>(app, "--alpha", "detect.alpha", "Significance level");
    ov.add<int>(app, "--k0", "bootstrap.k0", "Bootstrap replicates");
    ov.add<int>(app, "--seed", "bootstrap.seed", "Bootstrap seed");
    ov.add<double>(app, "--s-min", "scales.s_min", "Smallest scale, 0 = rule of thumb");
    ov.add<double>(app, "--s-max", "scales.s_max", "Largest scale, 0 = rule of thumb");
    ov.add<double>(app, "--s-prime", "bootstrap.s_prime", "Block parameter s', 0 = automatic");
    ov.add<int>(app, "--delta-n", "scales.delta_n", "Number of scales, 0 = automatic");
    ov.add<int>(app, "--delta-cap", "scales.delta_cap", "Upper bound on the automatic number of scales");
    ov.add<double>(app, "--exclusion-c", "detect.exclusion_c", "Exclusion window constant c");
    ov.add<double>(app, "--alpha-tilde", "refine.alpha_tilde", "Refinement window parameter");
    ov.add<double>(app, "--z-n", "refine.z_n", "Refinement half-width, 0 = s_min / 2");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiscale detection of asynchronous jumps in high-dimensional time series"};
    app.require_subcommand(1);
    int threads = 0;
    bool quiet = false;
    app.add_option("--threads", threads, "Cap on worker threads (0 = all cores)");
    app.add_flag("-q,--quiet", quiet, "Suppress warnings");
    app.set_version_flag("--version", std::string(ajdn_version()));

    // detect
    auto* detect = app.add_subcommand("detect", "Detect and localise jumps in a CSV panel");
    std::string d_input, d_config, d_output = "jumps.json", d_summary, d_field, d_variance;
    bool d_no_refine = false;
    Overrides d_ov;
    detect->add_option("-i,--input", d_input, "Panel CSV: rows are times, columns dimensions")->required();
    detect->add_option("-c,--config", d_config, "Configuration file");
    detect->add_option("-o,--output", d_output, "Jump records (JSON)");
    detect->add_option("--summary", d_summary, "Per-dimension summary (text)");
    detect->add_option("--dump-field", d_field, "Directory for per-dimension G(t) traces");
    detect->add_option("--dump-variance", d_variance, "CSV of the local standard deviation");
    detect->add_flag("--no-refine", d_no_refine, "Skip CUSUM refinement");
    add_detect_overrides(detect, d_ov);

    // tune
    auto* tune = app.add_subcommand("tune", "Select hyperparameters by penalised BIC");
    std::string t_input, t_grid, t_config, t_output = "best.toml", t_table;
    Overrides t_ov;
    tune->add_option("-i,--input", t_input, "Panel CSV")->required();
    tune->add_option("-g,--grid-spec", t_grid, "Candidate grid ([tune] s_min, s_max, ns_prime lists)");
    tune->add_option("-c,--config", t_config, "Detection settings");
    tune->add_option("-o,--output", t_output, "Selected configuration");
    tune->add_option("--table", t_table, "Per-candidate GM table (CSV); stdout when omitted");
    add_detect_overrides(tune, t_ov);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate a synthetic panel");
    std::string s_spec, s_output = "panel.csv", s_truth;
    Overrides s_ov;
    sim->add_option("-s,--spec", s_spec, "Simulation specification ([simulate] section)");
    sim->add_option("-o,--output", s_output, "Panel CSV");
    sim->add_option("-t,--truth", s_truth, "Ground-truth jumps (JSON)");
    s_ov.add<std::string>(sim, "--process", "simulate.process", "IID, GS, PS, LS or PLS");
    s_ov.add<int>(sim, "--n", "simulate.n", "Series length");
    s_ov.add<int>(sim, "--p", "simulate.p", "Number of dimensions");
    s_ov.add<std::string>(sim, "--trend", "simulate.trend", "Add the smooth trend (true/false)");
    s_ov.add<std::string>(sim, "--scenario", "simulate.scenario", "none, S1 or S2");
    s_ov.add<double>(sim, "--gamma", "simulate.gamma", "Sparsity");
    s_ov.add<double>(sim, "--delta", "simulate.delta", "Jump size in local standard deviations");
    s_ov.add<int>(sim, "--seed", "simulate.seed", "Simulation seed");

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "Score detections against ground truth");
    std::string e_detected, e_truth, e_output;
    double e_delta = 0.0, e_margin = -1.0;
    eval->add_option("-d,--detected", e_detected, "Jump records (JSON)")->required();
    eval->add_option("-t,--truth", e_truth, "Ground truth (JSON)")->required();
    eval->add_option("--delta", e_delta, "Jump size for the matching margin (default: from truth)");
    eval->add_option("--margin", e_margin, "Matching margin as a fraction of the span (overrides Delta)");
    eval->add_option("-o,--output", e_output, "Result JSON; stdout when omitted");

    // bench
    auto* bench = app.add_subcommand("bench", "Monte Carlo loop: simulate, detect, evaluate");
    std::string b_spec, b_output;
    Overrides b_ov;
    bench->add_option("-s,--spec", b_spec, "Experiment specification")->required();
    bench->add_option("-o,--output", b_output, "Per-run table (CSV); stdout when omitted");
    b_ov.add<int>(bench, "--runs", "bench.runs", "Number of Monte Carlo runs");
    add_detect_overrides(bench, b_ov);

    // filter-check
    auto* fcheck = app.add_subcommand("filter-check", "Validate the jump-pass filter by quadrature");
    int f_points = 10000;
    fcheck->add_option("--points", f_points, "Quadrature points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    ajdn_set_threads(threads);
    if (!quiet) {
        ajdn_set_warning_callback([](const char* msg, void*) { std::fprintf(stderr, "warning: %s\n", msg); }, nullptr);
    }

    try {
        if (*detect) {
            if (d_no_refine) {
                d_ov.values["refine.enabled"] = "false";
            }
            ConfigHandle cfg;
            load_config(cfg, d_config, d_ov);
            PanelHandle panel;
            check(ajdn_panel_read_csv(d_input.c_str(), panel.out()));
            ResultHandle result;
            check(ajdn_detect(panel.get(), cfg.get(), result.out()));
            check(ajdn_result_write_jumps(result.get(), d_output.c_str()));
            if (!d_summary.empty()) {
                check(ajdn_result_write_summary(result.get(), d_summary.c_str()));
            }
            if (!d_field.empty()) {
                check(ajdn_result_write_field(result.get(), d_field.c_str()));
            }
            if (!d_variance.empty()) {
                check(ajdn_result_write_variance(result.get(), d_variance.c_str()));
            }
            ajdn_params params{};
            check(ajdn_result_params(result.get(), &params));
            std::fprintf(stderr, "%zu jump(s); seed %llu, block %zu, %d scales in [%.6g, %.6g]\n",
                         ajdn_result_count(result.get()), static_cast<unsigned long long>(params.seed), params.block,
                         params.delta_n, params.s_min, params.s_max);
        } else if (*tune) {
            ConfigHandle cfg;
            load_config(cfg, t_config, t_ov);
            ConfigHandle grid;
            load_config(grid, t_grid, {});
            PanelHandle panel;
            check(ajdn_panel_read_csv(t_input.c_str(), panel.out()));
            ConfigHandle best;
            Text table;
            check(ajdn_tune(panel.get(), cfg.get(), grid.get(), best.out(), &table.ptr));
            check(ajdn_config_write(best.get(), t_output.c_str()));
            if (t_table.empty()) {
                std::fputs(table.ptr, stdout);
            } else {
                FILE* f = std::fopen(t_table.c_str(), "wb");
                if (!f) {
                    std::fprintf(stderr, "error: cannot write '%s'\n", t_table.c_str());
                    return 2;
                }
                std::fputs(table.ptr, f);
                std::fclose(f);
            }
        } else if (*sim) {
            ConfigHandle cfg;
            load_config(cfg, s_spec, s_ov);
            PanelHandle panel;
            TruthHandle truth;
            check(ajdn_simulate(cfg.get(), panel.out(), truth.out()));
            check(ajdn_panel_write_csv(panel.get(), s_output.c_str()));
            if (!s_truth.empty()) {
                check(ajdn_truth_write(truth.get(), s_truth.c_str()));
            }
        } else if (*eval) {
            ajdn_evaluation result{};
            check(ajdn_evaluate_files(e_detected.c_str(), e_truth.c_str(), e_delta, e_margin, &result));
            Text json;
            check(ajdn_evaluation_json(&result, &json.ptr));
            if (e_output.empty()) {
                std::fputs(json.ptr, stdout);
            } else {
                FILE* f = std::fopen(e_output.c_str(), "wb");
                if (!f) {
                    std::fprintf(stderr, "error: cannot write '%s'\n", e_output.c_str());
                    return 2;
                }
                std::fputs(json.ptr, f);
                std::fclose(f);
            }
        } else if (*bench) {
            ConfigHandle cfg;
            load_config(cfg, b_spec, b_ov);
            Text table;
            ajdn_evaluation summary{};
            check(ajdn_bench(cfg.get(), &table.ptr, &summary));
            Text json;
            check(ajdn_evaluation_json(&summary, &json.ptr));
            if (b_output.empty()) {
                std::fputs(table.ptr, stdout);
                std::fputs(json.ptr, stderr);
            } else {
                FILE* f = std::fopen(b_output.c_str(), "wb");
                if (!f) {
                    std::fprintf(stderr, "error: cannot write '%s'\n", b_output.c_str());
                    return 2;
                }
                std::fputs(table.ptr, f);
                std::fclose(f);
                std::fputs(json.ptr, stdout);
            }
        } else if (*fcheck) {
            Text json;
            int ok = 0;
            check(ajdn_filter_check(f_points, &json.ptr, &ok));
            std::fputs(json.ptr, stdout);
            return ok ? 0 : 3;
        }
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s: %s\n", ajdn_status_name(f.status), ajdn_last_error());
        return exit_code(f.status);
    }
    return 0;
}
