#include "ajdn/ajdn.h"

#include "ajdn/config.hpp"
#include "ajdn/diagnostics.hpp"
#include "ajdn/errors.hpp"
#include "ajdn/filter.hpp"
#include "ajdn/io.hpp"
#include "ajdn/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <mutex>
#include <new>
#include <string>

struct ajdn_panel {
    ajdn::Panel panel;
};

struct ajdn_config {
    ajdn::ConfigFile file;
};

struct ajdn_result {
    ajdn::PipelineResult run;
    ajdn::JumpsDocument doc;
};

struct ajdn_truth {
    ajdn::TruthDocument doc;
};

namespace {

thread_local std::string g_last_error;

ajdn_status status_for(ajdn::ErrorKind kind) {
    switch (kind) {
    case ajdn::ErrorKind::Argument: return AJDN_ERR_ARGUMENT;
    case ajdn::ErrorKind::Config: return AJDN_ERR_CONFIG;
    case ajdn::ErrorKind::Data: return AJDN_ERR_DATA;
    case ajdn::ErrorKind::Degenerate: return AJDN_ERR_DEGENERATE;
    case ajdn::ErrorKind::Numeric: return AJDN_ERR_NUMERIC;
    case ajdn::ErrorKind::Io: return AJDN_ERR_IO;
    }
    return AJDN_ERR_INTERNAL;
}

template <class F>
ajdn_status guarded(F&& body) {
    try {
        body();
        return AJDN_OK;
    } catch (const ajdn::Error& e) {
        g_last_error = e.what();
        return status_for(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return AJDN_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AJDN_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return AJDN_ERR_INTERNAL;
    }
}

void need(const void* ptr, const char* what) {
    if (!ptr) {
        ajdn::fail(ajdn::ErrorKind::Argument, std::string(what) + " must not be NULL");
    }
}

char* duplicate(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<std::string> all_config_keys() {
    std::vector<std::string> keys;
    for (const auto* list : {&ajdn::detect_config_keys(), &ajdn::simulate_config_keys(), &ajdn::bench_config_keys(),
                             &ajdn::tune_grid_keys()}) {
        keys.insert(keys.end(), list->begin(), list->end());
    }
    return keys;
}

ajdn::ConfigFile checked(const ajdn_config* config) {
    if (!config) {
        return {};
    }
    config->file.reject_unknown(all_config_keys());
    return config->file;
}

ajdn_evaluation to_c(const ajdn::EvaluationResult& r) {
    return {r.m_bar, r.m_hat_p, r.mad, r.margin, r.runs, r.runs_with_match, r.runs_with_detection};
}

ajdn::EvaluationResult from_c(const ajdn_evaluation& e) {
    ajdn::EvaluationResult r;
    r.m_bar = e.m_bar;
    r.m_hat_p = e.m_hat_p;
    r.mad = e.mad;
    r.margin = e.margin;
    r.runs = e.runs;
    r.runs_with_match = e.runs_with_match;
    r.runs_with_detection = e.runs_with_detection;
    return r;
}

struct WarningState {
    std::mutex mutex;
    ajdn_warning_fn fn = nullptr;
    void* user = nullptr;
};

WarningState& warning_state() {
    static WarningState s;
    return s;
}

} // namespace

extern "C" {

const char* ajdn_version(void) { return "1.0.0"; }

const char* ajdn_last_error(void) { return g_last_error.c_str(); }

const char* ajdn_status_name(ajdn_status status) {
    switch (status) {
    case AJDN_OK: return "ok";
    case AJDN_ERR_ARGUMENT: return "argument error";
    case AJDN_ERR_CONFIG: return "configuration error";
    case AJDN_ERR_DATA: return "data error";
    case AJDN_ERR_DEGENERATE: return "degenerate input";
    case AJDN_ERR_NUMERIC: return "numeric error";
    case AJDN_ERR_IO: return "i/o error";
    case AJDN_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void ajdn_string_free(char* s) { std::free(s); }

void ajdn_set_threads(int threads) { ajdn::set_thread_limit(threads); }

void ajdn_set_warning_callback(ajdn_warning_fn fn, void* user) {
    auto& state = warning_state();
    {
        std::lock_guard lock(state.mutex);
        state.fn = fn;
        state.user = user;
    }
    if (!fn) {
        ajdn::set_warning_sink(nullptr);
        return;
    }
    ajdn::set_warning_sink([](const std::string& msg) {
        auto& s = warning_state();
        std::lock_guard lock(s.mutex);
        if (s.fn) {
            s.fn(msg.c_str(), s.user);
        }
    });
}

ajdn_status ajdn_panel_create(size_t n, size_t p, const double* row_major, ajdn_panel** out) {
    return guarded([&] {
        need(out, "out");
        need(row_major, "row_major");
        ajdn::require(n > 0 && p > 0, "panel needs n > 0 and p > 0");
        for (size_t k = 0; k < n * p; ++k) {
            if (!std::isfinite(row_major[k])) {
                ajdn::fail(ajdn::ErrorKind::Data, "non-finite value at row " + std::to_string(k / p + 1) + ", column " +
                                                      std::to_string(k % p + 1));
            }
        }
        *out = new ajdn_panel{ajdn::Panel::from_rows(n, p, {row_major, n * p})};
    });
}

ajdn_status ajdn_panel_read_csv(const char* path, ajdn_panel** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new ajdn_panel{ajdn::read_csv_panel(path)};
    });
}

ajdn_status ajdn_panel_write_csv(const ajdn_panel* panel, const char* path) {
    return guarded([&] {
        need(panel, "panel");
        need(path, "path");
        ajdn::write_csv_panel(path, panel->panel);
    });
}

size_t ajdn_panel_n(const ajdn_panel* panel) { return panel ? panel->panel.n() : 0; }

size_t ajdn_panel_p(const ajdn_panel* panel) { return panel ? panel->panel.p() : 0; }

ajdn_status ajdn_panel_get(const ajdn_panel* panel, size_t r, size_t i, double* value) {
    return guarded([&] {
        need(panel, "panel");
        need(value, "value");
        ajdn::require(r < panel->panel.p() && i >= 1 && i <= panel->panel.n(), "panel index out of range");
        *value = panel->panel.at(r, i);
    });
}

ajdn_status ajdn_panel_scale_dimension(const ajdn_panel* panel, size_t r, double factor, ajdn_panel** out) {
    return guarded([&] {
        need(panel, "panel");
        need(out, "out");
        *out = new ajdn_panel{panel->panel.scaled_dimension(r, factor)};
    });
}

ajdn_status ajdn_panel_permute(const ajdn_panel* panel, const size_t* order, ajdn_panel** out) {
    return guarded([&] {
        need(panel, "panel");
        need(order, "order");
        need(out, "out");
        *out = new ajdn_panel{panel->panel.permuted({order, panel->panel.p()})};
    });
}

void ajdn_panel_free(ajdn_panel* panel) { delete panel; }

ajdn_status ajdn_config_create(ajdn_config** out) {
    return guarded([&] {
        need(out, "out");
        *out = new ajdn_config{};
    });
}

ajdn_status ajdn_config_load(const char* path, ajdn_config** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new ajdn_config{ajdn::ConfigFile::load(path)};
    });
}

ajdn_status ajdn_config_set(ajdn_config* config, const char* key, const char* value) {
    return guarded([&] {
        need(config, "config");
        need(key, "key");
        need(value, "value");
        const std::string k(key);
        const auto keys = all_config_keys();
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
            ajdn::fail(ajdn::ErrorKind::Config, "unknown config key '" + k + "'");
        }
        // Round-trip through the file parser so values obey the same syntax.
        const auto dot = k.find('.');
        const auto text = "[" + k.substr(0, dot) + "]\n" + k.substr(dot + 1) + " = " + value + "\n";
        config->file.merge(ajdn::ConfigFile::parse(text, k));
    });
}

ajdn_status ajdn_config_write(const ajdn_config* config, const char* path) {
    return guarded([&] {
        need(config, "config");
        need(path, "path");
        ajdn::write_text(path, config->file.to_string());
    });
}

void ajdn_config_free(ajdn_config* config) { delete config; }

ajdn_status ajdn_detect(const ajdn_panel* panel, const ajdn_config* config, ajdn_result** out) {
    return guarded([&] {
        need(panel, "panel");
        need(out, "out");
        const auto settings = ajdn::detect_settings_from_config(checked(config));
        auto result = std::make_unique<ajdn_result>();
        result->run = ajdn::run_pipeline(panel->panel, settings);
        result->doc.seed = result->run.resolved.params.seed;
        result->doc.n = panel->panel.n();
        result->doc.p = panel->panel.p();
        result->doc.records = result->run.detection.records;
        *out = result.release();
    });
}

size_t ajdn_result_count(const ajdn_result* result) { return result ? result->doc.records.size() : 0; }

ajdn_status ajdn_result_jump(const ajdn_result* result, size_t k, ajdn_jump* out) {
    return guarded([&] {
        need(result, "result");
        need(out, "out");
        ajdn::require(k < result->doc.records.size(), "jump index out of range");
        const auto& r = result->doc.records[k];
        *out = ajdn_jump{r.dimension,
                         r.index,
                         r.time,
                         r.scale,
                         r.statistic,
                         r.critical_value,
                         r.iteration,
                         r.refined_index.has_value() ? 1 : 0,
                         r.refined_index.value_or(0),
                         r.refined_time.value_or(0.0)};
    });
}

ajdn_status ajdn_result_params(const ajdn_result* result, ajdn_params* out) {
    return guarded([&] {
        need(result, "result");
        need(out, "out");
        const auto& rr = result->run.resolved;
        *out = ajdn_params{rr.params.s_min, rr.params.s_max, rr.params.s_prime, rr.block,
                           rr.grid.delta_n(), rr.params.alpha, rr.params.k0,   rr.params.seed};
    });
}

ajdn_status ajdn_result_jumps_json(const ajdn_result* result, char** out) {
    return guarded([&] {
        need(result, "result");
        need(out, "out");
        *out = duplicate(ajdn::format_jumps_json(result->doc));
    });
}

ajdn_status ajdn_result_write_jumps(const ajdn_result* result, const char* path) {
    return guarded([&] {
        need(result, "result");
        need(path, "path");
        ajdn::write_text(path, ajdn::format_jumps_json(result->doc));
    });
}

ajdn_status ajdn_result_write_summary(const ajdn_result* result, const char* path) {
    return guarded([&] {
        need(result, "result");
        need(path, "path");
        ajdn::write_text(path, ajdn::format_summary(result->doc, result->run.resolved));
    });
}

ajdn_status ajdn_result_write_field(const ajdn_result* result, const char* directory) {
    return guarded([&] {
        need(result, "result");
        need(directory, "directory");
        const std::filesystem::path dir(directory);
        if (!std::filesystem::is_directory(dir)) {
            ajdn::fail(ajdn::ErrorKind::Io, "field dump directory '" + dir.string() + "' does not exist");
        }
        const auto& field = result->run.detection.field;
        for (std::size_t r = 0; r < field.p(); ++r) {
            ajdn::write_text((dir / ("field_" + std::to_string(r) + ".csv")).string(), ajdn::format_field_csv(field, r));
        }
    });
}

ajdn_status ajdn_result_write_variance(const ajdn_result* result, const char* path) {
    return guarded([&] {
        need(result, "result");
        need(path, "path");
        ajdn::write_text(path, ajdn::format_variance_csv(result->run.detection.variance));
    });
}

void ajdn_result_free(ajdn_result* result) { delete result; }

ajdn_status ajdn_simulate(const ajdn_config* config, ajdn_panel** panel, ajdn_truth** truth) {
    return guarded([&] {
        need(config, "config");
        need(panel, "panel");
        const auto spec = ajdn::dgp_from_config(checked(config));
        auto data = ajdn::simulate(spec);
        auto t = std::make_unique<ajdn_truth>();
        t->doc.seed = spec.seed;
        t->doc.n = spec.n;
        t->doc.p = spec.p;
        t->doc.process = ajdn::to_string(spec.process);
        t->doc.scenario = ajdn::to_string(spec.scenario);
        t->doc.gamma = spec.gamma;
        t->doc.delta = spec.delta;
        t->doc.jumps = std::move(data.truth);
        *panel = new ajdn_panel{std::move(data.panel)};
        if (truth) {
            *truth = t.release();
        }
    });
}

ajdn_status ajdn_truth_read(const char* path, ajdn_truth** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new ajdn_truth{ajdn::parse_truth_json(ajdn::read_text(path))};
    });
}

ajdn_status ajdn_truth_write(const ajdn_truth* truth, const char* path) {
    return guarded([&] {
        need(truth, "truth");
        need(path, "path");
        ajdn::write_text(path, ajdn::format_truth_json(truth->doc));
    });
}

size_t ajdn_truth_count(const ajdn_truth* truth) { return truth ? truth->doc.jumps.size() : 0; }

void ajdn_truth_free(ajdn_truth* truth) { delete truth; }

ajdn_status ajdn_evaluate_files(const char* jumps_path, const char* truth_path, double delta, double margin,
                                ajdn_evaluation* out) {
    return guarded([&] {
        need(jumps_path, "jumps_path");
        need(truth_path, "truth_path");
        need(out, "out");
        const auto jumps = ajdn::parse_jumps_json(ajdn::read_text(jumps_path));
        const auto truth = ajdn::parse_truth_json(ajdn::read_text(truth_path));
        const std::size_t n = truth.n ? truth.n : jumps.n;
        const std::size_t p = truth.p ? truth.p : jumps.p;
        ajdn::require(n > 0 && p > 0, "n and p must be recorded in the truth or jumps file");
        ajdn::ScoreOptions opts;
        opts.delta = delta > 0.0 ? delta : truth.delta;
        if (margin >= 0.0) {
            opts.margin = margin;
        }
        *out = to_c(ajdn::match_and_score(jumps.records, truth.jumps, n, p, opts));
    });
}

ajdn_status ajdn_evaluation_json(const ajdn_evaluation* evaluation, char** out) {
    return guarded([&] {
        need(evaluation, "evaluation");
        need(out, "out");
        *out = duplicate(ajdn::format_evaluation_json(from_c(*evaluation)));
    });
}

ajdn_status ajdn_tune(const ajdn_panel* panel, const ajdn_config* settings, const ajdn_config* grid,
                      ajdn_config** best, char** gm_table) {
    return guarded([&] {
        need(panel, "panel");
        need(best, "best");
        const auto ds = ajdn::detect_settings_from_config(checked(settings));
        const auto tg = ajdn::tune_grid_from_config(checked(grid));
        const auto selection = ajdn::run_tuning(panel->panel, tg, ds);
        auto cfg = std::make_unique<ajdn_config>();
        cfg->file = ajdn::to_config(selection.best, ds);
        std::string table = ajdn::format_gm_table(selection, panel->panel.n());
        if (gm_table) {
            *gm_table = duplicate(table);
        }
        *best = cfg.release();
    });
}

ajdn_status ajdn_bench(const ajdn_config* config, char** table_csv, ajdn_evaluation* summary) {
    return guarded([&] {
        need(config, "config");
        const auto file = checked(config);
        const auto spec = ajdn::bench_from_config(file);
        const auto settings = ajdn::detect_settings_from_config(file);
        const auto result = ajdn::run_bench(spec, settings);
        if (table_csv) {
            *table_csv = duplicate(ajdn::format_bench_csv(result));
        }
        if (summary) {
            *summary = to_c(result.summary);
        }
    });
}

ajdn_status ajdn_filter_check(int quadrature_points, char** report_json, int* ok) {
    return guarded([&] {
        const auto report = ajdn::validate_filter(ajdn::JumpPassFilter::optimal(), quadrature_points);
        if (report_json) {
            *report_json = duplicate(ajdn::format_report_json(report));
        }
        if (ok) {
            *ok = report.ok() ? 1 : 0;
        }
    });
}

} // extern "C"
