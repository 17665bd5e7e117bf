#include <doctest.h>

#include <ajdn/ajdn.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::vector<double> step_panel(std::size_t n, std::size_t p, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    std::vector<double> v(n * p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < p; ++r) {
            v[i * p + r] = z(gen) + (r == 1 && i >= 300 ? 6.0 : 0.0);
        }
    }
    return v;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "ajdn_capi_test";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("status names and version") {
    CHECK(std::string(ajdn_status_name(AJDN_OK)) == "ok");
    CHECK(std::string(ajdn_version()).size() > 0);
}

TEST_CASE("panel handles") {
    const std::vector<double> v = {1, 2, 3, 4, 5, 6};
    ajdn_panel* panel = nullptr;
    REQUIRE(ajdn_panel_create(3, 2, v.data(), &panel) == AJDN_OK);
    CHECK(ajdn_panel_n(panel) == 3);
    CHECK(ajdn_panel_p(panel) == 2);
    double x = 0.0;
    REQUIRE(ajdn_panel_get(panel, 1, 2, &x) == AJDN_OK);
    CHECK(x == 4.0);
    CHECK(ajdn_panel_get(panel, 2, 1, &x) == AJDN_ERR_ARGUMENT);
    CHECK(std::string(ajdn_last_error()).size() > 0);

    const size_t order[] = {1, 0};
    ajdn_panel* perm = nullptr;
    REQUIRE(ajdn_panel_permute(panel, order, &perm) == AJDN_OK);
    REQUIRE(ajdn_panel_get(perm, 0, 1, &x) == AJDN_OK);
    CHECK(x == 2.0);

    ajdn_panel* scaled = nullptr;
    REQUIRE(ajdn_panel_scale_dimension(panel, 0, 10.0, &scaled) == AJDN_OK);
    REQUIRE(ajdn_panel_get(scaled, 0, 3, &x) == AJDN_OK);
    CHECK(x == 50.0);

    const auto path = scratch("panel.csv").string();
    REQUIRE(ajdn_panel_write_csv(panel, path.c_str()) == AJDN_OK);
    ajdn_panel* back = nullptr;
    REQUIRE(ajdn_panel_read_csv(path.c_str(), &back) == AJDN_OK);
    REQUIRE(ajdn_panel_get(back, 1, 3, &x) == AJDN_OK);
    CHECK(x == 6.0);

    ajdn_panel* bad = nullptr;
    CHECK(ajdn_panel_read_csv("/nonexistent/panel.csv", &bad) == AJDN_ERR_IO);
    CHECK(bad == nullptr);
    std::vector<double> nan_values = {1.0, std::nan("")};
    CHECK(ajdn_panel_create(2, 1, nan_values.data(), &bad) == AJDN_ERR_DATA);
    CHECK(ajdn_panel_create(2, 1, nullptr, &bad) == AJDN_ERR_ARGUMENT);

    ajdn_panel_free(back);
    ajdn_panel_free(scaled);
    ajdn_panel_free(perm);
    ajdn_panel_free(panel);
    ajdn_panel_free(nullptr);
}

TEST_CASE("configuration handles reject unknown keys") {
    ajdn_config* cfg = nullptr;
    REQUIRE(ajdn_config_create(&cfg) == AJDN_OK);
    CHECK(ajdn_config_set(cfg, "detect.alpha", "0.1") == AJDN_OK);
    CHECK(ajdn_config_set(cfg, "detect.alpah", "0.1") == AJDN_ERR_CONFIG);
    CHECK(ajdn_config_set(cfg, "detect.alpha", "[1, 2") == AJDN_ERR_CONFIG);
    const auto path = scratch("cfg.toml").string();
    REQUIRE(ajdn_config_write(cfg, path.c_str()) == AJDN_OK);
    ajdn_config* back = nullptr;
    CHECK(ajdn_config_load(path.c_str(), &back) == AJDN_OK);
    ajdn_config_free(back);
    ajdn_config_free(cfg);
}

TEST_CASE("detection through the C interface") {
    const std::size_t n = 600, p = 3;
    const auto v = step_panel(n, p, 7);
    ajdn_panel* panel = nullptr;
    REQUIRE(ajdn_panel_create(n, p, v.data(), &panel) == AJDN_OK);
    ajdn_config* cfg = nullptr;
    REQUIRE(ajdn_config_create(&cfg) == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "bootstrap.k0", "100") == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "bootstrap.seed", "3") == AJDN_OK);

    ajdn_result* res = nullptr;
    REQUIRE(ajdn_detect(panel, cfg, &res) == AJDN_OK);
    REQUIRE(ajdn_result_count(res) >= 1);
    bool found = false;
    for (std::size_t k = 0; k < ajdn_result_count(res); ++k) {
        ajdn_jump j{};
        REQUIRE(ajdn_result_jump(res, k, &j) == AJDN_OK);
        CHECK(j.refined != 0);
        if (j.dimension == 1 && std::abs(static_cast<long>(j.refined_index) - 300) <= 2) {
            found = true;
        }
    }
    CHECK(found);
    ajdn_jump dummy{};
    CHECK(ajdn_result_jump(res, 99, &dummy) == AJDN_ERR_ARGUMENT);

    ajdn_params params{};
    REQUIRE(ajdn_result_params(res, &params) == AJDN_OK);
    CHECK(params.seed == 3);
    CHECK(params.k0 == 100);
    CHECK(params.s_min < params.s_max);
    CHECK(params.block >= 1);

    char* json = nullptr;
    REQUIRE(ajdn_result_jumps_json(res, &json) == AJDN_OK);
    CHECK(std::string(json).find("\"jumps\"") != std::string::npos);
    ajdn_string_free(json);

    const auto dir = scratch("fields");
    fs::create_directories(dir);
    CHECK(ajdn_result_write_field(res, dir.string().c_str()) == AJDN_OK);
    CHECK(fs::exists(dir / "field_0.csv"));
    CHECK(ajdn_result_write_variance(res, scratch("var.csv").string().c_str()) == AJDN_OK);
    CHECK(ajdn_result_write_summary(res, scratch("summary.txt").string().c_str()) == AJDN_OK);
    CHECK(ajdn_result_write_jumps(res, "/nonexistent/dir/jumps.json") == AJDN_ERR_IO);

    // Same seed, same answer.
    ajdn_result* again = nullptr;
    REQUIRE(ajdn_detect(panel, cfg, &again) == AJDN_OK);
    char* json2 = nullptr;
    REQUIRE(ajdn_result_jumps_json(again, &json2) == AJDN_OK);
    REQUIRE(ajdn_result_jumps_json(res, &json) == AJDN_OK);
    CHECK(std::string(json) == std::string(json2));
    ajdn_string_free(json);
    ajdn_string_free(json2);

    ajdn_result_free(again);
    ajdn_result_free(res);
    ajdn_config_free(cfg);
    ajdn_panel_free(panel);
}

TEST_CASE("bad hyperparameters map to argument errors") {
    const auto v = step_panel(300, 2, 1);
    ajdn_panel* panel = nullptr;
    REQUIRE(ajdn_panel_create(300, 2, v.data(), &panel) == AJDN_OK);
    ajdn_config* cfg = nullptr;
    REQUIRE(ajdn_config_create(&cfg) == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "scales.s_min", "0.2") == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "scales.s_max", "0.1") == AJDN_OK);
    ajdn_result* res = nullptr;
    CHECK(ajdn_detect(panel, cfg, &res) == AJDN_ERR_ARGUMENT);
    CHECK(res == nullptr);
    ajdn_config_free(cfg);
    ajdn_panel_free(panel);
}

TEST_CASE("simulate then evaluate through files") {
    ajdn_config* cfg = nullptr;
    REQUIRE(ajdn_config_create(&cfg) == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "simulate.process", "\"IID\"") == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "simulate.n", "500") == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "simulate.p", "4") == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "simulate.scenario", "\"S1\"") == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "simulate.gamma", "0.5") == AJDN_OK);
    REQUIRE(ajdn_config_set(cfg, "simulate.delta", "6") == AJDN_OK);
    ajdn_panel* panel = nullptr;
    ajdn_truth* truth = nullptr;
    REQUIRE(ajdn_simulate(cfg, &panel, &truth) == AJDN_OK);
    CHECK(ajdn_panel_n(panel) == 500);
    CHECK(ajdn_truth_count(truth) == 2);
    const auto truth_path = scratch("truth.json").string();
    REQUIRE(ajdn_truth_write(truth, truth_path.c_str()) == AJDN_OK);
    ajdn_truth* reread = nullptr;
    REQUIRE(ajdn_truth_read(truth_path.c_str(), &reread) == AJDN_OK);
    CHECK(ajdn_truth_count(reread) == 2);

    ajdn_config* dcfg = nullptr;
    REQUIRE(ajdn_config_create(&dcfg) == AJDN_OK);
    REQUIRE(ajdn_config_set(dcfg, "bootstrap.k0", "100") == AJDN_OK);
    REQUIRE(ajdn_config_set(dcfg, "bootstrap.s_prime", "0.004") == AJDN_OK);
    ajdn_result* res = nullptr;
    REQUIRE(ajdn_detect(panel, dcfg, &res) == AJDN_OK);
    const auto jumps_path = scratch("jumps.json").string();
    REQUIRE(ajdn_result_write_jumps(res, jumps_path.c_str()) == AJDN_OK);

    ajdn_evaluation ev{};
    REQUIRE(ajdn_evaluate_files(jumps_path.c_str(), truth_path.c_str(), 0.0, 0.01, &ev) == AJDN_OK);
    CHECK(ev.runs == 1);
    CHECK(ev.margin == 0.01);
    CHECK(ev.m_bar >= 1.0);
    char* json = nullptr;
    REQUIRE(ajdn_evaluation_json(&ev, &json) == AJDN_OK);
    CHECK(std::string(json).find("m_bar") != std::string::npos);
    ajdn_string_free(json);
    CHECK(ajdn_evaluate_files("/nonexistent.json", truth_path.c_str(), 0.0, -1.0, &ev) == AJDN_ERR_IO);

    ajdn_result_free(res);
    ajdn_config_free(dcfg);
    ajdn_truth_free(reread);
    ajdn_truth_free(truth);
    ajdn_panel_free(panel);
    ajdn_config_free(cfg);
}

TEST_CASE("tuning and filter check") {
    const auto v = step_panel(600, 2, 4);
    ajdn_panel* panel = nullptr;
    REQUIRE(ajdn_panel_create(600, 2, v.data(), &panel) == AJDN_OK);
    ajdn_config* settings = nullptr;
    ajdn_config* grid = nullptr;
    REQUIRE(ajdn_config_create(&settings) == AJDN_OK);
    REQUIRE(ajdn_config_create(&grid) == AJDN_OK);
    REQUIRE(ajdn_config_set(settings, "bootstrap.k0", "60") == AJDN_OK);
    REQUIRE(ajdn_config_set(grid, "tune.s_min", "[0.05, 0.08]") == AJDN_OK);
    REQUIRE(ajdn_config_set(grid, "tune.s_max", "[0.12]") == AJDN_OK);
    REQUIRE(ajdn_config_set(grid, "tune.ns_prime", "[1, 2]") == AJDN_OK);
    ajdn_config* best = nullptr;
    char* table = nullptr;
    REQUIRE(ajdn_tune(panel, settings, grid, &best, &table) == AJDN_OK);
    CHECK(std::string(table).find("gm") != std::string::npos);
    CHECK(ajdn_config_write(best, scratch("best.toml").string().c_str()) == AJDN_OK);
    ajdn_string_free(table);
    ajdn_config_free(best);
    ajdn_config_free(grid);
    ajdn_config_free(settings);
    ajdn_panel_free(panel);

    char* report = nullptr;
    int ok = 0;
    REQUIRE(ajdn_filter_check(10000, &report, &ok) == AJDN_OK);
    CHECK(ok == 1);
    ajdn_string_free(report);
    CHECK(ajdn_filter_check(10, &report, &ok) == AJDN_ERR_ARGUMENT);
}
