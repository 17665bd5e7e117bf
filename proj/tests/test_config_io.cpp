#include <doctest.h>

#include "ajdn/config.hpp"
#include "ajdn/errors.hpp"
#include "ajdn/io.hpp"
#include "ajdn/pipeline.hpp"

#include <optional>
#include <string>

using namespace ajdn;

namespace {

std::optional<ErrorKind> kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

std::string message_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("config subset parsing") {
    const auto cfg = ConfigFile::parse(R"(# top comment
[scales]
s_min = 0.05   # trailing
s_max = 0.1
[bootstrap]
k0 = 200
seed = 18446744073709551615
[refine]
enabled = false
[tune]
s_min = [0.04, 0.05]
[simulate]
process = "GS"
)");
    CHECK(*cfg.get_double("scales.s_min") == 0.05);
    CHECK(*cfg.get_int("bootstrap.k0") == 200);
    CHECK(*cfg.get_uint64("bootstrap.seed") == 18446744073709551615ull);
    CHECK(*cfg.get_bool("refine.enabled") == false);
    CHECK(*cfg.get_double_list("tune.s_min") == std::vector<double>{0.04, 0.05});
    CHECK(*cfg.get_double_list("scales.s_max") == std::vector<double>{0.1});
    CHECK(*cfg.get_string("simulate.process") == "GS");
    CHECK_FALSE(cfg.get_double("scales.delta_n").has_value());
    CHECK(kind_of([&] { (void)cfg.get_int("scales.s_min"); }) == ErrorKind::Config);

    const auto again = ConfigFile::parse(cfg.to_string());
    CHECK(again.keys() == cfg.keys());
    CHECK(*again.get_double_list("tune.s_min") == std::vector<double>{0.04, 0.05});
}

TEST_CASE("config errors name the line") {
    CHECK(message_of([] { (void)ConfigFile::parse("[a]\nx = 1\n[b\n"); }).find("line 3") != std::string::npos);
    CHECK(kind_of([] { (void)ConfigFile::parse("just words\n"); }) == ErrorKind::Config);
    CHECK(kind_of([] { (void)ConfigFile::parse("x = \"open\n"); }) == ErrorKind::Config);
    CHECK(kind_of([] { (void)ConfigFile::parse("x = [1, 2\n"); }) == ErrorKind::Config);
    CHECK(kind_of([] { (void)ConfigFile::load("/nonexistent/file.toml"); }) == ErrorKind::Config);
    const auto cfg = ConfigFile::parse("[scales]\ns_mni = 0.1\n");
    CHECK(message_of([&] { cfg.reject_unknown(detect_config_keys()); }).find("scales.s_mni") != std::string::npos);
}

TEST_CASE("detect settings from config") {
    auto cfg = ConfigFile::parse("[detect]\nalpha = 0.1\n[refine]\nenabled = false\nz_n = 0.02\n");
    const auto s = detect_settings_from_config(cfg);
    CHECK(s.alpha == 0.1);
    CHECK_FALSE(s.refine);
    CHECK(s.z_n == 0.02);
    CHECK(s.k0 == 500);
    cfg.set("detect.alpha", "1.5");
    CHECK(kind_of([&] { (void)detect_settings_from_config(cfg); }) == ErrorKind::Config);
    cfg.set("detect.alpha", "0.1");
    cfg.set("bootstrap.k0", "1");
    CHECK(kind_of([&] { (void)detect_settings_from_config(cfg); }) == ErrorKind::Config);
}

TEST_CASE("CSV ingest") {
    const auto p = parse_csv_panel("1,2\n3,4\n5,6\n");
    CHECK(p.n() == 3);
    CHECK(p.p() == 2);
    CHECK(p.at(1, 3) == 6.0);
    const auto h = parse_csv_panel("x1,x2\n1,2\n3,4\n");
    CHECK(h.n() == 2);
    CHECK(h.at(0, 2) == 3.0);
    CHECK(parse_csv_panel(format_csv_panel(h)) == h);

    const auto nan_msg = message_of([] { (void)parse_csv_panel("x1,x2\n1,2\n3,nan\n"); });
    CHECK(nan_msg.find("row 3, column 2") != std::string::npos);
    CHECK(kind_of([] { (void)parse_csv_panel("1,2\n3\n"); }) == ErrorKind::Data);
    CHECK(kind_of([] { (void)parse_csv_panel("1,2\n3,abc\n"); }) == ErrorKind::Data);
    CHECK(kind_of([] { (void)parse_csv_panel(""); }) == ErrorKind::Data);
    CHECK(kind_of([] { (void)read_csv_panel("/nonexistent.csv"); }) == ErrorKind::Io);
}

TEST_CASE("jumps JSON round trip") {
    JumpsDocument doc;
    doc.seed = 7;
    doc.n = 1000;
    doc.p = 3;
    JumpRecord a;
    a.dimension = 2;
    a.index = 250;
    a.time = 0.25;
    a.scale = 0.1;
    a.statistic = 9.5;
    a.critical_value = 4.25;
    a.iteration = 1;
    a.refined_index = 249;
    a.refined_time = 0.249;
    JumpRecord b = a;
    b.refined_index.reset();
    b.refined_time.reset();
    doc.records = {a, b};
    const auto text = format_jumps_json(doc);
    CHECK(text.find("null") != std::string::npos);
    const auto back = parse_jumps_json(text);
    CHECK(back.seed == 7);
    CHECK(back.records == doc.records);
    CHECK(parse_jumps_json("[]").records.empty());
    CHECK(parse_jumps_json(format_jumps_json(JumpsDocument{})).records.empty());
    CHECK(kind_of([] { (void)parse_jumps_json("{\"jumps\": 3}"); }) == ErrorKind::Data);
    CHECK(kind_of([] { (void)parse_jumps_json("not json"); }) == ErrorKind::Data);
}

TEST_CASE("truth JSON round trip") {
    TruthDocument doc;
    doc.seed = 3;
    doc.n = 500;
    doc.p = 2;
    doc.process = "GS";
    doc.scenario = "S1";
    doc.gamma = 0.5;
    doc.delta = 2.0;
    doc.jumps = {{0, 125, 0.25, 2.1, 2.0}};
    const auto back = parse_truth_json(format_truth_json(doc));
    CHECK(back.jumps == doc.jumps);
    CHECK(back.process == "GS");
    CHECK(back.delta == 2.0);
}

TEST_CASE("resolve settings fills automatic values") {
    DgpSpec dgp;
    dgp.process = Process::IID;
    dgp.n = 600;
    dgp.p = 4;
    const auto panel = simulate(dgp).panel;
    DetectSettings s;
    s.s_prime = 2.0 / 600.0;
    const auto r = resolve_settings(panel, s);
    const auto rot = rule_of_thumb(600, 4);
    CHECK(r.params.s_min == doctest::Approx(rot.s_min));
    CHECK(r.params.s_max == doctest::Approx(rot.s_max));
    CHECK(r.block == 2);
    CHECK(r.s_prime_source == "config");

    DetectSettings bad;
    bad.s_min = 0.2;
    bad.s_max = 0.1;
    CHECK(kind_of([&] { (void)resolve_settings(panel, bad); }) == ErrorKind::Argument);

    DgpSpec small = dgp;
    small.n = 50;
    CHECK(kind_of([&] { (void)resolve_settings(simulate(small).panel, DetectSettings{}); }) == ErrorKind::Argument);
}

TEST_CASE("tuning grid candidates") {
    const auto grid = tune_grid_from_config(
        ConfigFile::parse("[tune]\ns_min = [0.05, 0.2]\ns_max = [0.1, 0.15]\nns_prime = [1, 3, 80]\n"));
    const auto cands = tune_candidates(grid, 1000, DetectSettings{});
    // (0.05, 0.1) and (0.05, 0.15) with ns' 1 and 3; 80 exceeds n s_min.
    CHECK(cands.size() == 4);
    for (const auto& c : cands) {
        CHECK(c.s_min < c.s_max);
    }
}
