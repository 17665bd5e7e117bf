#include "ajdn/io.hpp"

#include "ajdn/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ajdn {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\"");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_number(const std::string& cell, double& out) {
    if (cell.empty()) {
        return false;
    }
    const char* first = cell.data();
    if (*first == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, cell.data() + cell.size(), out);
    return res.ec == std::errc() && res.ptr == cell.data() + cell.size();
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return fallback;
    }
    return it->get<T>();
}

JumpRecord record_from_json(const json& j) {
    JumpRecord r;
    r.dimension = j.at("dimension").get<std::size_t>();
    r.index = j.at("index").get<std::size_t>();
    r.time = j.at("time").get<double>();
    r.scale = j.at("scale").get<double>();
    r.statistic = j.at("statistic").get<double>();
    r.critical_value = j.at("critical_value").get<double>();
    r.iteration = get_or<std::size_t>(j, "iteration", 0);
    if (j.contains("refined_index") && !j["refined_index"].is_null()) {
        r.refined_index = j["refined_index"].get<std::size_t>();
    }
    if (j.contains("refined_time") && !j["refined_time"].is_null()) {
        r.refined_time = j["refined_time"].get<double>();
    }
    return r;
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Data, std::string("malformed ") + what + ": " + e.what());
    }
}

} // namespace

Panel parse_csv_panel(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t row = 0;
    std::size_t width = 0;
    bool header_checked = false;
    std::vector<double> rows;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_row(line);
        if (!header_checked) {
            header_checked = true;
            bool numeric = true;
            double tmp = 0.0;
            for (const auto& c : cells) {
                if (!parse_number(c, tmp) && c != "nan" && c != "NaN" && c != "inf" && c != "-inf") {
                    numeric = false;
                }
            }
            width = cells.size();
            if (!numeric) {
                continue;
            }
        }
        if (cells.size() != width) {
            fail(ErrorKind::Data, "row " + std::to_string(row) + ": expected " + std::to_string(width) +
                                      " columns, found " + std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            if (!parse_number(cells[c], v)) {
                fail(ErrorKind::Data, "row " + std::to_string(row) + ", column " + std::to_string(c + 1) +
                                          ": non-numeric cell '" + cells[c] + "'");
            }
            if (!std::isfinite(v)) {
                fail(ErrorKind::Data, "row " + std::to_string(row) + ", column " + std::to_string(c + 1) +
                                          ": non-finite value");
            }
            rows.push_back(v);
        }
        ++n;
    }
    if (n == 0 || width == 0) {
        fail(ErrorKind::Data, "CSV input holds no data rows");
    }
    return Panel::from_rows(n, width, rows);
}

Panel read_csv_panel(const std::string& path) { return parse_csv_panel(read_text(path)); }

std::string format_csv_panel(const Panel& panel) {
    std::string out;
    for (std::size_t r = 0; r < panel.p(); ++r) {
        out += (r ? ",x" : "x") + std::to_string(r + 1);
    }
    out += '\n';
    for (std::size_t i = 1; i <= panel.n(); ++i) {
        for (std::size_t r = 0; r < panel.p(); ++r) {
            if (r) {
                out += ',';
            }
            out += fmt(panel.at(r, i));
        }
        out += '\n';
    }
    return out;
}

void write_csv_panel(const std::string& path, const Panel& panel) { write_text(path, format_csv_panel(panel)); }

std::string format_jumps_json(const JumpsDocument& doc) {
    ordered_json out;
    out["seed"] = doc.seed;
    out["n"] = doc.n;
    out["p"] = doc.p;
    ordered_json arr = ordered_json::array();
    for (const auto& r : doc.records) {
        ordered_json j;
        j["dimension"] = r.dimension;
        j["index"] = r.index;
        j["time"] = r.time;
        j["scale"] = r.scale;
        j["statistic"] = r.statistic;
        j["critical_value"] = r.critical_value;
        j["iteration"] = r.iteration;
        j["refined_index"] = r.refined_index ? ordered_json(*r.refined_index) : ordered_json(nullptr);
        j["refined_time"] = r.refined_time ? ordered_json(*r.refined_time) : ordered_json(nullptr);
        arr.push_back(std::move(j));
    }
    out["jumps"] = std::move(arr);
    return out.dump(2) + "\n";
}

JumpsDocument parse_jumps_json(const std::string& text) {
    const auto j = parse_json(text, "jumps JSON");
    JumpsDocument doc;
    try {
        const json* arr = &j;
        if (j.is_object()) {
            doc.seed = get_or<std::uint64_t>(j, "seed", 0);
            doc.n = get_or<std::size_t>(j, "n", 0);
            doc.p = get_or<std::size_t>(j, "p", 0);
            arr = &j.at("jumps");
        }
        if (!arr->is_array()) {
            fail(ErrorKind::Data, "jumps JSON must hold an array of records");
        }
        for (const auto& rec : *arr) {
            doc.records.push_back(record_from_json(rec));
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::Data, std::string("invalid jump record: ") + e.what());
    }
    return doc;
}

std::string format_truth_json(const TruthDocument& doc) {
    ordered_json out;
    out["seed"] = doc.seed;
    out["n"] = doc.n;
    out["p"] = doc.p;
    out["process"] = doc.process;
    out["scenario"] = doc.scenario;
    out["gamma"] = doc.gamma;
    out["delta"] = doc.delta;
    ordered_json arr = ordered_json::array();
    for (const auto& t : doc.jumps) {
        ordered_json j;
        j["dimension"] = t.dimension;
        j["index"] = t.index;
        j["time"] = t.time;
        j["size"] = t.size;
        j["delta"] = t.delta;
        arr.push_back(std::move(j));
    }
    out["jumps"] = std::move(arr);
    return out.dump(2) + "\n";
}

TruthDocument parse_truth_json(const std::string& text) {
    const auto j = parse_json(text, "truth JSON");
    TruthDocument doc;
    try {
        const json* arr = &j;
        if (j.is_object()) {
            doc.seed = get_or<std::uint64_t>(j, "seed", 0);
            doc.n = get_or<std::size_t>(j, "n", 0);
            doc.p = get_or<std::size_t>(j, "p", 0);
            doc.process = get_or<std::string>(j, "process", "");
            doc.scenario = get_or<std::string>(j, "scenario", "");
            doc.gamma = get_or<double>(j, "gamma", 0.0);
            doc.delta = get_or<double>(j, "delta", 0.0);
            arr = &j.at("jumps");
        }
        for (const auto& t : *arr) {
            GroundTruthJump g;
            g.dimension = t.at("dimension").get<std::size_t>();
            g.index = t.at("index").get<std::size_t>();
            g.time = get_or<double>(t, "time", 0.0);
            g.size = get_or<double>(t, "size", 0.0);
            g.delta = get_or<double>(t, "delta", 0.0);
            doc.jumps.push_back(g);
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::Data, std::string("invalid truth record: ") + e.what());
    }
    return doc;
}

std::string format_evaluation_json(const EvaluationResult& r) {
    ordered_json out;
    out["m_bar"] = r.m_bar;
    out["m_hat_p"] = r.m_hat_p;
    out["mad"] = r.mad;
    out["margin"] = r.margin;
    out["runs"] = r.runs;
    out["runs_with_match"] = r.runs_with_match;
    out["runs_with_detection"] = r.runs_with_detection;
    return out.dump(2) + "\n";
}

std::string format_report_json(const ValidationReport& report) {
    ordered_json out;
    out["ok"] = report.ok();
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json j;
        j["name"] = c.name;
        j["value"] = c.value;
        j["target"] = c.target;
        j["tolerance"] = c.tolerance;
        j["passed"] = c.passed;
        j["required"] = c.required;
        if (!c.note.empty()) {
            j["note"] = c.note;
        }
        checks.push_back(std::move(j));
    }
    out["checks"] = std::move(checks);
    out["warnings"] = report.warnings;
    return out.dump(2) + "\n";
}

std::string format_summary(const JumpsDocument& doc, const ResolvedRun& resolved) {
    std::ostringstream os;
    os.precision(6);
    os << "seed " << doc.seed << "\n";
    os << "n " << doc.n << "  p " << doc.p << "\n";
    os << "s_min " << resolved.params.s_min << "  s_max " << resolved.params.s_max << "  delta_n "
       << resolved.grid.delta_n() << "\n";
    os << "block " << resolved.block << " (" << resolved.s_prime_source << ")  alpha " << resolved.params.alpha
       << "  K0 " << resolved.params.k0 << "\n";
    os << "jumps " << doc.records.size() << "\n";
    std::vector<std::size_t> counts(doc.p, 0);
    for (const auto& r : doc.records) {
        if (r.dimension < counts.size()) {
            ++counts[r.dimension];
        }
    }
    os << "dimension,count\n";
    for (std::size_t r = 0; r < counts.size(); ++r) {
        os << r << "," << counts[r] << "\n";
    }
    return os.str();
}

std::string format_field_csv(const StatisticField& field, std::size_t r) {
    require(r < field.p(), "field dimension out of range");
    std::string out = "t,G\n";
    for (std::size_t i = 1; i <= field.n; ++i) {
        const double g = field.gmax[r][i];
        if (std::isnan(g)) {
            continue;
        }
        out += fmt(static_cast<double>(i) / static_cast<double>(field.n)) + "," + fmt(g) + "\n";
    }
    return out;
}

std::string format_variance_csv(const LocalVarianceField& variance) {
    std::string out = "index,t";
    for (std::size_t r = 0; r < variance.p(); ++r) {
        out += ",sd" + std::to_string(r);
    }
    out += '\n';
    const std::size_t n = variance.n();
    for (std::size_t i = 1; i <= n; ++i) {
        out += std::to_string(i) + "," + fmt(static_cast<double>(i) / static_cast<double>(n));
        for (std::size_t r = 0; r < variance.p(); ++r) {
            out += ',';
            if (variance.defined(r, i)) {
                out += fmt(std::sqrt(variance.variance(r, i)));
            }
        }
        out += '\n';
    }
    return out;
}

std::string format_gm_table(const BicSelection& selection, std::size_t n) {
    std::string out = "candidate,s_min,s_max,ns_prime,ok,gm,total_jumps,selected,error\n";
    for (std::size_t c = 0; c < selection.table.size(); ++c) {
        const auto& row = selection.table[c];
        std::size_t total = 0;
        for (auto m : row.jumps) {
            total += m;
        }
        const auto block = static_cast<long long>(std::llround(row.params.s_prime * static_cast<double>(n)));
        std::string err = row.error;
        for (auto& ch : err) {
            if (ch == ',' || ch == '\n') {
                ch = ';';
            }
        }
        out += std::to_string(c) + "," + fmt(row.params.s_min) + "," + fmt(row.params.s_max) + "," +
               std::to_string(block) + "," + (row.ok ? "1" : "0") + "," + (row.ok ? fmt(row.gm) : "") + "," +
               std::to_string(total) + "," + (c == selection.best_index ? "1" : "0") + "," + err + "\n";
    }
    return out;
}

std::string format_bench_csv(const BenchResult& result) {
    std::string out = "run,seed,detected,counted,matched,false_positives,missed,exact,mad\n";
    for (std::size_t k = 0; k < result.runs.size(); ++k) {
        const auto& r = result.runs[k];
        out += std::to_string(k) + "," + std::to_string(r.seed) + "," + std::to_string(r.detected) + "," +
               std::to_string(r.score.counted_jumps) + "," + std::to_string(r.score.matches.size()) + "," +
               std::to_string(r.score.false_positives.size()) + "," + std::to_string(r.score.missed.size()) + "," +
               (r.score.exact_recovery ? "1" : "0") + "," + (r.score.mad ? fmt(*r.score.mad) : "") + "\n";
    }
    return out;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        fail(ErrorKind::Io, "failed writing '" + path + "'");
    }
}

} // namespace ajdn
