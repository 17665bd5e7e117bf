#pragma once

#include "ajdn/detector.hpp"
#include "ajdn/evaluate.hpp"
#include "ajdn/panel.hpp"
#include "ajdn/pipeline.hpp"
#include "ajdn/report.hpp"
#include "ajdn/simulate.hpp"
#include "ajdn/tuning.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ajdn {

// Rows are times, columns are dimensions. A first row with any non-numeric
// cell is a header. Ragged rows, non-numeric or non-finite cells raise a Data
// error naming the 1-based row and column.
Panel parse_csv_panel(const std::string& text);
Panel read_csv_panel(const std::string& path);
std::string format_csv_panel(const Panel& panel);
void write_csv_panel(const std::string& path, const Panel& panel);

struct JumpsDocument {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t p = 0;
    std::vector<JumpRecord> records;
};

// {"seed", "n", "p", "jumps": [...]}; each record carries every field, with
// null refined fields when refinement was skipped. The parser also accepts a
// bare array of records.
std::string format_jumps_json(const JumpsDocument& doc);
JumpsDocument parse_jumps_json(const std::string& text);

struct TruthDocument {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t p = 0;
    std::string process;
    std::string scenario;
    double gamma = 0.0;
    double delta = 0.0;
    std::vector<GroundTruthJump> jumps;
};

std::string format_truth_json(const TruthDocument& doc);
TruthDocument parse_truth_json(const std::string& text);

std::string format_evaluation_json(const EvaluationResult& result);
std::string format_report_json(const ValidationReport& report);

// Counts per dimension plus the resolved hyperparameters.
std::string format_summary(const JumpsDocument& doc, const ResolvedRun& resolved);

// Columns t, G: one file per dimension.
std::string format_field_csv(const StatisticField& field, std::size_t r);
// Columns index, t, then the local sd of every dimension (empty where undefined).
std::string format_variance_csv(const LocalVarianceField& variance);
std::string format_gm_table(const BicSelection& selection, std::size_t n);
std::string format_bench_csv(const BenchResult& result);

std::string read_text(const std::string& path);
// Io error on failure.
void write_text(const std::string& path, const std::string& text);

} // namespace ajdn
