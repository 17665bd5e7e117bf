#pragma once

#include "ajdn/panel.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ajdn {

enum class Process { IID, GS, PS, LS, PLS };
enum class Scenario { None, S1, S2 };

std::string to_string(Process p);
std::string to_string(Scenario s);
Process parse_process(const std::string& name);
Scenario parse_scenario(const std::string& name);

struct DgpSpec {
    Process process = Process::IID;
    bool with_trend = false;
    std::size_t n = 0;
    std::size_t p = 0;
    Scenario scenario = Scenario::None;
    double gamma = 1.0;
    double delta = 0.0;
    std::uint64_t seed = 1;
};

struct GroundTruthJump {
    std::size_t dimension = 0;
    std::size_t index = 0; // last pre-jump index; the mean shifts for i > index
    double time = 0.0;
    double size = 0.0;
    double delta = 0.0; // size in local-sd units

    friend bool operator==(const GroundTruthJump&, const GroundTruthJump&) = default;
};

// Noise panels. Processes separable across dimensions draw from per-dimension
// substreams; the others from a single stream. 200 burn-in steps are discarded.
Panel generate_errors(const DgpSpec& spec);

// Local standard deviation at every grid index, using the rule-of-thumb variance
// windows; indices outside the estimator's domain take the nearest defined value.
std::vector<std::vector<double>> local_sd_profile(const Panel& panel);

// beta(1) = sin(2 pi/n + 2 pi r/p); beta(i) = beta(i-1) + sd_{r,i} (sin_i - sin_{i-1}).
// `sd` is [r][i] with index 0 unused. r is 1-based in the phase.
Panel generate_trend(std::size_t n, std::size_t p, const std::vector<std::vector<double>>& sd);
Panel generate_trend(std::size_t n, std::size_t p, const Panel& errors);

// Positions of scenario jumps: (dimension, time). Fully determined by the arguments.
std::vector<std::pair<std::size_t, double>> scenario_layout(Scenario scenario, double gamma, std::size_t p);

struct ScenarioResult {
    Panel panel;
    std::vector<GroundTruthJump> truth;
};

// Adds upward jumps of size delta * (local sd at the jump time of `reference`).
ScenarioResult apply_scenario(const Panel& panel, Scenario scenario, double gamma, double delta,
                              const Panel* reference = nullptr);

struct SimulatedData {
    Panel panel;
    std::vector<GroundTruthJump> truth;
};

// errors (+ trend) (+ scenario jumps, sized on the error panel).
SimulatedData simulate(const DgpSpec& spec);

} // namespace ajdn
