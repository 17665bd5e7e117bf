#include "ajdn/simulate.hpp"

#include "ajdn/errors.hpp"
#include "ajdn/rng.hpp"
#include "ajdn/scales.hpp"
#include "ajdn/tuning.hpp"
#include "ajdn/variance.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ajdn {
namespace {

constexpr std::size_t kBurnIn = 200;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Eigen::MatrixXd equicorrelation_root(std::size_t p, double rho) {
    Eigen::MatrixXd S = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p), rho);
    S.diagonal().setOnes();
    return S.llt().matrixL();
}

Eigen::MatrixXd kms_root(std::size_t p, double rho) {
    const auto P = static_cast<Eigen::Index>(p);
    Eigen::MatrixXd S(P, P);
    for (Eigen::Index j = 0; j < P; ++j) {
        for (Eigen::Index k = 0; k < P; ++k) {
            S(j, k) = std::pow(rho, static_cast<double>(std::abs(j - k)));
        }
    }
    return S.llt().matrixL();
}

Panel ar1_panel(const DgpSpec& spec, double phi) {
    PanelBuilder out(spec.n, spec.p);
#pragma omp parallel for schedule(static)
    for (long rr = 0; rr < static_cast<long>(spec.p); ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        auto gen = substream(spec.seed, r + 1, kSimulationDomain);
        std::normal_distribution<double> normal(0.0, 1.0);
        auto y = out.series(r);
        double prev = 0.0;
        for (std::size_t k = 0; k < kBurnIn + spec.n; ++k) {
            const double v = phi * prev + normal(gen);
            if (k >= kBurnIn) {
                y[k - kBurnIn] = v;
            }
            prev = v;
        }
    }
    return std::move(out).build();
}

Panel vma_panel(const DgpSpec& spec) {
    const std::size_t n = spec.n;
    const std::size_t p = spec.p;
    const auto P = static_cast<Eigen::Index>(p);
    const Eigen::MatrixXd root = equicorrelation_root(p, 0.5);
    auto gen = substream(spec.seed, 0, kSimulationDomain);
    const double half_range = std::sqrt(12.0) / 2.0;
    std::uniform_real_distribution<double> uniform(-half_range, half_range);

    // eta for times 1 - kBurnIn .. n; time i lives at slot i - 1 + kBurnIn.
    std::vector<Eigen::VectorXd> eta(kBurnIn + n, Eigen::VectorXd(P));
    Eigen::VectorXd u(P);
    for (std::size_t k = 0; k < kBurnIn + n; ++k) {
        for (Eigen::Index j = 0; j < P; ++j) {
            u(j) = uniform(gen);
        }
        const long i = static_cast<long>(k) - static_cast<long>(kBurnIn) + 1;
        const double scale = (i > static_cast<long>(n / 2)) ? 2.0 : 1.0;
        eta[k] = scale * (root * u);
    }
    PanelBuilder out(n, p);
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t k = i - 1 + kBurnIn;
        const Eigen::VectorXd e = eta[k] + 0.5 * eta[k - 1] + 0.5 * eta[k - 3];
        for (std::size_t r = 0; r < p; ++r) {
            out.at(r, i) = e(static_cast<Eigen::Index>(r));
        }
    }
    return std::move(out).build();
}

Panel tvvar_panel(const DgpSpec& spec, bool piecewise) {
    const std::size_t n = spec.n;
    const std::size_t p = spec.p;
    const auto P = static_cast<Eigen::Index>(p);
    const Eigen::MatrixXd root = kms_root(p, 0.5);
    auto gen = substream(spec.seed, 0, kSimulationDomain);
    std::binomial_distribution<int> binom(10, 0.3);
    const long third = static_cast<long>((n + 2) / 3);
    const double nd = static_cast<double>(n);

    Eigen::VectorXd eps = Eigen::VectorXd::Zero(P);
    Eigen::VectorXd next(P);
    Eigen::VectorXd q(P);
    PanelBuilder out(n, p);
    for (std::size_t k = 0; k < kBurnIn + n; ++k) {
        const long i = static_cast<long>(k) - static_cast<long>(kBurnIn) + 1;
        const double envelope = (std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / nd) + 1.0) / 2.0;
        double c = 1.0;
        if (piecewise && i > third && i <= 2 * third) {
            c = 2.0;
        }
        for (Eigen::Index j = 0; j < P; ++j) {
            q(j) = static_cast<double>(binom(gen)) - 3.0;
        }
        for (Eigen::Index j = 0; j < P; ++j) {
            const Eigen::Index partner = P - 1 - j;
            double a = 0.25 * eps(j);
            if (partner != j) {
                a += 0.25 * eps(partner);
            }
            next(j) = envelope * a;
        }
        next += c * (root * q);
        eps = next;
        if (i >= 1) {
            for (std::size_t r = 0; r < p; ++r) {
                out.at(r, static_cast<std::size_t>(i)) = eps(static_cast<Eigen::Index>(r));
            }
        }
    }
    return std::move(out).build();
}

std::pair<double, double> sd_windows(std::size_t n, std::size_t p) {
    if (n >= 100) {
        const auto rot = rule_of_thumb(n, p);
        if (!rot.conflict && rot.s_max < 0.5) {
            return {rot.s_min, rot.s_max};
        }
        return {rot.s_max / 2.0, rot.s_max};
    }
    return {0.1, 0.2};
}

} // namespace

std::string to_string(Process p) {
    switch (p) {
    case Process::IID: return "IID";
    case Process::GS: return "GS";
    case Process::PS: return "PS";
    case Process::LS: return "LS";
    case Process::PLS: return "PLS";
    }
    return "?";
}

std::string to_string(Scenario s) {
    switch (s) {
    case Scenario::None: return "none";
    case Scenario::S1: return "S1";
    case Scenario::S2: return "S2";
    }
    return "?";
}

Process parse_process(const std::string& name) {
    const auto v = lower(name);
    if (v == "iid") return Process::IID;
    if (v == "gs") return Process::GS;
    if (v == "ps") return Process::PS;
    if (v == "ls") return Process::LS;
    if (v == "pls") return Process::PLS;
    fail(ErrorKind::Config, "unknown process '" + name + "' (expected IID, GS, PS, LS or PLS)");
}

Scenario parse_scenario(const std::string& name) {
    const auto v = lower(name);
    if (v.empty() || v == "none") return Scenario::None;
    if (v == "s1" || v == "1") return Scenario::S1;
    if (v == "s2" || v == "2") return Scenario::S2;
    fail(ErrorKind::Config, "unknown scenario '" + name + "' (expected none, S1 or S2)");
}

Panel generate_errors(const DgpSpec& spec) {
    require(spec.n >= 10, "simulation needs n >= 10");
    require(spec.p >= 1, "simulation needs p >= 1");
    switch (spec.process) {
    case Process::IID: return ar1_panel(spec, 0.0);
    case Process::GS: return ar1_panel(spec, 0.25);
    case Process::PS: return vma_panel(spec);
    case Process::LS: return tvvar_panel(spec, false);
    case Process::PLS: return tvvar_panel(spec, true);
    }
    fail(ErrorKind::Argument, "unknown process");
}

std::vector<std::vector<double>> local_sd_profile(const Panel& panel) {
    const std::size_t n = panel.n();
    const auto [s_min, s_max] = sd_windows(n, panel.p());
    const auto grid = ScaleGrid::uniform(panel.p(), s_min, s_max, 2);
    const auto field = compute_variance_field(panel, grid);
    std::vector<std::vector<double>> sd(panel.p(), std::vector<double>(n + 1, 0.0));
    for (std::size_t r = 0; r < panel.p(); ++r) {
        const std::size_t lo = field.first_index(r);
        const std::size_t hi = field.last_index(r);
        for (std::size_t i = 1; i <= n; ++i) {
            sd[r][i] = field.sd(r, std::clamp(i, lo, hi));
        }
    }
    return sd;
}

Panel generate_trend(std::size_t n, std::size_t p, const std::vector<std::vector<double>>& sd) {
    require(sd.size() == p, "sd profile dimension count mismatch");
    PanelBuilder out(n, p);
    const double nd = static_cast<double>(n);
    const double pd = static_cast<double>(p);
    for (std::size_t r = 0; r < p; ++r) {
        require(sd[r].size() == n + 1, "sd profile length mismatch");
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(r + 1) / pd;
        auto unscaled = [&](std::size_t i) {
            return std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / nd + phase);
        };
        double level = unscaled(1);
        out.at(r, 1) = level;
        for (std::size_t i = 2; i <= n; ++i) {
            level += sd[r][i] * (unscaled(i) - unscaled(i - 1));
            out.at(r, i) = level;
        }
    }
    return std::move(out).build();
}

Panel generate_trend(std::size_t n, std::size_t p, const Panel& errors) {
    require(errors.n() == n && errors.p() == p, "error panel shape mismatch");
    return generate_trend(n, p, local_sd_profile(errors));
}

std::vector<std::pair<std::size_t, double>> scenario_layout(Scenario scenario, double gamma, std::size_t p) {
    std::vector<std::pair<std::size_t, double>> out;
    if (scenario == Scenario::None) {
        return out;
    }
    require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
    const double gp = gamma * static_cast<double>(p);
    if (scenario == Scenario::S1) {
        const auto half = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(gp / 2.0 - kIndexTolerance)));
        for (std::size_t r = 0; r < std::min(half, p); ++r) {
            out.emplace_back(r, 0.25);
        }
        for (std::size_t r = half; r < std::min(2 * half, p); ++r) {
            out.emplace_back(r, 0.75);
        }
        return out;
    }
    const auto count =
        std::min(p, std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(gp - kIndexTolerance))));
    for (std::size_t k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.2 : 0.2 + 0.6 * static_cast<double>(k) / static_cast<double>(count - 1);
        out.emplace_back(k, t);
    }
    return out;
}

ScenarioResult apply_scenario(const Panel& panel, Scenario scenario, double gamma, double delta,
                              const Panel* reference) {
    require(delta >= 0.0, "Delta must be nonnegative");
    const Panel& ref = reference ? *reference : panel;
    require(ref.n() == panel.n() && ref.p() == panel.p(), "reference panel shape mismatch");
    ScenarioResult out;
    const auto layout = scenario_layout(scenario, gamma, panel.p());
    if (layout.empty() || delta == 0.0) {
        out.panel = panel;
        for (const auto& [r, t] : layout) {
            const auto d = static_cast<std::size_t>(std::lround(t * static_cast<double>(panel.n())));
            out.truth.push_back({r, d, t, 0.0, delta});
        }
        return out;
    }
    const std::size_t n = panel.n();
    const auto sd = local_sd_profile(ref);
    PanelBuilder builder(panel);
    for (const auto& [r, t] : layout) {
        const auto d = static_cast<std::size_t>(std::lround(t * static_cast<double>(n)));
        const double size = delta * sd[r][std::clamp<std::size_t>(d, 1, n)];
        for (std::size_t i = d + 1; i <= n; ++i) {
            builder.at(r, i) += size;
        }
        out.truth.push_back({r, d, t, size, delta});
    }
    out.panel = std::move(builder).build();
    return out;
}

SimulatedData simulate(const DgpSpec& spec) {
    const Panel errors = generate_errors(spec);
    Panel base = errors;
    if (spec.with_trend) {
        const Panel trend = generate_trend(spec.n, spec.p, errors);
        PanelBuilder b(errors);
        for (std::size_t r = 0; r < spec.p; ++r) {
            for (std::size_t i = 1; i <= spec.n; ++i) {
                b.at(r, i) += trend.at(r, i);
            }
        }
        base = std::move(b).build();
    }
    auto jumps = apply_scenario(base, spec.scenario, spec.gamma, spec.delta, &errors);
    return {std::move(jumps.panel), std::move(jumps.truth)};
}

} // namespace ajdn
