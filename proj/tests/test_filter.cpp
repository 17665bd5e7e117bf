#include <doctest.h>

#include "ajdn/errors.hpp"
#include "ajdn/filter.hpp"
#include "ajdn/filter_bank.hpp"

#include <cmath>
#include <random>

using namespace ajdn;

TEST_CASE("filter values at reference points") {
    const auto W = JumpPassFilter::optimal();
    CHECK(W(0.5) == doctest::Approx(1.2638999999999818).epsilon(1e-12));
    CHECK(W(0.25) == doctest::Approx(2.542971044921873).epsilon(1e-12));
    CHECK(W(0.75) == doctest::Approx(-1.5585584472656535).epsilon(1e-12));
    CHECK(W(-0.75) == doctest::Approx(1.5585584472656535).epsilon(1e-12));
    CHECK(W(0.0) == 0.0);
    CHECK(W(1.0001) == 0.0);
    CHECK(W(-3.0) == 0.0);
    CHECK(eval_filter(W, 0.5) == W(0.5));
}

TEST_CASE("filter is odd") {
    const auto W = JumpPassFilter::optimal();
    for (double x = 0.0; x <= 1.2; x += 0.013) {
        CHECK(W(-x) == -W(x));
    }
}

TEST_CASE("validation report for the optimal filter") {
    const auto report = validate_filter(JumpPassFilter::optimal(), 10000);
    CHECK(report.ok());
    const auto* unit = report.find("unit_integral");
    REQUIRE(unit);
    CHECK(unit->value == doctest::Approx(1.0000226190475416).epsilon(1e-9));
    const auto* m1 = report.find("moment_1");
    REQUIRE(m1);
    CHECK(m1->value == doctest::Approx(3.619047612346549e-05).epsilon(1e-6));
    const auto* m3 = report.find("moment_3");
    REQUIRE(m3);
    CHECK_FALSE(m3->required);
    CHECK(m3->value == doctest::Approx(-0.3407146031746606).epsilon(1e-6));
}

TEST_CASE("validation rejects a filter without unit integral") {
    auto W = JumpPassFilter::optimal();
    for (auto& c : W.coefficients) {
        c *= 2.0;
    }
    CHECK_FALSE(validate_filter(W, 2000).ok());
}

TEST_CASE("validation needs enough quadrature points") {
    CHECK_THROWS_AS(validate_filter(JumpPassFilter::optimal(), 999), Error);
}

TEST_CASE("compute_H against hand-evaluated sums") {
    const std::size_t n = 20;
    std::vector<double> quad(n), step(n);
    for (std::size_t j = 1; j <= n; ++j) {
        quad[j - 1] = static_cast<double>(j * j);
        step[j - 1] = j > 10 ? 1.0 : 0.0;
    }
    const auto W = JumpPassFilter::optimal();
    CHECK(compute_H(Panel(n, 1, quad), 10, 0.25, 0, W) == doctest::Approx(4.643651313086557).epsilon(1e-10));
    CHECK(compute_H(Panel(n, 1, step), 10, 0.25, 0, W) == doctest::Approx(1.536995978021242).epsilon(1e-12));
}

TEST_CASE("compute_H rejects windows that leave the sample") {
    const auto panel = Panel::zeros(100, 1);
    const auto W = JumpPassFilter::optimal();
    CHECK_THROWS_AS(compute_H(panel, 5, 0.1, 0, W), Error);
    CHECK_THROWS_AS(compute_H(panel, 95, 0.1, 0, W), Error);
    CHECK_THROWS_AS(compute_H(panel, 50, 0.1, 1, W), Error);
}

TEST_CASE("compute_H annihilates constants and is linear") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> z;
    const std::size_t n = 300;
    std::vector<double> a(n), b(n), c(n, 7.5);
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = z(gen);
        b[k] = z(gen);
    }
    std::vector<double> mix(n);
    for (std::size_t k = 0; k < n; ++k) {
        mix[k] = 2.0 * a[k] - 3.0 * b[k] + c[k];
    }
    const auto W = JumpPassFilter::optimal();
    const double ha = compute_H(Panel(n, 1, a), 150, 0.1, 0, W);
    const double hb = compute_H(Panel(n, 1, b), 150, 0.1, 0, W);
    const double hc = compute_H(Panel(n, 1, c), 150, 0.1, 0, W);
    CHECK(std::fabs(hc) <= 1e-10 * std::sqrt(30.0) * 7.5);
    CHECK(compute_H(Panel(n, 1, mix), 150, 0.1, 0, W) == doctest::Approx(2.0 * ha - 3.0 * hb).epsilon(1e-10));
}

TEST_CASE("filter bank matches the direct statistic") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> z;
    const std::size_t n = 400;
    std::vector<double> y(n);
    for (auto& v : y) {
        v = z(gen);
    }
    const Panel panel(n, 1, y);
    const auto W = JumpPassFilter::optimal();
    const std::vector<double> scales = {0.02, 0.035, 0.05, 0.0731};
    const FilterBank bank(n, scales, W);
    for (std::size_t j = 0; j < scales.size(); ++j) {
        CHECK(bank.normaliser(j) == doctest::Approx(1.0 / std::sqrt(n * scales[j])));
        for (std::size_t i = 40; i <= 360; i += 17) {
            CHECK(bank.apply(panel.series(0), i, j) == doctest::Approx(compute_H(panel, i, scales[j], 0, W)).epsilon(1e-12));
        }
    }
}

TEST_CASE("filter bank set shares identical grids") {
    const auto grid = ScaleGrid::uniform(5, 0.05, 0.1, 3);
    const FilterBankSet set(200, grid, JumpPassFilter::optimal());
    CHECK(set.distinct_banks() == 1);
    CHECK(&set.for_dimension(0) == &set.for_dimension(4));
}
