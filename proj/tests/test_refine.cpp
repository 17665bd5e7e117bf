#include <doctest.h>

#include "ajdn/errors.hpp"
#include "ajdn/refine.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace ajdn;

TEST_CASE("window geometry") {
    const CusumWindow w{0.5, 0.1, -0.5};
    CHECK(w.wide_lo() == doctest::Approx(0.35));
    CHECK(w.wide_hi() == doctest::Approx(0.65));
    CHECK(w.narrow_lo() == doctest::Approx(0.4));
    CHECK(w.narrow_hi() == doctest::Approx(0.6));
}

TEST_CASE("CUSUM profile on a linear series") {
    std::vector<double> y(20);
    std::iota(y.begin(), y.end(), 1.0);
    // Wide indices 7..13 (sum 70), narrow 8..12: V(t) = sum_{7}^{t} j - (t - 6)/7 * 70.
    const auto prof = cusum_profile(y, CusumWindow{0.5, 0.1, -0.5});
    REQUIRE(prof.indices == std::vector<std::size_t>{8, 9, 10, 11, 12});
    const std::vector<double> expected = {-5.0, -6.0, -6.0, -5.0, -3.0};
    for (std::size_t k = 0; k < expected.size(); ++k) {
        CHECK(prof.values[k] == doctest::Approx(expected[k]).epsilon(1e-12));
    }
    // |V| ties between 9 and 10; the earlier index wins.
    CHECK(refine_jump(Panel(20, 1, y), 0, CusumWindow{0.5, 0.1, -0.5}) == 9);
}

TEST_CASE("noiseless step is located exactly from an offset start") {
    const std::size_t n = 500;
    for (std::size_t d : {180u, 250u, 333u}) {
        std::vector<double> y(n, 0.0);
        for (std::size_t i = d + 1; i <= n; ++i) {
            y[i - 1] = 2.0;
        }
        const Panel panel(n, 1, y);
        for (int offset : {-8, -3, 0, 4, 9}) {
            const double centre = (static_cast<double>(d) + offset) / static_cast<double>(n);
            CHECK(refine_jump(panel, 0, CusumWindow{centre, 0.04, -0.5}) == d);
        }
    }
}

TEST_CASE("profile is invariant to level shifts") {
    std::mt19937_64 gen(4);
    std::normal_distribution<double> z;
    std::vector<double> y(300), shifted(300);
    for (std::size_t k = 0; k < y.size(); ++k) {
        y[k] = z(gen);
        shifted[k] = y[k] + 123.0;
    }
    const CusumWindow w{0.4, 0.05, -0.5};
    const auto a = cusum_profile(y, w);
    const auto b = cusum_profile(shifted, w);
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        CHECK(b.values[k] == doctest::Approx(a.values[k]).epsilon(1e-9));
    }
}

TEST_CASE("windows are clamped to the sample and degenerate ones rejected") {
    std::vector<double> y(20, 1.0);
    CHECK_THROWS_AS(cusum_profile(y, CusumWindow{0.02, 0.01, -0.5}), Error);
    CHECK_THROWS_AS(cusum_profile(y, CusumWindow{0.5, 0.0, -0.5}), Error);
    CHECK_THROWS_AS(cusum_profile(y, CusumWindow{0.5, 0.1, -1.0}), Error);
    // Partially outside: still valid after clamping.
    const auto prof = cusum_profile(y, CusumWindow{0.1, 0.1, -0.5});
    CHECK(prof.indices.front() == 1);
}

TEST_CASE("refine_all fills every record") {
    const std::size_t n = 400;
    std::vector<double> y(n * 2, 0.0);
    for (std::size_t i = 151; i <= n; ++i) {
        y[i - 1] = 1.0;
    }
    for (std::size_t i = 271; i <= n; ++i) {
        y[n + i - 1] = -1.0;
    }
    const Panel panel(n, 2, y);
    std::vector<JumpRecord> recs(2);
    recs[0].dimension = 0;
    recs[0].index = 153;
    recs[0].time = 153.0 / n;
    recs[1].dimension = 1;
    recs[1].index = 268;
    recs[1].time = 268.0 / n;
    refine_all(panel, recs, 0.02, -0.5);
    CHECK(recs[0].refined_index == 150u);
    CHECK(recs[1].refined_index == 270u);
    CHECK(*recs[1].refined_time == doctest::Approx(270.0 / n));
}
