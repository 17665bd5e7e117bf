#include <doctest.h>

#include "ajdn/errors.hpp"
#include "ajdn/variance.hpp"

#include <cmath>
#include <random>

using namespace ajdn;

namespace {

Panel noise(std::size_t n, std::size_t p, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    std::vector<double> v(n * p);
    for (auto& x : v) {
        x = z(gen);
    }
    return Panel(n, p, std::move(v));
}

} // namespace

TEST_CASE("window index sets") {
    const auto w = variance_windows(20, 10, 0.1, 0.25);
    CHECK(w.left_lo == 5);
    CHECK(w.left_hi == 8);
    CHECK(w.right_lo == 12);
    CHECK(w.right_hi == 15);
}

TEST_CASE("pooled variance on a hand example") {
    std::vector<double> y(20);
    for (std::size_t j = 1; j <= 20; ++j) {
        y[j - 1] = static_cast<double>(j % 3);
    }
    CHECK(local_variance(Panel(20, 1, y), 0, 10, 0.1, 0.25) == doctest::Approx(0.6875).epsilon(1e-14));
}

TEST_CASE("field agrees with the direct estimator") {
    const auto panel = noise(300, 3, 5);
    const auto grid = ScaleGrid::uniform(3, 0.04, 0.12, 3);
    const auto field = compute_variance_field(panel, grid);
    for (std::size_t r = 0; r < 3; ++r) {
        CHECK(field.first_index(r) == 36);
        CHECK(field.last_index(r) == 264);
        CHECK_FALSE(field.defined(r, 35));
        CHECK_FALSE(field.defined(r, 265));
        for (std::size_t i = field.first_index(r); i <= field.last_index(r); i += 7) {
            CHECK(field.variance(r, i) == doctest::Approx(local_variance(panel, r, i, 0.04, 0.12)).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS((void)field.variance(0, 10), Error);
}

TEST_CASE("variance ignores a level shift between the windows") {
    auto panel = noise(400, 1, 9);
    PanelBuilder b(panel);
    for (std::size_t i = 201; i <= 400; ++i) {
        b.at(0, i) += 50.0;
    }
    const auto shifted = std::move(b).build();
    CHECK(local_variance(shifted, 0, 200, 0.02, 0.1) == doctest::Approx(local_variance(panel, 0, 200, 0.02, 0.1)));
}

TEST_CASE("variance scales quadratically") {
    const auto panel = noise(200, 1, 2);
    const auto scaled = panel.scaled_dimension(0, 3.0);
    CHECK(local_variance(scaled, 0, 100, 0.05, 0.2) == doctest::Approx(9.0 * local_variance(panel, 0, 100, 0.05, 0.2)));
}

TEST_CASE("constant data is degenerate") {
    const Panel panel(100, 1, std::vector<double>(100, 4.2));
    try {
        (void)local_variance(panel, 0, 50, 0.05, 0.2);
        FAIL("expected a degenerate-variance error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Degenerate);
    }
    const auto field = compute_variance_field(panel, ScaleGrid::uniform(1, 0.05, 0.2, 2));
    CHECK_THROWS_AS((void)field.sd(0, 50), Error);
}

TEST_CASE("empty window is an argument error") {
    const auto panel = noise(20, 1, 1);
    try {
        (void)local_variance(panel, 0, 2, 0.1, 0.2);
        FAIL("expected an argument error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Argument);
    }
}
