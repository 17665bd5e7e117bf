#include <doctest.h>

#include "ajdn/errors.hpp"
#include "ajdn/simulate.hpp"
#include "ajdn/smoother.hpp"
#include "ajdn/tuning.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace ajdn;

namespace {

std::vector<double> ar1(std::size_t L, double phi, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    std::vector<double> x(L);
    double prev = 0.0;
    for (std::size_t k = 0; k < L + 100; ++k) {
        prev = phi * prev + z(gen);
        if (k >= 100) {
            x[k - 100] = prev;
        }
    }
    return x;
}

// gamma(j) = phi^j / (1 - phi^2) plugged into the ratio.
double closed_form_ratio(double phi, std::size_t m, std::size_t m_max) {
    std::vector<double> g(m_max);
    for (std::size_t j = 0; j < m_max; ++j) {
        g[j] = std::pow(phi, static_cast<double>(j)) / (1.0 - phi * phi);
    }
    return lrv_ratio_from_autocov(g, m, m_max);
}

} // namespace

TEST_CASE("rule of thumb at n = 1000") {
    const auto rot = rule_of_thumb(1000, 100);
    CHECK(rot.s_min == doctest::Approx(0.11045621063496666).epsilon(1e-12));
    CHECK(rot.s_max == doctest::Approx(0.13484098889281113).epsilon(1e-12));
    CHECK(rot.s_min < rot.s_max);
    CHECK_FALSE(rot.conflict);
    CHECK(rot.s_prime_max == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(rot.lrv_target == doctest::Approx(1.1230501032059212).epsilon(1e-12));
    CHECK_THROWS_AS(rule_of_thumb(99, 1), Error);
}

TEST_CASE("rule of thumb is monotone in n") {
    double last_sp = 1.0, last_target = 10.0;
    for (std::size_t n : {100u, 500u, 1000u, 5000u, 20000u}) {
        const auto rot = rule_of_thumb(n, 10);
        CHECK(rot.s_prime_max < last_sp);
        CHECK(rot.lrv_target < last_target);
        last_sp = rot.s_prime_max;
        last_target = rot.lrv_target;
    }
}

TEST_CASE("block upper bounds") {
    CHECK(ns_prime_max(500) == 8);
    CHECK(ns_prime_max(1000) == 10);
    CHECK(ns_prime_max(2000) == 13);
    CHECK(ns_prime_max(3000) == 14);
}

TEST_CASE("closed-form AR(1) ratio") {
    const double expected[] = {1.6666641235351562, 1.333331298828125, 1.2121193625710227, 1.153151393581081,
                               1.119270765018363,  1.097533159163987, 1.0824671261269425, 1.0714257687969002,
                               1.0629902485548008, 1.0563363595701212};
    for (std::size_t m = 1; m <= 10; ++m) {
        CHECK(closed_form_ratio(0.25, m, 10) == doctest::Approx(expected[m - 1]).epsilon(1e-12));
    }
}

TEST_CASE("autocovariances use the 1/(L - h) divisor") {
    const std::vector<double> x = {1.0, 3.0, 2.0, 6.0};
    const auto g = autocovariances(x, 2);
    // Centred: -2, 0, -1, 3.
    CHECK(g[0] == doctest::Approx(14.0 / 4.0));
    CHECK(g[1] == doctest::Approx(-3.0 / 3.0));
    CHECK(g[2] == doctest::Approx(2.0 / 2.0));
}

TEST_CASE("LRV ratio properties") {
    const auto x = ar1(20000, 0.25, 5);
    CHECK(lrv_ratio(x, 1, 10) == doctest::Approx(lrv_ratio(std::vector<double>(x.begin(), x.end()), 1, 10)));
    std::vector<double> scaled(x);
    for (auto& v : scaled) {
        v *= -4.0;
    }
    for (std::size_t m = 1; m <= 10; ++m) {
        CHECK(lrv_ratio(scaled, m, 10) == doctest::Approx(lrv_ratio(x, m, 10)).epsilon(1e-10));
    }
    double last = 1e9;
    for (std::size_t m = 1; m <= 10; ++m) {
        const double v = lrv_ratio(x, m, 10);
        CHECK(v < last);
        last = v;
    }
    CHECK_THROWS_AS(lrv_ratio(std::vector<double>(39, 0.0), 1, 10), Error);
    CHECK_THROWS_AS(lrv_ratio(std::vector<double>(40, 0.0), 1, 10), Error);
}

TEST_CASE("s' selection") {
    const auto white = ar1(100000, 0.0, 1);
    for (std::size_t m = 1; m <= 10; ++m) {
        CHECK(lrv_ratio(white, m, 10) == doctest::Approx(1.0).epsilon(0.05));
    }
    CHECK(select_s_prime(white, 10, 1.1230501032059212) == 1);
    const auto gs = ar1(100000, 0.25, 2);
    CHECK(select_s_prime(gs, 10, 1.1230501032059212) == 5);
    // Unreachable target: boundary.
    CHECK(select_s_prime(gs, 10, 0.5) == 10);
    CHECK(select_s_prime(gs, 10, 5.0) == 1);
    CHECK(select_s_prime_pooled({gs, gs}, 10, 1.1230501032059212) == 5);
}

TEST_CASE("jump-free segments") {
    std::vector<JumpRecord> recs(3);
    recs[0].dimension = 0;
    recs[0].index = 300;
    recs[1].dimension = 0;
    recs[1].index = 700;
    recs[2].dimension = 1;
    recs[2].index = 100;
    recs[2].refined_index = 120;
    const auto segs = jump_free_segments(1000, 3, recs, 50);
    REQUIRE(segs.size() == 3);
    CHECK(segs[0].lo == 351);
    CHECK(segs[0].hi == 650);
    CHECK(segs[1].lo == 171);
    CHECK(segs[1].hi == 1000);
    CHECK(segs[2].lo == 1);
    CHECK(segs[2].hi == 1000);
}

TEST_CASE("GM criterion") {
    const std::vector<double> sse = {1000.0, 1000.0};
    const std::vector<std::size_t> m = {3, 3};
    CHECK(gm_criterion(sse, m, 1000) == doctest::Approx(2.0 * 3.0 * std::log(1000.0)));
    const std::vector<std::size_t> none = {0, 0};
    const std::vector<double> half = {500.0, 250.0};
    CHECK(gm_criterion(half, none, 1000) ==
          doctest::Approx(1000.0 * std::log(0.5) + 1000.0 * std::log(0.25)));
    CHECK_THROWS_AS(gm_criterion(std::vector<double>{0.0}, std::vector<std::size_t>{0}, 10), Error);
}

TEST_CASE("local-linear smoother reproduces lines and respects breaks") {
    std::vector<double> line(200);
    for (std::size_t k = 0; k < line.size(); ++k) {
        line[k] = 3.0 - 0.02 * static_cast<double>(k);
    }
    const auto fit = local_linear_fit(line, 7.5);
    for (std::size_t k = 0; k < line.size(); ++k) {
        CHECK(fit[k] == doctest::Approx(line[k]).epsilon(1e-10));
    }
    std::vector<double> step(200);
    for (std::size_t k = 0; k < step.size(); ++k) {
        step[k] = std::sin(static_cast<double>(k) / 30.0) + (k >= 120 ? 5.0 : 0.0);
    }
    double with = 0.0, without = 0.0;
    for (double r : piecewise_detrend(step, {120})) {
        with += r * r;
    }
    for (double r : piecewise_detrend(step, {})) {
        without += r * r;
    }
    CHECK(with < 0.01 * without);
    CHECK(rot_bandwidth(step) >= 2.0);
}

TEST_CASE("penalized BIC selection") {
    std::mt19937_64 gen(6);
    std::normal_distribution<double> z;
    PanelBuilder b(300, 2);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t i = 1; i <= 300; ++i) {
            b.at(r, i) = z(gen) + (r == 0 && i > 150 ? 4.0 : 0.0);
        }
    }
    const auto panel = std::move(b).build();
    HyperParams a{0.05, 0.1, 2.0 / 300, 0.05, 50, 1};
    HyperParams c{0.05, 0.1, 1.0 / 300, 0.05, 50, 1};
    HyperParams d{0.04, 0.1, 1.0 / 300, 0.05, 50, 1};
    // Runners returning fixed records isolate the selection logic.
    JumpRecord truth;
    truth.dimension = 0;
    truth.index = 150;
    SUBCASE("single candidate returned unchanged") {
        const auto sel = penalized_bic(panel, {a}, [&](const Panel&, const HyperParams&) {
            return std::vector<JumpRecord>{truth};
        });
        CHECK(sel.best == a);
        CHECK(sel.table.size() == 1);
    }
    SUBCASE("the true segmentation beats none") {
        const auto sel = penalized_bic(panel, {a, c}, [&](const Panel&, const HyperParams& hp) {
            return hp == c ? std::vector<JumpRecord>{truth} : std::vector<JumpRecord>{};
        });
        CHECK(sel.best == c);
        CHECK(sel.table[0].gm > sel.table[1].gm);
    }
    SUBCASE("ties go to the smaller s' then the smaller scales") {
        const auto sel = penalized_bic(panel, {a, c, d}, [&](const Panel&, const HyperParams&) {
            return std::vector<JumpRecord>{truth};
        });
        CHECK(sel.best == d);
    }
    SUBCASE("failing candidates are reported, all failing is an error") {
        const auto sel = penalized_bic(panel, {a, c}, [&](const Panel&, const HyperParams& hp) {
            if (hp == a) {
                fail(ErrorKind::Argument, "bad candidate");
            }
            return std::vector<JumpRecord>{};
        });
        CHECK(sel.best == c);
        CHECK_FALSE(sel.table[0].ok);
        CHECK(sel.table[0].error == "bad candidate");
        CHECK_THROWS_AS(penalized_bic(panel, {a}, [&](const Panel&, const HyperParams&) -> std::vector<JumpRecord> {
                            fail(ErrorKind::Argument, "nope");
                        }),
                        Error);
    }
}

TEST_CASE("hyperparameter invariants") {
    CHECK_NOTHROW(validate_hyperparams(HyperParams{0.05, 0.1, 0.01, 0.05, 10, 1}, 1000));
    CHECK_THROWS_AS(validate_hyperparams(HyperParams{0.1, 0.1, 0.01, 0.05, 10, 1}, 1000), Error);
    CHECK_THROWS_AS(validate_hyperparams(HyperParams{0.05, 0.1, 0.0005, 0.05, 10, 1}, 1000), Error);
    CHECK_THROWS_AS(validate_hyperparams(HyperParams{0.005, 0.1, 0.006, 0.05, 10, 1}, 1000), Error);
}
