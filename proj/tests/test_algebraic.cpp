#include "trendcast/algebraic.hpp"

#include "trendcast/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace trendcast;

namespace {

TimeSeries make_series(std::vector<double> values, int step = 1) {
    return TimeSeries(0, step, std::move(values));
}

} // namespace

TEST_CASE("fit_affine on a constant window") {
    const std::vector<double> y{5, 5, 5, 5, 5};
    const AffineFit fit = fit_affine(y, 1.0);
    CHECK(fit.slope_per_minute == doctest::Approx(0.0));
    CHECK(fit.level_at_end == doctest::Approx(5.0));
    CHECK(fit.window.length == 5);
    CHECK(fit.window.end_index == 4);
}

TEST_CASE("fit_affine is exact on affine samples") {
    std::vector<double> y(100);
    for (std::size_t k = 0; k < y.size(); ++k) {
        y[k] = 3.0 + 2.0 * static_cast<double>(k);
    }
    const AffineFit fit = fit_affine(y, 1.0);
    CHECK(oracles::rel_err(fit.slope_per_minute, 2.0) <= 1e-9);
    CHECK(oracles::rel_err(fit.level_at_end, 201.0) <= 1e-9);

    // any window size >= 2 and any step
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 200;
        const double h = 0.25 + oracles::uniform01(rng) * 10.0;
        const double a = oracles::uniform01(rng) * 20.0 - 10.0;
        const double b = oracles::uniform01(rng) * 4.0 - 2.0;
        std::vector<double> w(n);
        for (std::size_t k = 0; k < n; ++k) {
            w[k] = a + b * static_cast<double>(k) * h;
        }
        const AffineFit f = fit_affine(w, h);
        CHECK(oracles::rel_err(f.slope_per_minute, b) <= 1e-9);
        CHECK(oracles::rel_err(f.level_at_end, a + b * static_cast<double>(n - 1) * h) <= 1e-9);
    }
}

TEST_CASE("fit_affine matches the normal-equations oracle on random windows") {
    std::mt19937_64 rng(20140601);
    std::vector<double> y(100);
    for (int trial = 0; trial < 1000; ++trial) {
        for (double& v : y) {
            v = oracles::uniform01(rng) * 100.0;
        }
        const AffineFit fit = fit_affine(y, 1.0);
        const oracles::NaiveFit want = oracles::normal_equations_fit(y, 1.0);
        CHECK(oracles::rel_err(fit.slope_per_minute, want.slope_per_minute) <= 1e-10);
        CHECK(oracles::rel_err(fit.level_at_end, want.level_at_end) <= 1e-10);
    }
}

TEST_CASE("fit_affine rejects degenerate input") {
    CHECK_THROWS_AS(fit_affine(std::vector<double>{1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_affine(std::vector<double>{1.0, 2.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_affine(std::vector<double>{1.0, oracles::kNaN}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("reversing the window negates the slope") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> y(3 + rng() % 60);
        for (double& v : y) {
            v = oracles::uniform01(rng) * 50.0 - 25.0;
        }
        std::vector<double> rev(y.rbegin(), y.rend());
        const double forward = fit_affine(y, 1.0).slope_per_minute;
        const double backward = fit_affine(rev, 1.0).slope_per_minute;
        if (forward == 0.0) {
            CHECK(std::fabs(backward) < 1e-15);
        } else {
            CHECK(oracles::rel_err(backward, -forward) < 1e-12);
        }
    }
}

TEST_CASE("scaling the samples scales slope and level") {
    std::mt19937_64 rng(8);
    std::vector<double> y(80);
    for (double& v : y) {
        v = oracles::uniform01(rng) * 30.0;
    }
    const AffineFit base = fit_affine(y, 1.0);

    std::vector<double> doubled(y);
    for (double& v : doubled) {
        v *= 2.0;
    }
    const AffineFit twice = fit_affine(doubled, 1.0);
    CHECK(twice.slope_per_minute == 2.0 * base.slope_per_minute);
    CHECK(twice.level_at_end == 2.0 * base.level_at_end);

    std::vector<double> scaled(y);
    for (double& v : scaled) {
        v *= 3.7;
    }
    const AffineFit odd = fit_affine(scaled, 1.0);
    CHECK(oracles::rel_err(odd.slope_per_minute, 3.7 * base.slope_per_minute) < 1e-12);
    CHECK(oracles::rel_err(odd.level_at_end, 3.7 * base.level_at_end) < 1e-12);
}

TEST_CASE("discrete slope tracks the integral form within the quadrature bias") {
    // On affine-plus-quadratic input the trapezoid evaluation of the integral
    // functional differs from the discrete sum by at most 2 h^2 / T^2
    // relative, which is why the sum form is used.
    for (const std::size_t n : {25UL, 100UL, 400UL}) {
        for (const double h : {0.5, 1.0, 2.0}) {
            const double T = h * static_cast<double>(n - 1);
            std::vector<double> y(n);
            const double alpha = 4.0, beta = 0.3, gamma = 0.05;
            for (std::size_t k = 0; k < n; ++k) {
                const double tau = h * static_cast<double>(k);
                y[k] = alpha + beta * tau + gamma * tau * tau;
            }
            const double discrete = fit_affine(y, h).slope_per_minute;
            const double quadrature = oracles::trapezoid_slope(y, h);
            const double bound = 2.0 * h * h / (T * T);
            CHECK(oracles::rel_err(quadrature, discrete) <= bound * (1.0 + 1e-9) + 1e-15);
        }
    }
}

TEST_CASE("slope_series recovers a global ramp slope everywhere") {
    std::vector<double> v(300);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = 1.5 + 0.25 * static_cast<double>(i);
    }
    const AlignedSeries s = slope_series(make_series(std::move(v)), 100);
    CHECK(s.first_valid() == 99);
    for (std::size_t i = 99; i <= s.last_valid(); ++i) {
        CHECK(oracles::rel_err(s.at(i), 0.25) <= 1e-9);
    }
}

TEST_CASE("slope_series of a constant is zero") {
    const AlignedSeries s = slope_series(make_series(std::vector<double>(150, 9.0)), 100);
    for (std::size_t i = s.first_valid(); i <= s.last_valid(); ++i) {
        CHECK(std::fabs(s.at(i)) < 1e-12);
    }
}

TEST_CASE("alternating noise moves the fitted slope by the known tiny offset") {
    // Adding (-1)^k to a ramp shifts each 100-sample slope by exactly
    // 12*(-50)/(100*9999) when the window starts on an even index, and by the
    // opposite sign when it starts on an odd one.
    std::vector<double> v(300);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = 0.4 * static_cast<double>(i) + ((i % 2 == 0) ? 1.0 : -1.0);
    }
    const AlignedSeries s = slope_series(make_series(std::move(v)), 100);
    const double offset = 12.0 * 50.0 / (100.0 * 9999.0);
    for (std::size_t i = 99; i <= s.last_valid(); ++i) {
        const double expected = 0.4 + ((i % 2 == 0) ? offset : -offset);
        CHECK(oracles::rel_err(s.at(i), expected) < 1e-9);
        CHECK(std::fabs(s.at(i) - 0.4) < 0.01);
    }
}

TEST_CASE("slope_series needs enough history") {
    CHECK_THROWS_AS(slope_series(make_series({1, 2, 3}), 100), InsufficientHistoryError);
    CHECK_THROWS_AS(slope_series(make_series({1, 2, 3}), 1), std::invalid_argument);
}
