// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/array_core.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

using namespace uvbeam;

namespace {

const ArrayConfig kArray25{25, 0.015, 343.0};

} // namespace

TEST_CASE("sensor_positions: odd N is centered on the middle sensor")
{
    const auto pos = sensor_positions({3, 0.01, 343.0});
    REQUIRE(pos.size() == 9);
    std::set<std::pair<int, int>> idx;
    for (const auto& p : pos)
        idx.emplace(p.n1, p.n2);
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            CHECK(idx.count({a, b}) == 1);
    const auto center = std::find_if(pos.begin(), pos.end(), [](const auto& p) { return p.n1 == 0 && p.n2 == 0; });
    CHECK(center->x_m == 0.0);
    CHECK(center->y_m == 0.0);
}

TEST_CASE("sensor_positions: extreme positions of the 25 x 25 array")
{
    const auto pos = sensor_positions(kArray25);
    REQUIRE(pos.size() == 625);
    double lo = 0, hi = 0;
    for (const auto& p : pos) {
        lo = std::min({lo, p.x_m, p.y_m});
        hi = std::max({hi, p.x_m, p.y_m});
        CHECK(p.x_m == doctest::Approx(p.n1 * 0.015));
    }
    CHECK(hi == doctest::Approx(0.18).epsilon(1e-15));
    CHECK(lo == doctest::Approx(-0.18).epsilon(1e-15));
}

TEST_CASE("sensor_positions: even N keeps the origin on a sensor")
{
    const ArrayConfig cfg{4, 0.01, 343.0};
    CHECK(cfg.index_lo() == -2);
    CHECK(cfg.index_hi() == 1);
    const auto pos = sensor_positions(cfg);
    CHECK(pos.size() == 16);
    CHECK(std::any_of(pos.begin(), pos.end(), [](const auto& p) { return p.x_m == 0.0 && p.y_m == 0.0; }));
}

TEST_CASE("sensor_positions: odd N is closed under negation")
{
    for (int n : {3, 5, 9, 25}) {
        const auto pos = sensor_positions({n, 0.02, 343.0});
        std::set<std::pair<double, double>> pts;
        for (const auto& p : pos)
            pts.emplace(p.x_m, p.y_m);
        for (const auto& p : pos)
            CHECK(pts.count({-p.x_m, -p.y_m}) == 1);
    }
}

TEST_CASE("ArrayConfig validation")
{
    CHECK_THROWS_AS(ArrayConfig({2, 0.01, 343.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ArrayConfig({5, 0.0, 343.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ArrayConfig({5, 0.01, -1.0}).validate(), std::invalid_argument);
    CHECK_NOTHROW(ArrayConfig({3, 0.01, 343.0}).validate());
    CHECK(ArrayConfig{}.sound_speed_m_s == 343.0);
}

TEST_CASE("strict_band: odd branch for the 25 x 25 example")
{
    const FrequencyBand b = strict_band(kArray25);
    // 343 / (25 * 0.015) and 12 times that.
    CHECK(b.f_min_hz == doctest::Approx(914.6666666666666).epsilon(1e-14));
    CHECK(b.f_max_hz == doctest::Approx(10976.0).epsilon(1e-14));
    CHECK(b.kind == BandKind::strict);
}

TEST_CASE("strict_band: even branch collapses at N = 4")
{
    const FrequencyBand b = strict_band({4, 0.01, 343.0});
    CHECK(b.f_min_hz == doctest::Approx(8575.0).epsilon(1e-14));
    CHECK(b.f_max_hz == doctest::Approx(8575.0).epsilon(1e-14));
}

TEST_CASE("strict_band: upper / lower ratio is (N-1)/2 for odd N")
{
    for (int n : {3, 5, 7, 25, 101}) {
        const FrequencyBand b = strict_band({n, 0.013, 340.0});
        CHECK(b.f_max_hz / b.f_min_hz == doctest::Approx((n - 1) / 2.0).epsilon(1e-14));
    }
}

TEST_CASE("radius_for_frequency")
{
    CHECK(radius_for_frequency(kArray25, 16000.0) == doctest::Approx(17.49271137026239).epsilon(1e-14));
    CHECK(radius_for_frequency({100, 0.01, 343.0}, 16000.0) == doctest::Approx(46.647230320699705).epsilon(1e-14));
    CHECK_THROWS_AS(radius_for_frequency(kArray25, 0.0), std::invalid_argument);
}

TEST_CASE("band edges map to R = 1 and R = half width")
{
    for (int n : {3, 4, 7, 10, 25, 64, 101}) {
        const ArrayConfig cfg{n, 0.011, 343.0};
        const FrequencyBand b = strict_band(cfg);
        CHECK(radius_for_frequency(cfg, b.f_min_hz) == doctest::Approx(1.0).epsilon(1e-15));
        const double top = (n % 2 == 1) ? (n - 1) / 2.0 : (n - 2) / 2.0;
        CHECK(radius_for_frequency(cfg, b.f_max_hz) == doctest::Approx(top).epsilon(1e-14));
        CHECK(cfg.half_width() == top);
    }
    CHECK(radius_for_frequency(kArray25, 343.0 / (25 * 0.015)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("spacing_bounds")
{
    const SpacingBounds s = spacing_bounds(kArray25, 0.02);
    CHECK(s.upper_m == doctest::Approx(0.0096).epsilon(1e-14));
    CHECK(s.lower_m == doctest::Approx(0.0008).epsilon(1e-14));

    // Large N recovers the half-wavelength sampling bound.
    const SpacingBounds big = spacing_bounds({100001, 0.01, 343.0}, 0.02);
    CHECK(big.upper_m == doctest::Approx(0.01).epsilon(1e-5));
    CHECK(big.upper_m < 0.01);

    CHECK_THROWS_AS(spacing_bounds(kArray25, 0.0), std::invalid_argument);
}

TEST_CASE("spacing upper bound agrees with the strict band upper frequency (odd N)")
{
    for (int n : {5, 11, 25, 99}) {
        const ArrayConfig cfg{n, 0.017, 343.0};
        const double f_top = strict_band(cfg).f_max_hz;
        const SpacingBounds s = spacing_bounds(cfg, cfg.sound_speed_m_s / f_top);
        // At f_top the spacing sits exactly on the upper bound.
        CHECK(s.upper_m == doctest::Approx(cfg.spacing_m).epsilon(1e-14));
        const double f_low = strict_band(cfg).f_min_hz;
        CHECK(spacing_bounds(cfg, cfg.sound_speed_m_s / f_low).lower_m == doctest::Approx(cfg.spacing_m).epsilon(1e-14));
    }
}
