// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/evaluate.hpp"
#include "uvbeam/wavesim.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace uvbeam;

namespace {

constexpr double kPi = std::numbers::pi;
const ArrayConfig kArray25{25, 0.015, 343.0};

WeightMatrix from_grid(double f, ComplexGrid w)
{
    WeightMatrix wm;
    wm.f_hz = f;
    wm.weights = std::move(w);
    return wm;
}

} // namespace

TEST_CASE("broadside wave reaches every sensor in phase")
{
    const ComplexGrid p = sensor_snapshot(kArray25, {0.0, 1.3, 8000.0, 2.0, 0.5});
    for (const cplx& v : p.flat())
        CHECK(std::abs(v - std::polar(2.0, 0.5)) < 1e-15);
}

TEST_CASE("zero amplitude gives a silent snapshot")
{
    const ComplexGrid p = sensor_snapshot(kArray25, {0.7, 0.2, 8000.0, 0.0, 0.0});
    for (const cplx& v : p.flat())
        CHECK(v == cplx{});
}

TEST_CASE("grazing wave at half-wavelength spacing alternates sign")
{
    const double f = 343.0 / (2 * 0.015);
    const ComplexGrid p = sensor_snapshot(kArray25, {kPi / 2, 0.0, f, 1.0, 0.0});
    for (int i = p.lo(); i <= p.hi(); ++i)
        for (int j = p.lo(); j <= p.hi(); ++j)
            CHECK(std::abs(p(i, j) - cplx(i % 2 == 0 ? 1.0 : -1.0, 0.0)) < 1e-12);
}

TEST_CASE("beamformer output matches the directivity evaluator")
{
    std::mt19937_64 rng(99);
    for (const ArrayConfig& cfg : {kArray25, ArrayConfig{24, 0.012, 343.0}}) {
        for (double f : {2500.0, 11000.0}) {
            const WeightMatrix wm = from_grid(f, oracle::random_grid(cfg.n_per_axis, rng));
            double l1 = 0.0;
            for (const cplx& v : wm.weights.flat())
                l1 += std::abs(v);
            for (const PlaneWaveSource& s : random_sources(50, f, 7)) {
                const cplx y = beamform(wm, sensor_snapshot(cfg, s));
                CHECK(std::abs(y - directivity_at(cfg, wm, s.theta, s.phi)) < 1e-9 * l1);
            }
        }
    }
}

TEST_CASE("beamformer is linear in the wavefield")
{
    std::mt19937_64 rng(5);
    const WeightMatrix wm = from_grid(6000.0, oracle::random_grid(25, rng));
    const PlaneWaveSource a{0.3, 1.1, 6000.0, 1.5, 0.2};
    const PlaneWaveSource b{1.2, 4.0, 6000.0, 0.4, -1.0};
    ComplexGrid sum = sensor_snapshot(kArray25, a);
    const ComplexGrid pb = sensor_snapshot(kArray25, b);
    for (std::size_t k = 0; k < sum.flat().size(); ++k)
        sum.flat()[k] += pb.flat()[k];
    const cplx lhs = beamform(wm, sum);
    const cplx rhs = beamform(wm, sensor_snapshot(kArray25, a)) + beamform(wm, pb);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));

    const cplx expected = std::polar(a.amplitude, a.phase) * directivity_at(kArray25, wm, a.theta, a.phi);
    CHECK(std::abs(beamform(wm, sensor_snapshot(kArray25, a)) - expected) < 1e-9 * std::abs(expected));
}

TEST_CASE("zero weights and mismatched shapes")
{
    const ComplexGrid p = sensor_snapshot(kArray25, {0.4, 0.4, 4000.0});
    CHECK(beamform(from_grid(4000.0, ComplexGrid(25)), p) == cplx{});
    CHECK_THROWS_AS(beamform(from_grid(4000.0, ComplexGrid(24)), p), std::invalid_argument);
    CHECK_THROWS_AS(sensor_snapshot(kArray25, {0.4, 0.4, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(sensor_snapshot(kArray25, {0.4, 0.4, 4000.0, -1.0}), std::invalid_argument);
}

TEST_CASE("random sources cover the hemisphere deterministically")
{
    const auto a = random_sources(500, 8000.0, 42);
    const auto b = random_sources(500, 8000.0, 42);
    const auto c = random_sources(500, 8000.0, 43);
    REQUIRE(a.size() == 500);
    bool differs = false;
    double mean_cos = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].theta == b[k].theta);
        CHECK(a[k].phi == b[k].phi);
        CHECK(a[k].theta >= 0.0);
        CHECK(a[k].theta <= kPi / 2);
        CHECK(a[k].phi >= 0.0);
        CHECK(a[k].phi < 2 * kPi);
        CHECK(a[k].f_hz == 8000.0);
        differs = differs || a[k].theta != c[k].theta;
        mean_cos += std::cos(a[k].theta) / 500.0;
    }
    CHECK(differs);
    CHECK(std::abs(mean_cos - 0.5) < 0.05);
}

TEST_CASE("relative mismatch floors the denominator in deep nulls")
{
    ComplexGrid w(3);
    w(0, 0) = 2.0;
    w(1, 0) = -2.0;
    const WeightMatrix wm = from_grid(1000.0, w);
    CHECK(relative_mismatch({1.0, 0.0}, {1.0, 0.0}, wm) == 0.0);
    CHECK(relative_mismatch({1.1, 0.0}, {1.0, 0.0}, wm) == doctest::Approx(0.1));
    // Predicted below 1e-6 of sum |w| = 4: the floor 4e-6 is the denominator.
    CHECK(relative_mismatch({1e-12, 0.0}, {0.0, 0.0}, wm) == doctest::Approx(0.25e-6));
    CHECK(relative_mismatch({1e-12, 0.0}, {0.0, 0.0}, wm, 2.0) == doctest::Approx(0.125e-6));
    CHECK(relative_mismatch({0.0, 0.0}, {0.0, 0.0}, from_grid(1000.0, ComplexGrid(3))) == 0.0);
}
