// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/wavesim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace uvbeam {

ComplexGrid sensor_snapshot(const ArrayConfig& cfg, const PlaneWaveSource& src)
{
    cfg.validate();
    if (!(src.f_hz > 0.0))
        throw std::invalid_argument("sensor_snapshot: frequency must be positive");
    if (!(src.amplitude >= 0.0))
        throw std::invalid_argument("sensor_snapshot: amplitude must be >= 0");

    const double wavenumber = 2.0 * std::numbers::pi * src.f_hz / cfg.sound_speed_m_s;
    const double dir_x = std::sin(src.theta) * std::cos(src.phi);
    const double dir_y = std::sin(src.theta) * std::sin(src.phi);
    const cplx carrier = std::polar(src.amplitude, src.phase);

    ComplexGrid p(cfg.n_per_axis);
    for (const SensorPosition& s : sensor_positions(cfg))
        p(s.n1, s.n2) = carrier * std::polar(1.0, -wavenumber * (s.x_m * dir_x + s.y_m * dir_y));
    return p;
}

cplx beamform(const WeightMatrix& weights, const ComplexGrid& snapshot)
{
    if (weights.weights.size() != snapshot.size())
        throw std::invalid_argument("beamform: weight and snapshot sizes differ");
    const auto w = weights.weights.flat();
    const auto p = snapshot.flat();
    cplx y{0.0, 0.0};
    for (std::size_t k = 0; k < w.size(); ++k)
        y += w[k] * p[k];
    return y;
}

double relative_mismatch(cplx measured, cplx predicted, const WeightMatrix& weights, double amplitude,
                         double floor_rel)
{
    double l1 = 0.0;
    for (const cplx& w : weights.weights.flat())
        l1 += std::abs(w);
    const double denom = std::max(std::abs(predicted), floor_rel * amplitude * l1);
    return denom > 0.0 ? std::abs(measured - predicted) / denom : 0.0;
}

std::vector<PlaneWaveSource> random_sources(int count, double f_hz, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<PlaneWaveSource> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        PlaneWaveSource s;
        s.theta = std::acos(unit(rng));
        s.phi = 2.0 * std::numbers::pi * unit(rng);
        s.f_hz = f_hz;
        out.push_back(s);
    }
    return out;
}

} // namespace uvbeam
