// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uvbeam/array_core.hpp"
#include "uvbeam/centered_grid.hpp"
#include "uvbeam/synthesis.hpp"

#include <cstdint>
#include <vector>

namespace uvbeam {

/// Far-field single-tone plane wave arriving from (theta, phi).
struct PlaneWaveSource {
    double theta = 0.0;
    double phi = 0.0;
    double f_hz = 0.0;
    double amplitude = 1.0;
    double phase = 0.0;
};

/// Phasor seen by every sensor:
/// a e^{j phase} exp(-j 2 pi f / c (x sin(theta) cos(phi) + y sin(theta) sin(phi))).
ComplexGrid sensor_snapshot(const ArrayConfig& cfg, const PlaneWaveSource& src);

/// y = sum w(n1, n2) p(n1, n2). Throws std::invalid_argument on a size mismatch.
cplx beamform(const WeightMatrix& weights, const ComplexGrid& snapshot);

/// |measured - predicted| / max(|predicted|, floor_rel * amplitude * sum |w|).
/// The floor keeps directions in deep nulls (below -120 dB of the coherent
/// gain by default) from turning rounding noise into a large ratio.
double relative_mismatch(cplx measured, cplx predicted, const WeightMatrix& weights, double amplitude = 1.0,
                         double floor_rel = 1e-6);

/// Directions drawn uniformly over the upper hemisphere (uniform in
/// cos(theta) and phi), deterministic for a given seed.
std::vector<PlaneWaveSource> random_sources(int count, double f_hz, std::uint64_t seed);

} // namespace uvbeam
