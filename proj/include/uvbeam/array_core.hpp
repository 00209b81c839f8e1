// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

namespace uvbeam {

inline constexpr double kDefaultSoundSpeed = 343.0; // m/s, dry air at 20 C

/// Square N x N uniform planar array. Sensor (n1, n2) sits at
/// (n1 * spacing, n2 * spacing) for centered indices n1, n2.
struct ArrayConfig {
    int n_per_axis = 0;
    double spacing_m = 0.0;
    double sound_speed_m_s = kDefaultSoundSpeed;

    /// Throws std::invalid_argument unless N >= 3 and spacing, speed > 0.
    void validate() const;

    int index_lo() const;
    int index_hi() const;

    /// Largest lattice radius reachable along a positive axis: (N-1)/2 for
    /// odd N, (N-2)/2 for even N.
    double half_width() const;

    bool operator==(const ArrayConfig&) const = default;
};

enum class BandKind { strict, relaxed };

struct FrequencyBand {
    double f_min_hz = 0.0;
    double f_max_hz = 0.0;
    BandKind kind = BandKind::strict;

    bool contains(double f_hz) const { return f_hz >= f_min_hz && f_hz <= f_max_hz; }
};

struct SensorPosition {
    int n1 = 0;
    int n2 = 0;
    double x_m = 0.0;
    double y_m = 0.0;
};

/// All N^2 sensors, ordered by (n1, n2).
std::vector<SensorPosition> sensor_positions(const ArrayConfig& cfg);

/// Band over which the lattice radius stays in [1, half_width()]. Throws
/// ValidationError if the bounds cross.
FrequencyBand strict_band(const ArrayConfig& cfg);

/// R = f N d / c, the visible-disk radius on the (u, v) lattice.
double radius_for_frequency(const ArrayConfig& cfg, double f_hz);

/// R >= 1, with 1e-12 relative slack so f = c / (N d) itself qualifies.
bool representable(const ArrayConfig& cfg, double f_hz);

/// Inverse of radius_for_frequency.
double frequency_for_radius(const ArrayConfig& cfg, double radius);

struct SpacingBounds {
    double lower_m = 0.0; // lambda / N
    double upper_m = 0.0; // (N-1) lambda / (2N)
};

SpacingBounds spacing_bounds(const ArrayConfig& cfg, double wavelength_m);

} // namespace uvbeam
