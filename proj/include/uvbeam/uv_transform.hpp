// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uvbeam/array_core.hpp"
#include "uvbeam/centered_grid.hpp"
#include "uvbeam/pattern_spec.hpp"

#include <optional>

namespace uvbeam {

/// Target gain sampled on the integer (u, v) lattice for one frequency.
struct UvGainGrid {
    double f_hz = 0.0;
    double radius = 0.0;         ///< R = f N d / c
    double support_radius = 0.0; ///< R sin(support_theta): edge of the target footprint
    RealGrid values;

    int n_per_axis() const { return values.size(); }
};

/// Elevation of lattice point (u, v) on the sphere of radius R.
double lattice_theta(double u, double v, double radius);

/// Samples the spherical gain onto the lattice: theta = asin(rho / R),
/// phi = atan2(v, u); points with rho > R are zero. Throws ValidationError
/// when R < 1.
UvGainGrid sample_uv_grid(const ArrayConfig& cfg, const PatternSpec& spec, double f_hz);

struct DeformationReport {
    double radius = 0.0;
    double support_radius = 0.0;
    double half_width = 0.0;
    bool clipped = false;      ///< footprint extends past the lattice half-width
    bool undersampled = false; ///< footprint radius below one lattice step
    int nonzero_points = 0;
    std::optional<FrequencyBand> relaxed_band; ///< cone targets only

    bool deformed() const { return clipped || undersampled; }
};

/// Band over which a cone footprint stays in [1, half_width()] lattice steps.
FrequencyBand relaxed_band(const ArrayConfig& cfg, double theta_c);

DeformationReport deformation_report(const ArrayConfig& cfg, const PatternSpec& spec, double f_hz);

} // namespace uvbeam
