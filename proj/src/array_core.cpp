// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/array_core.hpp"

#include "uvbeam/centered_grid.hpp"
#include "uvbeam/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uvbeam {

void ArrayConfig::validate() const
{
    if (n_per_axis < 3)
        throw std::invalid_argument("ArrayConfig: n_per_axis must be >= 3, got "
                                    + std::to_string(n_per_axis));
    if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
        throw std::invalid_argument("ArrayConfig: spacing_m must be positive");
    if (!(sound_speed_m_s > 0.0) || !std::isfinite(sound_speed_m_s))
        throw std::invalid_argument("ArrayConfig: sound_speed_m_s must be positive");
}

int ArrayConfig::index_lo() const { return centered_lo(n_per_axis); }
int ArrayConfig::index_hi() const { return centered_hi(n_per_axis); }

double ArrayConfig::half_width() const { return static_cast<double>(index_hi()); }

std::vector<SensorPosition> sensor_positions(const ArrayConfig& cfg)
{
    cfg.validate();
    std::vector<SensorPosition> out;
    out.reserve(static_cast<std::size_t>(cfg.n_per_axis) * static_cast<std::size_t>(cfg.n_per_axis));
    for (int n1 = cfg.index_lo(); n1 <= cfg.index_hi(); ++n1)
        for (int n2 = cfg.index_lo(); n2 <= cfg.index_hi(); ++n2)
            out.push_back({n1, n2, n1 * cfg.spacing_m, n2 * cfg.spacing_m});
    return out;
}

FrequencyBand strict_band(const ArrayConfig& cfg)
{
    cfg.validate();
    const double n = cfg.n_per_axis;
    const double c = cfg.sound_speed_m_s;
    const double d = cfg.spacing_m;
    const double top = (cfg.n_per_axis % 2 == 1) ? (n - 1.0) : (n - 2.0);

    FrequencyBand band{c / (n * d), c * top / (2.0 * n * d), BandKind::strict};
    if (band.f_min_hz > band.f_max_hz)
        throw ValidationError("strict band is empty for N=" + std::to_string(cfg.n_per_axis));
    return band;
}

double radius_for_frequency(const ArrayConfig& cfg, double f_hz)
{
    if (!(f_hz > 0.0))
        throw std::invalid_argument("radius_for_frequency: frequency must be positive");
    return f_hz * cfg.n_per_axis * cfg.spacing_m / cfg.sound_speed_m_s;
}

bool representable(const ArrayConfig& cfg, double f_hz)
{
    return radius_for_frequency(cfg, f_hz) >= 1.0 - 1e-12;
}

double frequency_for_radius(const ArrayConfig& cfg, double radius)
{
    return radius * cfg.sound_speed_m_s / (cfg.n_per_axis * cfg.spacing_m);
}

SpacingBounds spacing_bounds(const ArrayConfig& cfg, double wavelength_m)
{
    if (!(wavelength_m > 0.0))
        throw std::invalid_argument("spacing_bounds: wavelength must be positive");
    const double n = cfg.n_per_axis;
    return {wavelength_m / n, (n - 1.0) * wavelength_m / (2.0 * n)};
}

} // namespace uvbeam
