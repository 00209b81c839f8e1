// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/uv_transform.hpp"

#include "uvbeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace uvbeam {

double lattice_theta(double u, double v, double radius)
{
    const double rho = std::hypot(u, v);
    // rho == R is the equator; clamp rounding so asin stays defined there.
    return std::asin(std::min(1.0, rho / radius));
}

UvGainGrid sample_uv_grid(const ArrayConfig& cfg, const PatternSpec& spec, double f_hz)
{
    cfg.validate();
    validate(spec);
    const double radius = radius_for_frequency(cfg, f_hz);
    if (!representable(cfg, f_hz)) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "frequency below representable band: f=" << f_hz << " Hz gives R=" << radius
            << " < 1 (minimum f=" << frequency_for_radius(cfg, 1.0) << " Hz)";
        throw ValidationError(msg.str());
    }

    UvGainGrid grid;
    grid.f_hz = f_hz;
    grid.radius = radius;
    grid.support_radius = radius * std::sin(support_theta(spec));
    grid.values = RealGrid(cfg.n_per_axis, 0.0);

    for (int u = grid.values.lo(); u <= grid.values.hi(); ++u) {
        for (int v = grid.values.lo(); v <= grid.values.hi(); ++v) {
            const double rho = std::hypot(static_cast<double>(u), static_cast<double>(v));
            if (rho > radius)
                continue;
            const double theta = lattice_theta(u, v, radius);
            const double phi = std::atan2(static_cast<double>(v), static_cast<double>(u));
            grid.values(u, v) = gain_at(spec, theta, phi);
        }
    }
    return grid;
}

FrequencyBand relaxed_band(const ArrayConfig& cfg, double theta_c)
{
    cfg.validate();
    const double s = std::sin(theta_c);
    const double n = cfg.n_per_axis;
    const double c = cfg.sound_speed_m_s;
    const double d = cfg.spacing_m;
    return {c / (n * d * s), c * 2.0 * cfg.half_width() / (2.0 * n * d * s), BandKind::relaxed};
}

DeformationReport deformation_report(const ArrayConfig& cfg, const PatternSpec& spec, double f_hz)
{
    cfg.validate();
    validate(spec);

    DeformationReport rep;
    rep.radius = radius_for_frequency(cfg, f_hz);
    rep.support_radius = rep.radius * std::sin(support_theta(spec));
    rep.half_width = cfg.half_width();
    // Relative slack so a footprint landing on a bound by construction (f at
    // a band edge) is not flagged by rounding alone.
    constexpr double slack = 1e-12;
    rep.clipped = rep.support_radius > rep.half_width * (1.0 + slack);
    rep.undersampled = rep.support_radius < 1.0 - slack;

    if (representable(cfg, f_hz)) {
        const UvGainGrid g = sample_uv_grid(cfg, spec, f_hz);
        rep.nonzero_points = static_cast<int>(
            std::count_if(g.values.flat().begin(), g.values.flat().end(), [](double x) { return x != 0.0; }));
    } else {
        rep.nonzero_points = gain_at(spec, 0.0, 0.0) != 0.0 ? 1 : 0;
    }

    if (const auto* cone = std::get_if<ConePattern>(&spec))
        rep.relaxed_band = relaxed_band(cfg, cone->theta_c);
    return rep;
}

} // namespace uvbeam
