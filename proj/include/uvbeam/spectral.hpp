// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uvbeam/centered_grid.hpp"
#include "uvbeam/uv_transform.hpp"

namespace uvbeam {

/// Spectrum indexed by centered integer frequencies (u, v).
struct CenteredSpectrum {
    ComplexGrid values;

    int n_per_axis() const { return values.size(); }
};

/// w(n1, n2) = 1/N^2 sum_{u,v} b(u, v) exp(+j 2 pi (n1 u + n2 v) / N),
/// both index sets centered.
ComplexGrid centered_idft2(const CenteredSpectrum& spectrum);

/// b(u, v) = sum_{n1,n2} w(n1, n2) exp(-j 2 pi (n1 u + n2 v) / N). Unnormalized.
CenteredSpectrum centered_dft2(const ComplexGrid& weights);

CenteredSpectrum to_spectrum(const RealGrid& real);

struct Taper {
    enum class Kind { none, tukey };

    Kind kind = Kind::none;
    double edge_frac = 0.25;

    static Taper none() { return {}; }
    static Taper tukey(double edge_frac = 0.25);

    bool operator==(const Taper&) const = default;
};

/// Raised-cosine radial roll-off over the outer edge_frac of the target
/// footprint [0, support_radius]: factor 1 inside (1 - edge_frac) rho*,
/// falling to 0 at rho*.
double taper_factor(const Taper& taper, double rho, double support_radius);

UvGainGrid apply_taper(const UvGainGrid& grid, const Taper& taper);

} // namespace uvbeam
