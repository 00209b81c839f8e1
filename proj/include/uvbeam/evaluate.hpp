// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uvbeam/array_core.hpp"
#include "uvbeam/pattern_spec.hpp"
#include "uvbeam/synthesis.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace uvbeam {

/// Realized response b(theta, phi) on a rectangular angular grid. values is
/// row-major with theta as the slow axis.
struct DirectivityMap {
    double f_hz = 0.0;
    std::vector<double> theta_samples;
    std::vector<double> phi_samples;
    std::vector<cplx> values;

    const cplx& at(std::size_t it, std::size_t ip) const { return values[it * phi_samples.size() + ip]; }
};

/// Evenly spaced angles: theta over [0, pi/2] and phi over [0, 2 pi], both
/// endpoints included. 181 x 361 gives 0.5 deg by 1 deg steps.
std::vector<double> theta_grid(int count);
std::vector<double> phi_grid(int count);

/// b(theta, phi) = sum w(n1, n2) exp(-j 2 pi f d / c (n1 sin cos + n2 sin sin)).
cplx directivity_at(const ArrayConfig& cfg, const WeightMatrix& wm, double theta, double phi);

DirectivityMap directivity(const ArrayConfig& cfg, const WeightMatrix& wm, std::span<const double> thetas,
                           std::span<const double> phis);

/// Broadside magnitude when theta = 0 is on the grid, otherwise the peak.
double reference_magnitude(const DirectivityMap& map);

/// 20 log10(mag / ref), floored at -300 dB.
double magnitude_db(double mag, double ref);

struct CutRow {
    double theta_signed = 0.0; ///< radians; negative on the phi_pair.second half
    double magnitude = 0.0;
    double magnitude_db = 0.0;
};

/// Symmetric section through broadside: the phi_pair.second half with theta
/// negated, followed by the phi_pair.first half. Both phi values must be
/// grid samples (matched within 1e-9 rad), otherwise std::invalid_argument.
std::vector<CutRow> cross_cut(const DirectivityMap& map, std::pair<double, double> phi_pair);

enum class EdgeLevel {
    half_amplitude, ///< |b| < 0.5 |b(0)|, -6 dB
    half_power,     ///< |b| < |b(0)| / sqrt(2), -3 dB
};

double edge_ratio(EdgeLevel level);

/// First theta, sweeping up from thetas[0], where mags falls below
/// ratio * mags[0]; linear interpolation between bracketing samples. Returns
/// nullopt when mags[0] == 0 and thetas.back() when the level is never crossed.
std::optional<double> falling_edge(std::span<const double> thetas, std::span<const double> mags, double ratio);

struct PatternMetrics {
    double f_hz = 0.0;
    std::optional<double> mainlobe_edge_theta; ///< mean over phi columns
    std::optional<double> mainlobe_edge_spread; ///< max - min over phi columns
    std::optional<double> peak_sidelobe_db;    ///< relative to broadside
    double target_rms_error = 0.0;
    std::optional<double> level_ratio_db; ///< two_level targets only
};

/// Requires theta_samples.front() == 0.
PatternMetrics metrics(const DirectivityMap& map, const PatternSpec& spec,
                       EdgeLevel level = EdgeLevel::half_amplitude);

} // namespace uvbeam
