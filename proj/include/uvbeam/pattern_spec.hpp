// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace uvbeam {

/// Unit gain inside the cone theta <= theta_c around broadside.
struct ConePattern {
    double theta_c = 0.0;
};

/// inner_gain for theta <= theta_c1, outer_gain on the ring up to theta_c2.
struct TwoLevelPattern {
    double theta_c1 = 0.0;
    double theta_c2 = 0.0;
    double inner_gain = 1.0;
    double outer_gain = 0.1;
};

/// |sin(alpha pi theta) / (alpha pi theta)|, theta in radians.
struct SincPattern {
    double alpha = 0.0;
};

enum class Interpolation { bilinear, nearest };

/// Gain map sampled on a rectangular (theta, phi) grid. gains is row-major
/// with theta as the slow axis.
struct TabulatedPattern {
    std::vector<double> theta_samples;
    std::vector<double> phi_samples;
    std::vector<double> gains;
    Interpolation interpolation = Interpolation::bilinear;

    double gain(std::size_t it, std::size_t ip) const { return gains[it * phi_samples.size() + ip]; }
};

using PatternSpec = std::variant<ConePattern, TwoLevelPattern, SincPattern, TabulatedPattern>;

/// Throws std::invalid_argument when parameters violate the variant's
/// invariants.
void validate(const PatternSpec& spec);

/// Target gain b_R(theta, phi) on the upper hemisphere. Any phi is accepted
/// and wrapped into [0, 2 pi). theta outside [0, pi/2] throws.
double gain_at(const PatternSpec& spec, double theta, double phi);

/// Largest elevation at which the target can be nonzero. Determines the
/// radius of the target's footprint on the (u, v) plane.
double support_theta(const PatternSpec& spec);

/// True for the analytic variants, whose gain does not depend on phi.
bool is_circularly_symmetric(const PatternSpec& spec);

std::string pattern_name(const PatternSpec& spec);

/// Reads a `theta_deg,phi_deg,gain` CSV forming a complete rectangular
/// grid. Throws IoError / ValidationError.
TabulatedPattern read_tabulated_csv(const std::filesystem::path& path,
                                    Interpolation interp = Interpolation::bilinear);

} // namespace uvbeam
