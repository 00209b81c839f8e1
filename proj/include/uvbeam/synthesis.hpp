// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uvbeam/array_core.hpp"
#include "uvbeam/centered_grid.hpp"
#include "uvbeam/pattern_spec.hpp"
#include "uvbeam/spectral.hpp"

#include <span>
#include <vector>

namespace uvbeam {

/// Complex sensor weights w(n1, n2) for one frequency.
struct WeightMatrix {
    double f_hz = 0.0;
    ComplexGrid weights;
    Taper taper;
    double radius = 0.0;
    bool deformed = false; ///< footprint clipped by the lattice or below one lattice step

    int n_per_axis() const { return weights.size(); }
};

struct WeightBank {
    ArrayConfig cfg;
    PatternSpec spec;
    std::vector<WeightMatrix> entries; ///< strictly ascending f_hz
};

/// Weights for a single frequency: inverse centered DFT of the (tapered)
/// lattice target.
WeightMatrix synthesize_one(const ArrayConfig& cfg, const PatternSpec& spec, double f_hz, const Taper& taper);

/// Per-frequency weights for every entry of freqs_hz. Throws
/// ValidationError for an empty or non-ascending list, or when any
/// frequency maps to R < 1.
WeightBank synthesize(const ArrayConfig& cfg, const PatternSpec& spec, std::span<const double> freqs_hz,
                      const Taper& taper);

enum class FrequencySpacing { linear, log };

/// count frequencies from f_min to f_max inclusive. count == 1 yields f_min.
std::vector<double> frequency_list(double f_min_hz, double f_max_hz, int count, FrequencySpacing spacing);

} // namespace uvbeam
