// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uvbeam/evaluate.hpp"
#include "uvbeam/synthesis.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace uvbeam {

/// 12 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double x);

/// `f_hz,n1,n2,re,im`, one row per sensor, sorted by (f_hz, n1, n2).
void write_weight_csv(std::ostream& out, const WeightBank& bank);

struct LoadedWeights {
    double f_hz = 0.0;
    ComplexGrid weights;
};

/// Parses a weight CSV. Each frequency must cover a full centered N x N
/// block and every frequency must share N. Throws ValidationError.
std::vector<LoadedWeights> read_weight_csv(std::istream& in);

/// `f_hz,theta_deg,phi_deg,mag,mag_db`, dB relative to reference_magnitude().
void write_map_csv(std::ostream& out, const DirectivityMap& map);

/// `theta_deg_signed,mag,mag_db`.
void write_cut_csv(std::ostream& out, const std::vector<CutRow>& rows);

/// Writes to a sibling temporary and renames over the target. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

} // namespace uvbeam
