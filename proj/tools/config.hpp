// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uvbeam/array_core.hpp"
#include "uvbeam/pattern_spec.hpp"
#include "uvbeam/spectral.hpp"
#include "uvbeam/synthesis.hpp"

#include <boost/property_tree/ptree.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace uvbeam::cli {

inline constexpr const char* kToolName = "uvbeam";
inline constexpr const char* kToolVersion = "0.1.0";

struct BandSection {
    double f_min_hz = 0.0;
    double f_max_hz = 0.0;
    int count = 0;
    FrequencySpacing spacing = FrequencySpacing::log;
    BandKind mode = BandKind::strict;
    std::vector<double> explicit_hz; ///< frequencies_hz; overrides the range when set
};

struct OutputSection {
    std::filesystem::path directory = "out";
    bool emit_map = true;
    bool emit_cut = true;
    bool emit_metrics = true;
};

struct JobConfig {
    ArrayConfig array;
    PatternSpec pattern;
    std::filesystem::path pattern_file; ///< tabulated patterns only
    BandSection band;
    Taper taper;
    OutputSection output;

    std::vector<double> frequencies() const;
};

/// Parses an INI job file. Relative paths resolve against the file's
/// directory. Every bad field is reported; throws ValidationError listing
/// them, or IoError when the file cannot be read.
JobConfig load_job_config(const std::filesystem::path& path);
JobConfig parse_job_config(const std::string& text, const std::filesystem::path& base_dir);

/// Individual section readers, shared with the weight-bank metadata file.
ArrayConfig read_array_section(const boost::property_tree::ptree& root);
PatternSpec read_pattern_section(const boost::property_tree::ptree& root, const std::filesystem::path& base_dir,
                                 std::filesystem::path* tabulated_file = nullptr);
Taper parse_taper(const std::string& text);

/// Writes [array] and [pattern] in the grammar read back by the readers.
void write_array_section(boost::property_tree::ptree& root, const ArrayConfig& cfg);
void write_pattern_section(boost::property_tree::ptree& root, const PatternSpec& spec,
                           const std::filesystem::path& tabulated_file);
std::string taper_string(const Taper& taper);

/// Shortest text that parses back to the identical double.
std::string exact_number(double x);

std::string to_ini(const boost::property_tree::ptree& root);

} // namespace uvbeam::cli
