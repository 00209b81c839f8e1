// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "config.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace uvbeam::cli {

enum ExitCode : int {
    kSuccess = 0,
    kValidationFailure = 1,
    kIoFailure = 2,
    kInternalError = 3,
};

struct ValidateOptions {
    bool allow_clipping = false;
    std::optional<std::filesystem::path> out_dir; ///< validation.ini written here when set
    bool machine = false;                         ///< print the INI report instead of text
};

struct SynthesizeOptions {
    bool allow_clipping = false;
    std::optional<std::filesystem::path> out_dir; ///< overrides [output] directory
    std::optional<Taper> taper;                   ///< overrides [synthesis]
};

struct EvaluateOptions {
    int theta_count = 181;
    int phi_count = 361;
    std::pair<double, double> cut_phi_deg{0.0, 180.0};
    std::optional<std::filesystem::path> out_dir; ///< defaults to the weights directory
    std::optional<std::filesystem::path> config;  ///< instead of the .meta.ini sidecar
};

struct SimulateOptions {
    std::optional<std::filesystem::path> sources; ///< theta_deg,phi_deg[,amplitude,phase_deg]
    int random_count = 100;
    std::uint64_t seed = 1;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::filesystem::path> config;
    double tolerance = 1e-6;
};

/// Outcome for one requested frequency against the chosen band.
struct FrequencyCheck {
    double f_hz = 0.0;
    double radius = 0.0;
    double support_radius = 0.0;
    bool clipped = false;
    bool undersampled = false;
    bool in_band = false;
    bool valid = false;
    std::string note;
};

struct ValidationReport {
    JobConfig job;
    FrequencyBand strict;
    std::optional<FrequencyBand> relaxed;
    SpacingBounds bounds_at_f_max; ///< upper bound binds at the shortest wavelength
    SpacingBounds bounds_at_f_min; ///< lower bound binds at the longest wavelength
    std::vector<FrequencyCheck> checks;
    bool allow_clipping = false;
    bool valid = false;

    std::string text() const;
    std::string ini() const;
};

ValidationReport validate_job(const JobConfig& job, bool allow_clipping);

int cmd_validate(const std::filesystem::path& config_path, const ValidateOptions& opts, std::ostream& out,
                 std::ostream& err);
int cmd_synthesize(const std::filesystem::path& config_path, const SynthesizeOptions& opts, std::ostream& out,
                   std::ostream& err);
int cmd_evaluate(const std::filesystem::path& weights_path, const EvaluateOptions& opts, std::ostream& out,
                 std::ostream& err);
int cmd_simulate(const std::filesystem::path& weights_path, const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err);

/// `<stem>.meta.ini` next to the weights file.
std::filesystem::path metadata_path(const std::filesystem::path& weights_path);

/// Parses "181x361".
std::pair<int, int> parse_grid(const std::string& text);

} // namespace uvbeam::cli
