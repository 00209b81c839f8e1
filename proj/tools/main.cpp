// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include "uvbeam/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace uvbeam::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Broadband weight synthesis for uniform planar arrays"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    std::string config;
    std::string out_dir;
    bool allow_clipping = false;
    std::string taper;
    std::string grid = "181x361";
    std::vector<double> cut_phi{0.0, 180.0};
    std::string weights;
    std::string sources;
    int random_count = 100;
    std::uint64_t seed = 1;
    bool machine = false;

    auto* validate = app.add_subcommand("validate", "Report frequency bands and check the requested frequencies");
    validate->add_option("--config", config, "Job configuration (INI)")->required();
    validate->add_option("--out", out_dir, "Also write validation.ini into this directory");
    validate->add_flag("--allow-clipping", allow_clipping, "Accept frequencies outside the band");
    validate->add_flag("--machine", machine, "Print the INI report instead of text");

    auto* synth = app.add_subcommand("synthesize", "Compute per-frequency sensor weights");
    synth->add_option("--config", config, "Job configuration (INI)")->required();
    synth->add_option("--out", out_dir, "Output directory (overrides [output] directory)");
    synth->add_flag("--allow-clipping", allow_clipping, "Synthesize outside the band, flagging deformation");
    synth->add_option("--taper", taper, "none | tukey | tukey:FRAC (overrides [synthesis])");

    auto* evaluate = app.add_subcommand("evaluate", "Directivity maps, cross-cuts and metrics for a weight bank");
    evaluate->add_option("weights", weights, "weights.csv written by synthesize")->required();
    evaluate->add_option("--config", config, "Job configuration instead of the .meta.ini sidecar");
    evaluate->add_option("--out", out_dir, "Output directory (default: next to the weights)");
    evaluate->add_option("--grid", grid, "THETAxPHI sample counts")->capture_default_str();
    evaluate->add_option("--cut", cut_phi, "Azimuth pair in degrees for the cross-cut")->expected(2);

    auto* simulate = app.add_subcommand("simulate", "Plane-wave check of beamformer output against directivity");
    simulate->add_option("weights", weights, "weights.csv written by synthesize")->required();
    simulate->add_option("--config", config, "Job configuration instead of the .meta.ini sidecar");
    simulate->add_option("--out", out_dir, "Output directory (default: next to the weights)");
    simulate->add_option("--sources", sources, "CSV: theta_deg,phi_deg[,amplitude,phase_deg]");
    simulate->add_option("--random", random_count, "Number of random directions when no list is given")->capture_default_str();
    simulate->add_option("--seed", seed, "Seed for random directions")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kValidationFailure;
    }

    auto opt_path = [](const std::string& s) -> std::optional<std::filesystem::path> {
        if (s.empty())
            return std::nullopt;
        return std::filesystem::path(s);
    };

    if (validate->parsed()) {
        ValidateOptions opts;
        opts.allow_clipping = allow_clipping;
        opts.out_dir = opt_path(out_dir);
        opts.machine = machine;
        return cmd_validate(config, opts, std::cout, std::cerr);
    }
    if (synth->parsed()) {
        SynthesizeOptions opts;
        opts.allow_clipping = allow_clipping;
        opts.out_dir = opt_path(out_dir);
        if (!taper.empty()) {
            try {
                opts.taper = parse_taper(taper);
            } catch (const uvbeam::ValidationError& e) {
                std::cerr << "error: " << e.what() << '\n';
                return kValidationFailure;
            }
        }
        return cmd_synthesize(config, opts, std::cout, std::cerr);
    }
    if (evaluate->parsed()) {
        EvaluateOptions opts;
        try {
            std::tie(opts.theta_count, opts.phi_count) = parse_grid(grid);
        } catch (const uvbeam::ValidationError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kValidationFailure;
        }
        opts.cut_phi_deg = {cut_phi.at(0), cut_phi.at(1)};
        opts.out_dir = opt_path(out_dir);
        opts.config = opt_path(config);
        return cmd_evaluate(weights, opts, std::cout, std::cerr);
    }
    SimulateOptions opts;
    opts.sources = opt_path(sources);
    opts.random_count = random_count;
    opts.seed = seed;
    opts.out_dir = opt_path(out_dir);
    opts.config = opt_path(config);
    return cmd_simulate(weights, opts, std::cout, std::cerr);
}
