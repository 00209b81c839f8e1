// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include "uvbeam/bank_io.hpp"
#include "uvbeam/errors.hpp"
#include "uvbeam/evaluate.hpp"
#include "uvbeam/uv_transform.hpp"
#include "uvbeam/wavesim.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace uvbeam::cli {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;
constexpr double kRad = std::numbers::pi / 180.0;

int run_guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const fs::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

void ensure_directory(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
}

std::string freq_tag(double f_hz) { return "f" + format_number(f_hz); }

std::string khz(double f_hz)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << f_hz / 1000.0 << " kHz";
    return s.str();
}

// Array, pattern and output selection describing a weight bank.
struct BankContext {
    ArrayConfig cfg;
    PatternSpec spec;
    OutputSection output;
};

BankContext load_context(const fs::path& weights_path, const std::optional<fs::path>& config)
{
    if (config) {
        const JobConfig job = load_job_config(*config);
        return {job.array, job.pattern, job.output};
    }
    const fs::path meta = metadata_path(weights_path);
    std::ifstream in(meta);
    if (!in)
        throw IoError("missing metadata sidecar " + meta.string() + " (pass --config instead)");
    pt::ptree root;
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ValidationError("metadata " + meta.string() + ": " + e.message());
    }
    BankContext ctx;
    ctx.cfg = read_array_section(root);
    ctx.spec = read_pattern_section(root, meta.parent_path());
    if (const auto emit = root.get_optional<std::string>("output.emit")) {
        ctx.output.emit_map = emit->find("map") != std::string::npos;
        ctx.output.emit_cut = emit->find("cut") != std::string::npos;
        ctx.output.emit_metrics = emit->find("metrics") != std::string::npos;
    }
    return ctx;
}

std::vector<LoadedWeights> load_weights(const fs::path& weights_path)
{
    std::ifstream in(weights_path);
    if (!in)
        throw IoError("cannot read weights file " + weights_path.string());
    return read_weight_csv(in);
}

WeightMatrix as_matrix(const LoadedWeights& lw)
{
    WeightMatrix wm;
    wm.f_hz = lw.f_hz;
    wm.weights = lw.weights;
    return wm;
}

std::string optional_field(const std::optional<double>& v, double scale = 1.0)
{
    return v ? format_number(*v * scale) : std::string();
}

struct SourceSpec {
    double theta = 0.0;
    double phi = 0.0;
    double amplitude = 1.0;
    double phase = 0.0;
};

std::vector<SourceSpec> read_sources(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read source list " + path.string());
    std::string line;
    std::getline(in, line);
    if (line.rfind("theta_deg,phi_deg", 0) != 0)
        throw ValidationError(path.string() + ": expected header 'theta_deg,phi_deg[,amplitude,phase_deg]'");

    std::vector<SourceSpec> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<double> vals;
        std::istringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc() || ptr != item.data() + item.size())
                throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
            vals.push_back(v);
        }
        if (vals.size() != 2 && vals.size() != 4)
            throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected 2 or 4 fields");
        SourceSpec s{vals[0] * kRad, vals[1] * kRad, 1.0, 0.0};
        if (vals.size() == 4) {
            s.amplitude = vals[2];
            s.phase = vals[3] * kRad;
        }
        if (!(vals[0] >= 0.0 && vals[0] <= 90.0))
            throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": source theta "
                                  + format_number(vals[0]) + " deg outside [0, 90]");
        if (!(s.amplitude >= 0.0))
            throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": negative amplitude");
        out.push_back(s);
    }
    if (out.empty())
        throw ValidationError(path.string() + ": no sources");
    return out;
}

} // namespace

fs::path metadata_path(const fs::path& weights_path)
{
    fs::path p = weights_path;
    p.replace_extension(".meta.ini");
    return p;
}

std::pair<int, int> parse_grid(const std::string& text)
{
    const auto x = text.find_first_of("xX");
    int t = 0, p = 0;
    if (x != std::string::npos) {
        const auto r1 = std::from_chars(text.data(), text.data() + x, t);
        const auto r2 = std::from_chars(text.data() + x + 1, text.data() + text.size(), p);
        if (r1.ec == std::errc() && r1.ptr == text.data() + x && r2.ec == std::errc()
            && r2.ptr == text.data() + text.size() && t >= 2 && p >= 2)
            return {t, p};
    }
    throw ValidationError("--grid: expected THETAxPHI sample counts (each >= 2), got '" + text + "'");
}

ValidationReport validate_job(const JobConfig& job, bool allow_clipping)
{
    ValidationReport rep;
    rep.job = job;
    rep.allow_clipping = allow_clipping;
    rep.strict = strict_band(job.array);
    if (const auto* cone = std::get_if<ConePattern>(&job.pattern))
        rep.relaxed = relaxed_band(job.array, cone->theta_c);

    const std::vector<double> freqs = job.frequencies();
    const double c = job.array.sound_speed_m_s;
    rep.bounds_at_f_max = spacing_bounds(job.array, c / freqs.back());
    rep.bounds_at_f_min = spacing_bounds(job.array, c / freqs.front());

    const bool relaxed_mode = job.band.mode == BandKind::relaxed;
    const FrequencyBand& band = relaxed_mode ? *rep.relaxed : rep.strict;
    const char* lo_formula = relaxed_mode ? "c/(N d sin theta_c)" : "c/(N d)";
    const char* hi_formula = relaxed_mode ? "c h/(N d sin theta_c)" : "c h/(N d)";

    rep.valid = true;
    for (double f : freqs) {
        FrequencyCheck chk;
        chk.f_hz = f;
        const DeformationReport d = deformation_report(job.array, job.pattern, f);
        chk.radius = d.radius;
        chk.support_radius = d.support_radius;
        chk.clipped = d.clipped;
        chk.undersampled = d.undersampled;
        chk.in_band = band.contains(f);

        std::ostringstream note;
        note.precision(12);
        if (!representable(job.array, f)) {
            note << "R = " << chk.radius << " < 1: below representable band (minimum "
                 << frequency_for_radius(job.array, 1.0) << " Hz)";
            chk.valid = false;
        } else {
            if (f < band.f_min_hz)
                note << "below " << (relaxed_mode ? "relaxed" : "strict") << " lower bound " << band.f_min_hz
                     << " Hz = " << lo_formula;
            else if (f > band.f_max_hz)
                note << "above " << (relaxed_mode ? "relaxed" : "strict") << " upper bound " << band.f_max_hz
                     << " Hz = " << hi_formula;
            chk.valid = chk.in_band || allow_clipping;
            if (!chk.in_band && allow_clipping)
                note << " (allowed by --allow-clipping)";
        }
        chk.note = note.str();
        rep.valid = rep.valid && chk.valid;
        rep.checks.push_back(std::move(chk));
    }
    return rep;
}

std::string ValidationReport::text() const
{
    std::ostringstream s;
    s.precision(12);
    s << "array: N = " << job.array.n_per_axis << ", spacing = " << job.array.spacing_m
      << " m, c = " << job.array.sound_speed_m_s << " m/s\n";
    s << "pattern: " << pattern_name(job.pattern) << '\n';
    s << "strict band: " << strict.f_min_hz << " Hz .. " << strict.f_max_hz << " Hz  (" << khz(strict.f_min_hz)
      << " .. " << khz(strict.f_max_hz) << ")\n";
    if (relaxed)
        s << "relaxed band (cone): " << relaxed->f_min_hz << " Hz .. " << relaxed->f_max_hz << " Hz  ("
          << khz(relaxed->f_min_hz) << " .. " << khz(relaxed->f_max_hz) << ")\n";
    const double d = job.array.spacing_m;
    s << "spacing bounds: upper " << bounds_at_f_max.upper_m << " m at highest requested frequency, lower "
      << bounds_at_f_min.lower_m << " m at lowest; spacing " << d << " m "
      << ((d <= bounds_at_f_max.upper_m && d >= bounds_at_f_min.lower_m) ? "within" : "outside") << " bounds\n";
    s << "mode: " << (job.band.mode == BandKind::relaxed ? "relaxed" : "strict")
      << (allow_clipping ? " (clipping allowed)" : "") << '\n';
    s << "frequencies:\n";
    for (const FrequencyCheck& c : checks) {
        s << "  f = " << std::setw(14) << c.f_hz << " Hz  R = " << std::setw(14) << c.radius
          << "  footprint = " << std::setw(14) << c.support_radius << (c.clipped ? "  CLIPPED" : "")
          << (c.undersampled ? "  UNDERSAMPLED" : "") << "  " << (c.valid ? "ok" : "INVALID");
        if (!c.note.empty())
            s << "  " << c.note;
        s << '\n';
    }
    s << (valid ? "result: valid\n" : "result: INVALID\n");
    return s.str();
}

std::string ValidationReport::ini() const
{
    pt::ptree root;
    write_array_section(root, job.array);
    write_pattern_section(root, job.pattern, job.pattern_file);

    std::string list;
    for (const FrequencyCheck& c : checks)
        list += (list.empty() ? "" : ",") + exact_number(c.f_hz);
    root.put("band.frequencies_hz", list);
    root.put("band.mode", job.band.mode == BandKind::relaxed ? "relaxed" : "strict");
    root.put("synthesis.taper", job.taper.kind == Taper::Kind::none ? "none" : "tukey");
    root.put("synthesis.edge_frac", exact_number(job.taper.edge_frac));

    root.put("strict_band.f_min_hz", exact_number(strict.f_min_hz));
    root.put("strict_band.f_max_hz", exact_number(strict.f_max_hz));
    if (relaxed) {
        root.put("relaxed_band.f_min_hz", exact_number(relaxed->f_min_hz));
        root.put("relaxed_band.f_max_hz", exact_number(relaxed->f_max_hz));
    }
    root.put("spacing_bounds.upper_m", exact_number(bounds_at_f_max.upper_m));
    root.put("spacing_bounds.upper_wavelength_m", exact_number(job.array.sound_speed_m_s / checks.back().f_hz));
    root.put("spacing_bounds.lower_m", exact_number(bounds_at_f_min.lower_m));
    root.put("spacing_bounds.lower_wavelength_m", exact_number(job.array.sound_speed_m_s / checks.front().f_hz));

    for (std::size_t i = 0; i < checks.size(); ++i) {
        const FrequencyCheck& c = checks[i];
        const std::string sec = "frequency_" + std::to_string(i) + ".";
        root.put(sec + "f_hz", exact_number(c.f_hz));
        root.put(sec + "radius", exact_number(c.radius));
        root.put(sec + "support_radius", exact_number(c.support_radius));
        root.put(sec + "clipped", c.clipped ? "true" : "false");
        root.put(sec + "undersampled", c.undersampled ? "true" : "false");
        root.put(sec + "in_band", c.in_band ? "true" : "false");
        root.put(sec + "valid", c.valid ? "true" : "false");
    }
    root.put("summary.allow_clipping", allow_clipping ? "true" : "false");
    root.put("summary.valid", valid ? "true" : "false");
    return to_ini(root);
}

int cmd_validate(const fs::path& config_path, const ValidateOptions& opts, std::ostream& out, std::ostream& err)
{
    return run_guarded(err, [&] {
        const JobConfig job = load_job_config(config_path);
        const ValidationReport rep = validate_job(job, opts.allow_clipping);
        out << (opts.machine ? rep.ini() : rep.text());
        if (opts.out_dir) {
            ensure_directory(*opts.out_dir);
            write_file_atomic(*opts.out_dir / "validation.ini", rep.ini());
        }
        if (!rep.valid) {
            for (const FrequencyCheck& c : rep.checks)
                if (!c.valid)
                    err << "invalid frequency " << format_number(c.f_hz) << " Hz: " << c.note << '\n';
        }
        return rep.valid ? kSuccess : kValidationFailure;
    });
}

int cmd_synthesize(const fs::path& config_path, const SynthesizeOptions& opts, std::ostream& out, std::ostream& err)
{
    return run_guarded(err, [&] {
        JobConfig job = load_job_config(config_path);
        if (opts.taper)
            job.taper = *opts.taper;
        const ValidationReport rep = validate_job(job, opts.allow_clipping);
        if (!rep.valid) {
            for (const FrequencyCheck& c : rep.checks)
                if (!c.valid)
                    err << "invalid frequency " << format_number(c.f_hz) << " Hz: " << c.note << '\n';
            err << "synthesis aborted; pass --allow-clipping to operate outside the band\n";
            return static_cast<int>(kValidationFailure);
        }

        const std::vector<double> freqs = job.frequencies();
        const WeightBank bank = synthesize(job.array, job.pattern, freqs, job.taper);

        const fs::path dir = opts.out_dir.value_or(job.output.directory);
        ensure_directory(dir);

        std::ostringstream csv;
        write_weight_csv(csv, bank);

        pt::ptree meta;
        meta.put("tool.name", kToolName);
        meta.put("tool.version", kToolVersion);
        write_array_section(meta, job.array);
        write_pattern_section(meta, job.pattern, job.pattern_file);
        meta.put("synthesis.taper", job.taper.kind == Taper::Kind::none ? "none" : "tukey");
        meta.put("synthesis.edge_frac", exact_number(job.taper.edge_frac));
        std::string emit = "weights";
        if (job.output.emit_map)
            emit += ",map";
        if (job.output.emit_cut)
            emit += ",cut";
        if (job.output.emit_metrics)
            emit += ",metrics";
        meta.put("output.emit", emit);
        meta.put("frequencies.count", bank.entries.size());
        for (std::size_t i = 0; i < bank.entries.size(); ++i) {
            const WeightMatrix& wm = bank.entries[i];
            const std::string sec = "frequency_" + std::to_string(i) + ".";
            meta.put(sec + "f_hz", exact_number(wm.f_hz));
            meta.put(sec + "radius", exact_number(wm.radius));
            meta.put(sec + "deformed", wm.deformed ? "true" : "false");
        }

        const fs::path weights_path = dir / "weights.csv";
        write_file_atomic(weights_path, csv.str());
        write_file_atomic(metadata_path(weights_path), to_ini(meta));

        int deformed = 0;
        for (const WeightMatrix& wm : bank.entries) {
            out << "f = " << format_number(wm.f_hz) << " Hz  R = " << format_number(wm.radius)
                << (wm.deformed ? "  deformed" : "") << '\n';
            deformed += wm.deformed ? 1 : 0;
        }
        out << "wrote " << bank.entries.size() << " weight matrices (" << deformed << " flagged deformed) to "
            << weights_path.string() << '\n';
        return static_cast<int>(kSuccess);
    });
}

int cmd_evaluate(const fs::path& weights_path, const EvaluateOptions& opts, std::ostream& out, std::ostream& err)
{
    return run_guarded(err, [&] {
        const std::vector<LoadedWeights> bank = load_weights(weights_path);
        const BankContext ctx = load_context(weights_path, opts.config);
        if (bank.front().weights.size() != ctx.cfg.n_per_axis)
            throw ValidationError("weights are " + std::to_string(bank.front().weights.size())
                                  + " per axis but the array has N = " + std::to_string(ctx.cfg.n_per_axis));

        const fs::path dir = opts.out_dir.value_or(weights_path.has_parent_path() ? weights_path.parent_path()
                                                                                  : fs::path("."));
        ensure_directory(dir);

        const std::vector<double> thetas = theta_grid(opts.theta_count);
        const std::vector<double> phis = phi_grid(opts.phi_count);
        const std::pair<double, double> cut_phi{opts.cut_phi_deg.first * kRad, opts.cut_phi_deg.second * kRad};
        const bool two_level = std::holds_alternative<TwoLevelPattern>(ctx.spec);

        std::ostringstream summary;
        summary << "f_hz,mainlobe_edge_deg,mainlobe_edge_spread_deg,peak_sidelobe_db,target_rms_error"
                << (two_level ? ",level_ratio_db" : "") << '\n';
        out << ' ' << std::setw(15) << "f_hz" << ' ' << std::setw(15) << "edge_deg" << ' ' << std::setw(15)
            << "sidelobe_db" << ' ' << std::setw(15) << "rms_error" << (two_level ? "         level_db" : "") << '\n';

        for (const LoadedWeights& lw : bank) {
            const WeightMatrix wm = as_matrix(lw);
            const DirectivityMap map = directivity(ctx.cfg, wm, thetas, phis);
            const std::string tag = freq_tag(lw.f_hz);

            const std::vector<CutRow> cut = cross_cut(map, cut_phi);
            if (ctx.output.emit_map) {
                std::ostringstream s;
                write_map_csv(s, map);
                write_file_atomic(dir / ("map_" + tag + ".csv"), s.str());
            }
            if (ctx.output.emit_cut) {
                std::ostringstream s;
                write_cut_csv(s, cut);
                write_file_atomic(dir / ("cut_" + tag + ".csv"), s.str());
            }

            const PatternMetrics m = metrics(map, ctx.spec);
            summary << format_number(m.f_hz) << ',' << optional_field(m.mainlobe_edge_theta, kDeg) << ','
                    << optional_field(m.mainlobe_edge_spread, kDeg) << ',' << optional_field(m.peak_sidelobe_db)
                    << ',' << format_number(m.target_rms_error);
            if (two_level)
                summary << ',' << optional_field(m.level_ratio_db);
            summary << '\n';

            out << ' ' << std::setw(15) << format_number(m.f_hz) << ' ' << std::setw(15)
                << optional_field(m.mainlobe_edge_theta, kDeg) << ' ' << std::setw(15)
                << optional_field(m.peak_sidelobe_db) << ' ' << std::setw(15) << format_number(m.target_rms_error);
            if (two_level)
                out << ' ' << std::setw(15) << optional_field(m.level_ratio_db);
            out << '\n';
        }
        if (ctx.output.emit_metrics)
            write_file_atomic(dir / "metrics.csv", summary.str());
        return static_cast<int>(kSuccess);
    });
}

int cmd_simulate(const fs::path& weights_path, const SimulateOptions& opts, std::ostream& out, std::ostream& err)
{
    return run_guarded(err, [&] {
        const std::vector<SourceSpec> listed = opts.sources ? read_sources(*opts.sources) : std::vector<SourceSpec>{};
        if (!opts.sources && opts.random_count < 1)
            throw ValidationError("--random: need at least one source");
        const std::vector<LoadedWeights> bank = load_weights(weights_path);
        const BankContext ctx = load_context(weights_path, opts.config);
        if (bank.front().weights.size() != ctx.cfg.n_per_axis)
            throw ValidationError("weights do not match the array size in the metadata");

        std::ostringstream table;
        table << "f_hz,theta_deg,phi_deg,measured_mag,predicted_mag,rel_error\n";
        double worst = 0.0;
        std::size_t rows = 0;

        for (const LoadedWeights& lw : bank) {
            const WeightMatrix wm = as_matrix(lw);
            std::vector<PlaneWaveSource> sources;
            if (opts.sources) {
                for (const SourceSpec& s : listed)
                    sources.push_back({s.theta, s.phi, lw.f_hz, s.amplitude, s.phase});
            } else {
                sources = random_sources(opts.random_count, lw.f_hz, opts.seed);
            }

            for (const PlaneWaveSource& src : sources) {
                const cplx measured = beamform(wm, sensor_snapshot(ctx.cfg, src));
                const cplx predicted
                    = std::polar(src.amplitude, src.phase) * directivity_at(ctx.cfg, wm, src.theta, src.phi);
                const double rel = relative_mismatch(measured, predicted, wm, src.amplitude);
                worst = std::max(worst, rel);
                ++rows;
                table << format_number(lw.f_hz) << ',' << format_number(src.theta * kDeg) << ','
                      << format_number(src.phi * kDeg) << ',' << format_number(std::abs(measured)) << ','
                      << format_number(std::abs(predicted)) << ',' << format_number(rel) << '\n';
            }
        }

        const fs::path dir = opts.out_dir.value_or(weights_path.has_parent_path() ? weights_path.parent_path()
                                                                                  : fs::path("."));
        ensure_directory(dir);
        write_file_atomic(dir / "simulate.csv", table.str());

        out << rows << " source/frequency pairs, max relative error " << format_number(worst) << " (tolerance "
            << format_number(opts.tolerance) << ")\n";
        if (worst > opts.tolerance) {
            err << "measured beamformer output disagrees with predicted directivity\n";
            return static_cast<int>(kValidationFailure);
        }
        return static_cast<int>(kSuccess);
    });
}

} // namespace uvbeam::cli
