// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include "uvbeam/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <system_error>

namespace uvbeam::cli {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace {

constexpr double kRad = std::numbers::pi / 180.0;

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::optional<double> to_double(const std::string& raw)
{
    const std::string s = trim(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<int> to_int(const std::string& raw)
{
    const std::string s = trim(raw);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

// Collects field-level problems so one run reports all of them.
class Diagnostics {
public:
    void add(const std::string& key, const std::string& what) { items_.push_back("[" + key + "] " + what); }

    void throw_if_any() const
    {
        if (items_.empty())
            return;
        std::string msg = "invalid configuration:";
        for (const auto& s : items_)
            msg += "\n  " + s;
        throw ValidationError(msg);
    }

private:
    std::vector<std::string> items_;
};

class SectionReader {
public:
    SectionReader(const pt::ptree& root, std::string section, Diagnostics& diag)
        : section_(std::move(section)), diag_(diag)
    {
        if (const auto child = root.get_child_optional(section_))
            node_ = &*child;
    }

    bool present() const { return node_ != nullptr; }

    std::optional<std::string> raw(const std::string& key) const
    {
        if (!node_)
            return std::nullopt;
        const auto v = node_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
        if (!v)
            return std::nullopt;
        return trim(*v);
    }

    std::optional<double> number(const std::string& key, bool required) const
    {
        const auto s = raw(key);
        if (!s) {
            if (required)
                diag_.add(section_ + "." + key, "missing");
            return std::nullopt;
        }
        const auto v = to_double(*s);
        if (!v)
            diag_.add(section_ + "." + key, "not a number: '" + *s + "'");
        return v;
    }

    std::optional<int> integer(const std::string& key, bool required) const
    {
        const auto s = raw(key);
        if (!s) {
            if (required)
                diag_.add(section_ + "." + key, "missing");
            return std::nullopt;
        }
        const auto v = to_int(*s);
        if (!v)
            diag_.add(section_ + "." + key, "not an integer: '" + *s + "'");
        return v;
    }

    void error(const std::string& key, const std::string& what) const { diag_.add(section_ + "." + key, what); }

private:
    std::string section_;
    Diagnostics& diag_;
    const pt::ptree* node_ = nullptr;
};

pt::ptree parse_ini(const std::string& text)
{
    pt::ptree root;
    std::istringstream in(text);
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ValidationError("config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
    }
    return root;
}

ArrayConfig read_array(const pt::ptree& root, Diagnostics& diag)
{
    SectionReader s(root, "array", diag);
    if (!s.present()) {
        diag.add("array", "section missing");
        return {};
    }
    ArrayConfig cfg;
    if (const auto n = s.integer("n", true)) {
        cfg.n_per_axis = *n;
        if (*n < 3)
            s.error("n", "must be >= 3");
    }
    if (const auto d = s.number("spacing_m", true)) {
        cfg.spacing_m = *d;
        if (!(*d > 0.0))
            s.error("spacing_m", "must be positive");
    }
    if (const auto c = s.number("sound_speed_m_s", false)) {
        cfg.sound_speed_m_s = *c;
        if (!(*c > 0.0))
            s.error("sound_speed_m_s", "must be positive");
    }
    return cfg;
}

PatternSpec read_pattern(const pt::ptree& root, const fs::path& base_dir, fs::path* tabulated_file,
                         Diagnostics& diag)
{
    SectionReader s(root, "pattern", diag);
    if (!s.present()) {
        diag.add("pattern", "section missing");
        return ConePattern{};
    }
    const auto type = s.raw("type");
    if (!type) {
        s.error("type", "missing (cone | two_level | sinc | tabulated)");
        return ConePattern{};
    }

    PatternSpec spec;
    const std::string t = lower(*type);
    if (t == "cone") {
        ConePattern p;
        if (const auto v = s.number("theta_c_deg", true))
            p.theta_c = *v * kRad;
        spec = p;
    } else if (t == "two_level") {
        TwoLevelPattern p;
        if (const auto v = s.number("theta_c1_deg", true))
            p.theta_c1 = *v * kRad;
        if (const auto v = s.number("theta_c2_deg", true))
            p.theta_c2 = *v * kRad;
        if (const auto v = s.number("inner_gain", false))
            p.inner_gain = *v;
        if (const auto v = s.number("outer_gain", false))
            p.outer_gain = *v;
        spec = p;
    } else if (t == "sinc") {
        SincPattern p;
        if (const auto v = s.number("alpha", true))
            p.alpha = *v;
        spec = p;
    } else if (t == "tabulated") {
        Interpolation interp = Interpolation::bilinear;
        if (const auto mode = s.raw("interpolation")) {
            if (lower(*mode) == "nearest")
                interp = Interpolation::nearest;
            else if (lower(*mode) != "bilinear")
                s.error("interpolation", "expected bilinear | nearest, got '" + *mode + "'");
        }
        const auto file = s.raw("file");
        if (!file) {
            s.error("file", "missing");
            return ConePattern{};
        }
        fs::path path = *file;
        if (path.is_relative())
            path = base_dir / path;
        if (!fs::exists(path)) {
            s.error("file", "does not exist: " + path.string());
            return ConePattern{};
        }
        if (tabulated_file)
            *tabulated_file = fs::absolute(path).lexically_normal();
        try {
            spec = read_tabulated_csv(path, interp);
        } catch (const std::exception& e) {
            s.error("file", e.what());
            return ConePattern{};
        }
    } else {
        s.error("type", "unknown pattern type '" + *type + "'");
        return ConePattern{};
    }

    try {
        validate(spec);
    } catch (const std::invalid_argument& e) {
        diag.add("pattern", e.what());
    }
    return spec;
}

} // namespace

std::vector<double> JobConfig::frequencies() const
{
    if (!band.explicit_hz.empty())
        return band.explicit_hz;
    return frequency_list(band.f_min_hz, band.f_max_hz, band.count, band.spacing);
}

std::string exact_number(double x)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

Taper parse_taper(const std::string& text)
{
    const std::string t = lower(trim(text));
    if (t == "none")
        return Taper::none();
    if (t == "tukey")
        return Taper::tukey();
    if (t.rfind("tukey:", 0) == 0) {
        const auto frac = to_double(t.substr(6));
        if (!frac || !(*frac > 0.0 && *frac <= 1.0))
            throw ValidationError("taper: tukey fraction must lie in (0, 1], got '" + t.substr(6) + "'");
        return Taper::tukey(*frac);
    }
    throw ValidationError("taper: expected none | tukey | tukey:FRAC, got '" + text + "'");
}

std::string taper_string(const Taper& taper)
{
    return taper.kind == Taper::Kind::none ? std::string("none") : "tukey:" + exact_number(taper.edge_frac);
}

ArrayConfig read_array_section(const pt::ptree& root)
{
    Diagnostics diag;
    ArrayConfig cfg = read_array(root, diag);
    diag.throw_if_any();
    return cfg;
}

PatternSpec read_pattern_section(const pt::ptree& root, const fs::path& base_dir, fs::path* tabulated_file)
{
    Diagnostics diag;
    PatternSpec spec = read_pattern(root, base_dir, tabulated_file, diag);
    diag.throw_if_any();
    return spec;
}

JobConfig parse_job_config(const std::string& text, const fs::path& base_dir)
{
    const pt::ptree root = parse_ini(text);
    Diagnostics diag;
    JobConfig job;

    job.array = read_array(root, diag);
    job.pattern = read_pattern(root, base_dir, &job.pattern_file, diag);

    SectionReader band(root, "band", diag);
    if (!band.present()) {
        diag.add("band", "section missing");
    } else if (const auto list = band.raw("frequencies_hz")) {
        std::istringstream ss(*list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto v = to_double(item);
            if (!v || !(*v > 0.0)) {
                band.error("frequencies_hz", "bad entry '" + trim(item) + "'");
                continue;
            }
            job.band.explicit_hz.push_back(*v);
        }
        if (job.band.explicit_hz.empty())
            band.error("frequencies_hz", "empty list");
        if (!std::is_sorted(job.band.explicit_hz.begin(), job.band.explicit_hz.end(), std::less_equal<>()))
            band.error("frequencies_hz", "must be strictly ascending");
    } else {
        const auto fmin = band.number("f_min_hz", true);
        const auto fmax = band.number("f_max_hz", true);
        const auto count = band.integer("count", true);
        if (fmin)
            job.band.f_min_hz = *fmin;
        if (fmax)
            job.band.f_max_hz = *fmax;
        if (count)
            job.band.count = *count;
        if (fmin && !(*fmin > 0.0))
            band.error("f_min_hz", "must be positive");
        if (fmin && fmax && *fmax < *fmin)
            band.error("f_max_hz", "must be >= f_min_hz");
        if (count && *count < 1)
            band.error("count", "must be >= 1");
        if (fmin && fmax && count && *count > 1 && *fmin == *fmax)
            band.error("count", "f_min_hz == f_max_hz allows only count = 1");
        if (const auto sp = band.raw("spacing")) {
            if (lower(*sp) == "linear")
                job.band.spacing = FrequencySpacing::linear;
            else if (lower(*sp) != "log")
                band.error("spacing", "expected linear | log, got '" + *sp + "'");
        }
    }
    if (const auto mode = band.raw("mode")) {
        if (lower(*mode) == "relaxed")
            job.band.mode = BandKind::relaxed;
        else if (lower(*mode) != "strict")
            band.error("mode", "expected strict | relaxed, got '" + *mode + "'");
    }
    if (job.band.mode == BandKind::relaxed && !std::holds_alternative<ConePattern>(job.pattern))
        band.error("mode", "relaxed band is defined for cone patterns only");

    SectionReader synth(root, "synthesis", diag);
    if (const auto kind = synth.raw("taper")) {
        const std::string k = lower(*kind);
        if (k == "none") {
            job.taper = Taper::none();
        } else if (k == "tukey") {
            double frac = 0.25;
            if (const auto f = synth.number("edge_frac", false))
                frac = *f;
            if (frac > 0.0 && frac <= 1.0)
                job.taper = Taper::tukey(frac);
            else
                synth.error("edge_frac", "must lie in (0, 1]");
        } else {
            synth.error("taper", "expected none | tukey, got '" + *kind + "'");
        }
    }

    SectionReader output(root, "output", diag);
    if (const auto dir = output.raw("directory")) {
        fs::path p = *dir;
        job.output.directory = p.is_relative() ? base_dir / p : p;
    } else {
        job.output.directory = base_dir / "out";
    }
    if (const auto emit = output.raw("emit")) {
        job.output.emit_map = job.output.emit_cut = job.output.emit_metrics = false;
        std::istringstream ss(*emit);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string e = lower(trim(item));
            if (e == "map")
                job.output.emit_map = true;
            else if (e == "cut")
                job.output.emit_cut = true;
            else if (e == "metrics")
                job.output.emit_metrics = true;
            else if (e != "weights")
                output.error("emit", "unknown output '" + e + "'");
        }
    }

    diag.throw_if_any();
    return job;
}

JobConfig load_job_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    return parse_job_config(ss.str(), base);
}

void write_array_section(pt::ptree& root, const ArrayConfig& cfg)
{
    root.put("array.n", cfg.n_per_axis);
    root.put("array.spacing_m", exact_number(cfg.spacing_m));
    root.put("array.sound_speed_m_s", exact_number(cfg.sound_speed_m_s));
}

namespace {

// Shortest degree text that the reader maps back to exactly `rad`.
std::string angle_text(double rad)
{
    const double deg = rad * 180.0 / std::numbers::pi;
    char buf[64];
    for (int digits = 1; digits <= 17; ++digits) {
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, deg, std::chars_format::general, digits);
        double back = 0.0;
        std::from_chars(buf, ptr, back);
        if (back * kRad == rad)
            return std::string(buf, ptr);
    }
    return exact_number(deg);
}

} // namespace

void write_pattern_section(pt::ptree& root, const PatternSpec& spec, const fs::path& tabulated_file)
{
    root.put("pattern.type", pattern_name(spec));
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ConePattern>) {
                root.put("pattern.theta_c_deg", angle_text(p.theta_c));
            } else if constexpr (std::is_same_v<T, TwoLevelPattern>) {
                root.put("pattern.theta_c1_deg", angle_text(p.theta_c1));
                root.put("pattern.theta_c2_deg", angle_text(p.theta_c2));
                root.put("pattern.inner_gain", exact_number(p.inner_gain));
                root.put("pattern.outer_gain", exact_number(p.outer_gain));
            } else if constexpr (std::is_same_v<T, SincPattern>) {
                root.put("pattern.alpha", exact_number(p.alpha));
            } else {
                root.put("pattern.file", tabulated_file.string());
                root.put("pattern.interpolation",
                         p.interpolation == Interpolation::nearest ? "nearest" : "bilinear");
            }
        },
        spec);
}

std::string to_ini(const pt::ptree& root)
{
    std::ostringstream out;
    pt::write_ini(out, root);
    return out.str();
}

} // namespace uvbeam::cli
