// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/bank_io.hpp"

#include "uvbeam/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <system_error>

namespace uvbeam {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

double parse_double(const std::string& s, int lineno)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("weights csv line " + std::to_string(lineno) + ": malformed number '" + s + "'");
    return v;
}

int parse_int(const std::string& s, int lineno)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("weights csv line " + std::to_string(lineno) + ": malformed index '" + s + "'");
    return v;
}

} // namespace

std::string format_number(double x)
{
    // to_chars ignores the C locale, unlike printf.
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_weight_csv(std::ostream& out, const WeightBank& bank)
{
    out << "f_hz,n1,n2,re,im\n";
    for (const WeightMatrix& wm : bank.entries) {
        const std::string f = format_number(wm.f_hz);
        for (int n1 = wm.weights.lo(); n1 <= wm.weights.hi(); ++n1) {
            for (int n2 = wm.weights.lo(); n2 <= wm.weights.hi(); ++n2) {
                const cplx w = wm.weights(n1, n2);
                out << f << ',' << n1 << ',' << n2 << ',' << format_number(w.real()) << ','
                    << format_number(w.imag()) << '\n';
            }
        }
    }
}

std::vector<LoadedWeights> read_weight_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || (line != "f_hz,n1,n2,re,im" && line != "f_hz,n1,n2,re,im\r"))
        throw ValidationError("weights csv: expected header 'f_hz,n1,n2,re,im'");

    std::map<double, std::map<std::pair<int, int>, cplx>> by_freq;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::string field[5];
        std::istringstream ss(line);
        for (int k = 0; k < 5; ++k)
            if (!std::getline(ss, field[k], k < 4 ? ',' : '\n'))
                throw ValidationError("weights csv line " + std::to_string(lineno) + ": expected 5 fields");
        const double f = parse_double(field[0], lineno);
        const int n1 = parse_int(field[1], lineno);
        const int n2 = parse_int(field[2], lineno);
        const cplx w{parse_double(field[3], lineno), parse_double(field[4], lineno)};
        if (!by_freq[f].emplace(std::make_pair(n1, n2), w).second)
            throw ValidationError("weights csv line " + std::to_string(lineno) + ": duplicate sensor entry");
    }
    if (by_freq.empty())
        throw ValidationError("weights csv: no rows");

    std::vector<LoadedWeights> out;
    int common_n = -1;
    for (const auto& [f, cells] : by_freq) {
        const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cells.size()))));
        if (static_cast<std::size_t>(n) * n != cells.size() || n < 1)
            throw ValidationError("weights csv: frequency " + format_number(f) + " is not a square block");
        if (common_n >= 0 && n != common_n)
            throw ValidationError("weights csv: inconsistent array size across frequencies");
        common_n = n;

        LoadedWeights lw{f, ComplexGrid(n)};
        for (const auto& [idx, w] : cells) {
            if (!lw.weights.contains(idx.first, idx.second))
                throw ValidationError("weights csv: sensor index outside the centered range at f="
                                      + format_number(f));
            lw.weights(idx.first, idx.second) = w;
        }
        out.push_back(std::move(lw));
    }
    return out;
}

void write_map_csv(std::ostream& out, const DirectivityMap& map)
{
    const double ref = reference_magnitude(map);
    const std::string f = format_number(map.f_hz);
    out << "f_hz,theta_deg,phi_deg,mag,mag_db\n";
    for (std::size_t it = 0; it < map.theta_samples.size(); ++it) {
        const std::string th = format_number(map.theta_samples[it] * kDeg);
        for (std::size_t ip = 0; ip < map.phi_samples.size(); ++ip) {
            const double mag = std::abs(map.at(it, ip));
            out << f << ',' << th << ',' << format_number(map.phi_samples[ip] * kDeg) << ','
                << format_number(mag) << ',' << format_number(magnitude_db(mag, ref)) << '\n';
        }
    }
}

void write_cut_csv(std::ostream& out, const std::vector<CutRow>& rows)
{
    out << "theta_deg_signed,mag,mag_db\n";
    for (const CutRow& r : rows)
        out << format_number(r.theta_signed * kDeg) << ',' << format_number(r.magnitude) << ','
            << format_number(r.magnitude_db) << '\n';
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " to " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace uvbeam
