// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uvbeam {

namespace {

constexpr double kPi = std::numbers::pi;

// exp(-j k n s) for every centered sensor index n.
void steering_row(std::vector<cplx>& out, int lo, double k_d, double s)
{
    for (std::size_t m = 0; m < out.size(); ++m)
        out[m] = std::polar(1.0, -k_d * static_cast<double>(lo + static_cast<int>(m)) * s);
}

cplx separable_sum(const ComplexGrid& w, const std::vector<cplx>& ex, const std::vector<cplx>& ey)
{
    const int n = w.size();
    const auto flat = w.flat();
    cplx total{0.0, 0.0};
    for (int a = 0; a < n; ++a) {
        cplx inner{0.0, 0.0};
        const cplx* row = flat.data() + static_cast<std::size_t>(a) * n;
        for (int b = 0; b < n; ++b)
            inner += row[b] * ey[b];
        total += ex[a] * inner;
    }
    return total;
}

std::size_t find_phi(const std::vector<double>& phis, double phi)
{
    for (std::size_t k = 0; k < phis.size(); ++k)
        if (std::abs(phis[k] - phi) <= 1e-9)
            return k;
    throw std::invalid_argument("cross_cut: phi = " + std::to_string(phi * 180.0 / kPi)
                                + " deg is not on the map grid");
}

std::vector<double> column_magnitudes(const DirectivityMap& map, std::size_t ip)
{
    std::vector<double> out(map.theta_samples.size());
    for (std::size_t it = 0; it < out.size(); ++it)
        out[it] = std::abs(map.at(it, ip));
    return out;
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x)
{
    if (x <= xs.front())
        return ys.front();
    if (x >= xs.back())
        return ys.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    const auto lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + (ys[hi] - ys[lo]) * t;
}

} // namespace

std::vector<double> theta_grid(int count)
{
    if (count < 2)
        throw std::invalid_argument("theta grid needs at least 2 samples");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[i] = (kPi / 2.0) * i / (count - 1);
    return out;
}

std::vector<double> phi_grid(int count)
{
    if (count < 2)
        throw std::invalid_argument("phi grid needs at least 2 samples");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[i] = (2.0 * kPi) * i / (count - 1);
    return out;
}

cplx directivity_at(const ArrayConfig& cfg, const WeightMatrix& wm, double theta, double phi)
{
    const int n = wm.n_per_axis();
    const double k_d = 2.0 * kPi * wm.f_hz / cfg.sound_speed_m_s * cfg.spacing_m;
    std::vector<cplx> ex(n), ey(n);
    steering_row(ex, wm.weights.lo(), k_d, std::sin(theta) * std::cos(phi));
    steering_row(ey, wm.weights.lo(), k_d, std::sin(theta) * std::sin(phi));
    return separable_sum(wm.weights, ex, ey);
}

DirectivityMap directivity(const ArrayConfig& cfg, const WeightMatrix& wm, std::span<const double> thetas,
                           std::span<const double> phis)
{
    if (thetas.empty() || phis.empty())
        throw std::invalid_argument("directivity: angular grids must be nonempty");
    for (double t : thetas)
        if (!(t >= 0.0 && t <= kPi / 2.0 + 1e-12))
            throw std::invalid_argument("directivity: theta outside [0, 90] deg");
    if (wm.n_per_axis() != cfg.n_per_axis)
        throw std::invalid_argument("directivity: weight matrix size does not match the array");

    DirectivityMap map;
    map.f_hz = wm.f_hz;
    map.theta_samples.assign(thetas.begin(), thetas.end());
    map.phi_samples.assign(phis.begin(), phis.end());
    map.values.resize(thetas.size() * phis.size());

    const long total = static_cast<long>(map.values.size());
    const std::size_t np = phis.size();
#pragma omp parallel for schedule(static)
    for (long k = 0; k < total; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        map.values[idx] = directivity_at(cfg, wm, thetas[idx / np], phis[idx % np]);
    }
    return map;
}

double reference_magnitude(const DirectivityMap& map)
{
    if (!map.theta_samples.empty() && map.theta_samples.front() == 0.0 && !map.phi_samples.empty())
        return std::abs(map.at(0, 0));
    double peak = 0.0;
    for (const cplx& v : map.values)
        peak = std::max(peak, std::abs(v));
    return peak;
}

double magnitude_db(double mag, double ref)
{
    if (!(ref > 0.0))
        return -300.0;
    return 20.0 * std::log10(std::max(mag / ref, 1e-15));
}

std::vector<CutRow> cross_cut(const DirectivityMap& map, std::pair<double, double> phi_pair)
{
    const std::size_t first = find_phi(map.phi_samples, phi_pair.first);
    const std::size_t second = find_phi(map.phi_samples, phi_pair.second);
    const double ref = reference_magnitude(map);
    const auto& th = map.theta_samples;

    std::vector<CutRow> rows;
    rows.reserve(2 * th.size());
    for (std::size_t r = th.size(); r-- > 0;) {
        if (th[r] == 0.0)
            continue; // broadside is emitted once, from the first half
        const double mag = std::abs(map.at(r, second));
        rows.push_back({-th[r], mag, magnitude_db(mag, ref)});
    }
    for (std::size_t r = 0; r < th.size(); ++r) {
        const double mag = std::abs(map.at(r, first));
        rows.push_back({th[r], mag, magnitude_db(mag, ref)});
    }
    return rows;
}

double edge_ratio(EdgeLevel level)
{
    return level == EdgeLevel::half_amplitude ? 0.5 : 1.0 / std::numbers::sqrt2;
}

std::optional<double> falling_edge(std::span<const double> thetas, std::span<const double> mags, double ratio)
{
    if (thetas.size() != mags.size() || thetas.empty())
        throw std::invalid_argument("falling_edge: size mismatch");
    if (!(mags[0] > 0.0))
        return std::nullopt;
    const double level = ratio * mags[0];
    for (std::size_t i = 1; i < mags.size(); ++i) {
        if (mags[i] < level) {
            const double t = (mags[i - 1] - level) / (mags[i - 1] - mags[i]);
            return thetas[i - 1] + (thetas[i] - thetas[i - 1]) * t;
        }
    }
    return thetas.back();
}

PatternMetrics metrics(const DirectivityMap& map, const PatternSpec& spec, EdgeLevel level)
{
    if (map.theta_samples.empty() || map.phi_samples.empty())
        throw std::invalid_argument("metrics: empty map");
    if (map.theta_samples.front() != 0.0)
        throw std::invalid_argument("metrics: theta grid must start at broadside");

    PatternMetrics out;
    out.f_hz = map.f_hz;
    const auto& th = map.theta_samples;
    const double broadside = std::abs(map.at(0, 0));

    double sq = 0.0;
    for (std::size_t it = 0; it < th.size(); ++it) {
        for (std::size_t ip = 0; ip < map.phi_samples.size(); ++ip) {
            const double diff = std::abs(map.at(it, ip)) - gain_at(spec, std::min(th[it], kPi / 2.0),
                                                                   map.phi_samples[ip]);
            sq += diff * diff;
        }
    }
    out.target_rms_error = std::sqrt(sq / static_cast<double>(map.values.size()));

    if (broadside > 0.0) {
        double edge_sum = 0.0;
        double edge_min = kPi;
        double edge_max = 0.0;
        double sidelobe = -1.0;
        for (std::size_t ip = 0; ip < map.phi_samples.size(); ++ip) {
            const std::vector<double> mags = column_magnitudes(map, ip);
            const double edge = *falling_edge(th, mags, edge_ratio(level));
            edge_sum += edge;
            edge_min = std::min(edge_min, edge);
            edge_max = std::max(edge_max, edge);

            // Sidelobe region starts at the first local minimum past the edge.
            std::size_t i = static_cast<std::size_t>(std::lower_bound(th.begin(), th.end(), edge) - th.begin());
            while (i + 1 < mags.size() && mags[i + 1] <= mags[i])
                ++i;
            for (std::size_t j = i + 1; j < mags.size(); ++j)
                sidelobe = std::max(sidelobe, mags[j]);
        }
        out.mainlobe_edge_theta = edge_sum / static_cast<double>(map.phi_samples.size());
        out.mainlobe_edge_spread = edge_max - edge_min;
        if (sidelobe >= 0.0)
            out.peak_sidelobe_db = magnitude_db(sidelobe, broadside);
    }

    if (const auto* two = std::get_if<TwoLevelPattern>(&spec)) {
        double inner = 0.0, ring = 0.0;
        for (std::size_t ip = 0; ip < map.phi_samples.size(); ++ip) {
            const std::vector<double> mags = column_magnitudes(map, ip);
            inner += interpolate(th, mags, two->theta_c1 / 2.0);
            ring += interpolate(th, mags, (two->theta_c1 + two->theta_c2) / 2.0);
        }
        if (inner > 0.0 && ring > 0.0)
            out.level_ratio_db = 20.0 * std::log10(inner / ring);
    }
    return out;
}

} // namespace uvbeam
