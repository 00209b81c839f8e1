// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace uvbeam {

namespace {

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct PlanDestroy {
    void operator()(fftw_plan_s* p) const
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using FftwPlan = std::unique_ptr<fftw_plan_s, PlanDestroy>;

int wrap_index(int k, int n)
{
    const int r = k % n;
    return r < 0 ? r + n : r;
}

// Centered indices map onto FFT bins by k mod N. Loading the input this way
// and reading the output back the same way is the ifftshift/fftshift pair.
ComplexGrid centered_transform(const ComplexGrid& in, int sign)
{
    const int n = in.size();
    const auto total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);

    FftwBuffer buf(fftw_alloc_complex(total));
    if (!buf)
        throw std::bad_alloc();
    // FFTW_ESTIMATE does not touch the buffer and picks the same plan every
    // time, which keeps results bit-reproducible.
    FftwPlan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_2d(n, n, buf.get(), buf.get(), sign, FFTW_ESTIMATE));
    }
    if (!plan)
        throw std::runtime_error("fftw: plan creation failed");

    for (int i = in.lo(); i <= in.hi(); ++i) {
        for (int j = in.lo(); j <= in.hi(); ++j) {
            const auto k = static_cast<std::size_t>(wrap_index(i, n)) * n + wrap_index(j, n);
            buf[k][0] = in(i, j).real();
            buf[k][1] = in(i, j).imag();
        }
    }

    fftw_execute(plan.get());

    ComplexGrid out(n);
    for (int i = out.lo(); i <= out.hi(); ++i) {
        for (int j = out.lo(); j <= out.hi(); ++j) {
            const auto k = static_cast<std::size_t>(wrap_index(i, n)) * n + wrap_index(j, n);
            out(i, j) = {buf[k][0], buf[k][1]};
        }
    }
    return out;
}

} // namespace

ComplexGrid centered_idft2(const CenteredSpectrum& spectrum)
{
    ComplexGrid w = centered_transform(spectrum.values, FFTW_BACKWARD);
    const double scale = 1.0 / (static_cast<double>(w.size()) * w.size());
    for (auto& x : w.flat())
        x *= scale;
    return w;
}

CenteredSpectrum centered_dft2(const ComplexGrid& weights)
{
    return {centered_transform(weights, FFTW_FORWARD)};
}

CenteredSpectrum to_spectrum(const RealGrid& real)
{
    CenteredSpectrum s{ComplexGrid(real.size())};
    auto dst = s.values.flat();
    auto src = real.flat();
    for (std::size_t k = 0; k < src.size(); ++k)
        dst[k] = src[k];
    return s;
}

Taper Taper::tukey(double edge_frac)
{
    if (!(edge_frac > 0.0 && edge_frac <= 1.0))
        throw std::invalid_argument("tukey taper: edge_frac must lie in (0, 1]");
    return {Kind::tukey, edge_frac};
}

double taper_factor(const Taper& taper, double rho, double support_radius)
{
    if (taper.kind == Taper::Kind::none || !(support_radius > 0.0))
        return 1.0;
    const double start = (1.0 - taper.edge_frac) * support_radius;
    if (rho <= start)
        return 1.0;
    if (rho >= support_radius)
        return 0.0;
    const double x = (rho - start) / (taper.edge_frac * support_radius);
    return 0.5 * (1.0 + std::cos(std::numbers::pi * x));
}

UvGainGrid apply_taper(const UvGainGrid& grid, const Taper& taper)
{
    if (taper.kind == Taper::Kind::none)
        return grid;
    if (!(taper.edge_frac > 0.0 && taper.edge_frac <= 1.0))
        throw std::invalid_argument("tukey taper: edge_frac must lie in (0, 1]");

    UvGainGrid out = grid;
    for (int u = out.values.lo(); u <= out.values.hi(); ++u)
        for (int v = out.values.lo(); v <= out.values.hi(); ++v)
            out.values(u, v) *= taper_factor(taper, std::hypot(double(u), double(v)), grid.support_radius);
    return out;
}

} // namespace uvbeam
