// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/synthesis.hpp"

#include "uvbeam/errors.hpp"
#include "uvbeam/uv_transform.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

namespace uvbeam {

WeightMatrix synthesize_one(const ArrayConfig& cfg, const PatternSpec& spec, double f_hz, const Taper& taper)
{
    const UvGainGrid target = apply_taper(sample_uv_grid(cfg, spec, f_hz), taper);
    const DeformationReport rep = deformation_report(cfg, spec, f_hz);

    WeightMatrix wm;
    wm.f_hz = f_hz;
    wm.weights = centered_idft2(to_spectrum(target.values));
    wm.taper = taper;
    wm.radius = target.radius;
    wm.deformed = rep.deformed();
    return wm;
}

WeightBank synthesize(const ArrayConfig& cfg, const PatternSpec& spec, std::span<const double> freqs_hz,
                      const Taper& taper)
{
    cfg.validate();
    validate(spec);
    if (freqs_hz.empty())
        throw ValidationError("synthesize: frequency list is empty");
    for (std::size_t i = 1; i < freqs_hz.size(); ++i)
        if (!(freqs_hz[i] > freqs_hz[i - 1]))
            throw ValidationError("synthesize: frequencies must be strictly ascending");
    for (double f : freqs_hz) {
        if (!(f > 0.0) || !representable(cfg, f)) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "synthesize: frequency " << f << " Hz is below the representable band (R < 1, minimum "
                << frequency_for_radius(cfg, 1.0) << " Hz)";
            throw ValidationError(msg.str());
        }
    }

    WeightBank bank;
    bank.cfg = cfg;
    bank.spec = spec;
    bank.entries.resize(freqs_hz.size());

    // Each slot is written by exactly one iteration; ordering is fixed by the
    // input list, so output does not depend on scheduling.
    std::exception_ptr failure;
    const auto count = static_cast<long>(freqs_hz.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            bank.entries[i] = synthesize_one(cfg, spec, freqs_hz[i], taper);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return bank;
}

std::vector<double> frequency_list(double f_min_hz, double f_max_hz, int count, FrequencySpacing spacing)
{
    if (count < 1)
        throw ValidationError("frequency list: count must be >= 1");
    if (!(f_min_hz > 0.0) || !(f_max_hz >= f_min_hz))
        throw ValidationError("frequency list: need 0 < f_min <= f_max");
    if (count > 1 && f_max_hz == f_min_hz)
        throw ValidationError("frequency list: f_min == f_max allows only count = 1");

    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = f_min_hz;
        return out;
    }
    for (int k = 0; k < count; ++k) {
        const double t = static_cast<double>(k) / (count - 1);
        out[k] = spacing == FrequencySpacing::linear
            ? f_min_hz + (f_max_hz - f_min_hz) * t
            : std::exp(std::log(f_min_hz) + (std::log(f_max_hz) - std::log(f_min_hz)) * t);
    }
    // Pin the endpoints so log spacing does not drift off the requested band.
    out.front() = f_min_hz;
    out.back() = f_max_hz;
    return out;
}

} // namespace uvbeam
