#pragma once

#include <stdexcept>
#include <vector>

#include "sp8d/field.hpp"
#include "sp8d/rrc.hpp"

namespace sp8d {

/// Sums the channels onto a frequency grid: channels[i] is shifted by
/// k*grid_hz with k = i - (n-1)/2, so the middle list entry lands at
/// baseband (1550 nm reference). occupied_bw_hz is the per-channel
/// occupied bandwidth used for the aliasing guard.
inline SampledField wdm_mux(const std::vector<SampledField>& channels, double grid_hz,
                            double occupied_bw_hz) {
    if (channels.empty() || channels.size() % 2 == 0)
        throw std::invalid_argument("wdm_mux: need an odd channel count");
    const std::size_t n = channels.front().size();
    const double fs = channels.front().sample_rate_hz;
    for (const auto& c : channels) {
        c.check();
        if (c.size() != n || c.sample_rate_hz != fs)
            throw std::invalid_argument("wdm_mux: channels must share grid and length");
    }
    const double occupied = static_cast<double>(channels.size() - 1) * grid_hz + occupied_bw_hz;
    if (occupied >= fs)
        throw std::invalid_argument("wdm_mux: comb exceeds simulation bandwidth (aliasing)");

    SampledField out;
    out.sample_rate_hz = fs;
    out.x.assign(n, {});
    out.y.assign(n, {});
    const int half = static_cast<int>(channels.size() - 1) / 2;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        SampledField shifted = channels[i];
        frequency_shift(shifted, (static_cast<int>(i) - half) * grid_hz);
        for (std::size_t s = 0; s < n; ++s) {
            out.x[s] += shifted.x[s];
            out.y[s] += shifted.y[s];
        }
    }
    return out;
}

/// Shifts channel k to baseband, applies the matched RRC filter, and
/// decimates to 2 samples/symbol for the equalizer.
inline SampledField channel_select(const SampledField& field, int k, const PulseShapeSpec& spec,
                                   double grid_hz) {
    field.check();
    spec.check();
    SampledField base = field;
    frequency_shift(base, -k * grid_hz);
    detail::apply_real_spectrum(base, rrc_spectrum(base.size(), base.sample_rate_hz, spec));

    const int decim = spec.sps / 2;
    if (decim < 1 || base.size() % static_cast<std::size_t>(decim) != 0)
        throw std::invalid_argument("channel_select: field length not divisible by sps/2");
    // Post-filter bandwidth is (1+rolloff)*baud; the 2 sps grid must hold it.
    if ((1.0 + spec.rolloff) * spec.baud_hz > 2.0 * spec.baud_hz)
        throw std::invalid_argument("channel_select: decimation would alias");

    SampledField out;
    out.sample_rate_hz = 2.0 * spec.baud_hz;
    out.center_wavelength_m = field.center_wavelength_m;
    const std::size_t m = base.size() / static_cast<std::size_t>(decim);
    out.x.resize(m);
    out.y.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.x[i] = base.x[i * static_cast<std::size_t>(decim)];
        out.y[i] = base.y[i * static_cast<std::size_t>(decim)];
    }
    return out;
}

}  // namespace sp8d
