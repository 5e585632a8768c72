#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sp8d/fft.hpp"
#include "sp8d/field.hpp"
#include "sp8d/symbol.hpp"

namespace sp8d {

struct PulseShapeSpec {
    double rolloff = 0.1;
    int sps = 64;           // samples per symbol
    int span_symbols = 64;  // time-domain filter support (symbols)
    double baud_hz = 32e9;

    double sample_rate_hz() const { return baud_hz * sps; }

    void check() const {
        if (rolloff <= 0.0 || rolloff > 1.0) throw std::invalid_argument("rolloff out of (0,1]");
        if (sps < 2 || sps % 2 != 0) throw std::invalid_argument("sps must be even and >= 2");
        if (span_symbols < 16) throw std::invalid_argument("filter span below 16 symbols");
        if (baud_hz <= 0.0) throw std::invalid_argument("bad baud rate");
    }
};

/// Time-domain root-raised-cosine impulse response, length
/// span_symbols*sps + 1, normalized to unit energy. Removable
/// singularities at t = 0 and t = +-T/(4*rolloff) use their limits.
inline std::vector<double> rrc_taps(const PulseShapeSpec& spec) {
    spec.check();
    const double b = spec.rolloff;
    const int n = spec.span_symbols * spec.sps + 1;
    const int mid = (n - 1) / 2;
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double tau = static_cast<double>(i - mid) / spec.sps;  // t/T
        double v;
        if (std::abs(tau) < 1e-12) {
            v = 1.0 - b + 4.0 * b / M_PI;
        } else if (std::abs(std::abs(tau) - 1.0 / (4.0 * b)) < 1e-9) {
            const double a = M_PI / (4.0 * b);
            v = b / std::sqrt(2.0) *
                ((1.0 + 2.0 / M_PI) * std::sin(a) + (1.0 - 2.0 / M_PI) * std::cos(a));
        } else {
            const double den = M_PI * tau * (1.0 - 16.0 * b * b * tau * tau);
            v = (std::sin(M_PI * tau * (1.0 - b)) +
                 4.0 * b * tau * std::cos(M_PI * tau * (1.0 + b))) /
                den;
        }
        h[static_cast<std::size_t>(i)] = v;
    }
    double e = 0.0;
    for (double v : h) e += v * v;
    const double g = 1.0 / std::sqrt(e);
    for (double& v : h) v *= g;
    return h;
}

/// Analytic sqrt-raised-cosine magnitude on the length-n FFT grid,
/// scaled by sqrt(sps) so the matched cascade has exactly unit gain at
/// symbol instants. Zero phase; shaping with it is free of truncation ISI.
inline std::vector<double> rrc_spectrum(std::size_t n, double sample_rate_hz,
                                        const PulseShapeSpec& spec) {
    const double t_sym = 1.0 / spec.baud_hz;
    const double b = spec.rolloff;
    const double f1 = (1.0 - b) / (2.0 * t_sym);
    const double f2 = (1.0 + b) / (2.0 * t_sym);
    const double root_sps = std::sqrt(static_cast<double>(spec.sps));
    std::vector<double> h(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = std::abs(fft::bin_frequency_hz(k, n, sample_rate_hz));
        double rc = 0.0;
        if (f <= f1)
            rc = 1.0;
        else if (f <= f2)
            rc = 0.5 * (1.0 + std::cos(M_PI * t_sym / b * (f - f1)));
        h[k] = root_sps * std::sqrt(rc);
    }
    return h;
}

namespace detail {

inline void apply_real_spectrum(SampledField& f, const std::vector<double>& h) {
    auto& plan = fft::plan_for(f.size());
    for (auto* v : {&f.x, &f.y}) {
        plan.forward(v->data());
        for (std::size_t k = 0; k < v->size(); ++k) (*v)[k] *= h[k];
        plan.inverse(v->data());
    }
}

}  // namespace detail

/// Dual-polarization 4D slots -> RRC-shaped waveform at sps samples per
/// slot, scaled so the measured average power equals power_dbm. Periodic
/// boundary (circular filtering) throughout the simulation chain.
inline SampledField pulse_shape_slots(const std::vector<JonesVector>& slots,
                                      const PulseShapeSpec& spec, double power_dbm) {
    spec.check();
    if (slots.empty()) throw std::invalid_argument("pulse_shape: empty symbol sequence");
    const std::size_t n = slots.size() * static_cast<std::size_t>(spec.sps);
    SampledField f;
    f.sample_rate_hz = spec.sample_rate_hz();
    f.x.assign(n, {});
    f.y.assign(n, {});
    for (std::size_t i = 0; i < slots.size(); ++i) {
        f.x[i * static_cast<std::size_t>(spec.sps)] = slots[i].ex;
        f.y[i * static_cast<std::size_t>(spec.sps)] = slots[i].ey;
    }
    detail::apply_real_spectrum(f, rrc_spectrum(n, f.sample_rate_hz, spec));
    const double p = average_power_w(f);
    scale(f, std::sqrt(dbm_to_w(power_dbm) / p));
    return f;
}

inline std::vector<JonesVector> to_slots(const std::vector<Symbol8D>& symbols) {
    std::vector<JonesVector> slots;
    slots.reserve(2 * symbols.size());
    for (const auto& s : symbols) {
        slots.push_back(s.t1);
        slots.push_back(s.t2);
    }
    return slots;
}

inline SampledField pulse_shape(const std::vector<Symbol8D>& symbols, const PulseShapeSpec& spec,
                                double power_dbm) {
    return pulse_shape_slots(to_slots(symbols), spec, power_dbm);
}

}  // namespace sp8d
