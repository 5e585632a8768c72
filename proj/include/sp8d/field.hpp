#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace sp8d {

/// Dual-polarization complex baseband waveform. Samples are field
/// amplitudes in sqrt(W), so |x|^2 is instantaneous power in W.
struct SampledField {
    std::vector<std::complex<double>> x;
    std::vector<std::complex<double>> y;
    double sample_rate_hz = 0.0;
    double center_wavelength_m = 1550e-9;

    std::size_t size() const { return x.size(); }

    void check() const {
        if (x.size() != y.size()) throw std::invalid_argument("SampledField: x/y length mismatch");
        if (sample_rate_hz <= 0.0) throw std::invalid_argument("SampledField: bad sample rate");
    }
};

inline double average_power_w(const SampledField& f) {
    if (f.x.empty()) return 0.0;
    double p = 0.0;
    for (std::size_t i = 0; i < f.x.size(); ++i) p += std::norm(f.x[i]) + std::norm(f.y[i]);
    return p / static_cast<double>(f.x.size());
}

inline void scale(SampledField& f, double g) {
    for (auto& v : f.x) v *= g;
    for (auto& v : f.y) v *= g;
}

inline double dbm_to_w(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
inline double w_to_dbm(double w) { return 10.0 * std::log10(w * 1e3); }

/// In-place multiplication by exp(+i 2 pi f n / fs): shifts the spectrum
/// up by f. Exact complex exponential, not an FFT bin rotation.
inline void frequency_shift(SampledField& f, double shift_hz) {
    if (shift_hz == 0.0) return;
    const double dphi = 2.0 * M_PI * shift_hz / f.sample_rate_hz;
    // Recurrence with periodic resync keeps O(n) without per-sample sincos.
    std::complex<double> rot(1.0, 0.0);
    const std::complex<double> step(std::cos(dphi), std::sin(dphi));
    for (std::size_t n = 0; n < f.x.size(); ++n) {
        if ((n & 1023u) == 0)
            rot = {std::cos(dphi * static_cast<double>(n)), std::sin(dphi * static_cast<double>(n))};
        const double rr = rot.real(), ri = rot.imag();
        const auto mul = [rr, ri](std::complex<double>& v) {
            const double vr = v.real(), vi = v.imag();
            v = {vr * rr - vi * ri, vr * ri + vi * rr};
        };
        mul(f.x[n]);
        mul(f.y[n]);
        rot = {rot.real() * step.real() - rot.imag() * step.imag(),
               rot.real() * step.imag() + rot.imag() * step.real()};
    }
}

}  // namespace sp8d
