#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "sp8d/fft.hpp"
#include "sp8d/field.hpp"
#include "sp8d/jones.hpp"
#include "sp8d/rng.hpp"

namespace sp8d {

inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kPlanck = 6.62607015e-34;          // J s

struct SpanParams {
    double length_km = 75.0;
    double alpha_db_km = 0.2;
    double d_ps_nm_km = 4.0;   // chromatic dispersion at 1550 nm
    double gamma_w_km = 1.3;   // nonlinear coefficient, 1/(W km)
    double step_km = 0.5;      // SSFM step

    /// beta2 = -D lambda^2 / (2 pi c) in s^2/m.
    double beta2_s2_m(double lambda_m) const {
        return -(d_ps_nm_km * 1e-6) * lambda_m * lambda_m / (2.0 * M_PI * kSpeedOfLight);
    }

    double loss_db() const { return alpha_db_km * length_km; }

    void check() const {
        if (length_km <= 0 || alpha_db_km < 0 || gamma_w_km < 0 || step_km <= 0)
            throw std::invalid_argument("SpanParams: nonpositive parameter");
    }
};

enum class NonlinearModel {
    MANAKOV,      // common phase gamma*(8/9)*(|x|^2+|y|^2) on both polarizations
    SCALAR_TEST,  // per-polarization NLSE, analytic validation only
};

struct LinkConfig {
    int spans = 60;
    SpanParams span;
    bool ideal_dcf = true;
    double nf_db = 7.0;
    // Noise loaded once at the receiver for this many amplifier passes;
    // -1 means "same as spans" (the physical link). An explicit value
    // supports AWGN-only and scaled-down experiments.
    int noise_spans = -1;
    NonlinearModel model = NonlinearModel::MANAKOV;

    double amp_gain_db() const { return span.loss_db(); }
    int effective_noise_spans() const { return noise_spans < 0 ? spans : noise_spans; }
};

namespace detail {

/// Dispersion + loss transfer for one linear (half-)segment, per-bin.
inline std::vector<Complex> linear_operator(std::size_t n, double fs, double beta2_l,
                                            double amp_log_loss) {
    std::vector<Complex> h(n);
    const double damp = std::exp(-amp_log_loss);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = 2.0 * M_PI * fft::bin_frequency_hz(k, n, fs);
        const double ph = 0.5 * beta2_l * w * w;
        h[k] = Complex(std::cos(ph), std::sin(ph)) * damp;
    }
    return h;
}

inline void apply_spectrum(SampledField& f, const std::vector<Complex>& h) {
    auto& plan = fft::plan_for(f.size());
    for (auto* v : {&f.x, &f.y}) {
        plan.forward(v->data());
        double* d = reinterpret_cast<double*>(v->data());
        const double* hh = reinterpret_cast<const double*>(h.data());
        for (std::size_t k = 0; k < h.size(); ++k) {
            const double ar = d[2 * k], ai = d[2 * k + 1];
            const double br = hh[2 * k], bi = hh[2 * k + 1];
            d[2 * k] = ar * br - ai * bi;
            d[2 * k + 1] = ar * bi + ai * br;
        }
        plan.inverse(v->data());
    }
}

inline void nonlinear_phase(SampledField& f, double coeff_manakov, double coeff_scalar,
                            NonlinearModel model) {
    const std::size_t n = f.size();
    double* xr = reinterpret_cast<double*>(f.x.data());
    double* yr = reinterpret_cast<double*>(f.y.data());
    if (model == NonlinearModel::MANAKOV) {
        for (std::size_t i = 0; i < n; ++i) {
            const double px = xr[2 * i] * xr[2 * i] + xr[2 * i + 1] * xr[2 * i + 1];
            const double py = yr[2 * i] * yr[2 * i] + yr[2 * i + 1] * yr[2 * i + 1];
            const double ph = coeff_manakov * (px + py);
            const double c = std::cos(ph), s = std::sin(ph);
            const double ax = xr[2 * i], bx = xr[2 * i + 1];
            xr[2 * i] = ax * c - bx * s;
            xr[2 * i + 1] = ax * s + bx * c;
            const double ay = yr[2 * i], by = yr[2 * i + 1];
            yr[2 * i] = ay * c - by * s;
            yr[2 * i + 1] = ay * s + by * c;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double px = xr[2 * i] * xr[2 * i] + xr[2 * i + 1] * xr[2 * i + 1];
            const double py = yr[2 * i] * yr[2 * i] + yr[2 * i + 1] * yr[2 * i + 1];
            const double phx = coeff_scalar * px, phy = coeff_scalar * py;
            double c = std::cos(phx), s = std::sin(phx);
            const double ax = xr[2 * i], bx = xr[2 * i + 1];
            xr[2 * i] = ax * c - bx * s;
            xr[2 * i + 1] = ax * s + bx * c;
            c = std::cos(phy);
            s = std::sin(phy);
            const double ay = yr[2 * i], by = yr[2 * i + 1];
            yr[2 * i] = ay * c - by * s;
            yr[2 * i + 1] = ay * s + by * c;
        }
    }
}

}  // namespace detail

/// Symmetric split-step Fourier integration of one span. Linear
/// half-steps carry dispersion and alpha/2 loss in the frequency domain;
/// the nonlinear step rotates the phase by gamma_eff * power * Leff(dz).
/// Adjacent half-steps are fused, which leaves the splitting unchanged.
inline SampledField propagate_span(const SampledField& field, const SpanParams& p,
                                   NonlinearModel model = NonlinearModel::MANAKOV) {
    field.check();
    p.check();
    const std::size_t n = field.size();
    const double fs = field.sample_rate_hz;
    const int steps = std::max(1, static_cast<int>(std::llround(p.length_km / p.step_km)));
    const double dz_m = p.length_km * 1e3 / steps;
    const double beta2 = p.beta2_s2_m(field.center_wavelength_m);
    const double alpha_np_m = p.alpha_db_km * std::log(10.0) / 10.0 / 1e3;  // power, 1/m
    const double leff_m =
        alpha_np_m > 0.0 ? (1.0 - std::exp(-alpha_np_m * dz_m)) / alpha_np_m : dz_m;
    const double g_manakov = p.gamma_w_km * 1e-3 * (8.0 / 9.0) * leff_m;
    const double g_scalar = p.gamma_w_km * 1e-3 * leff_m;

    const auto half = detail::linear_operator(n, fs, beta2 * dz_m / 2.0, alpha_np_m * dz_m / 4.0);
    const auto full = detail::linear_operator(n, fs, beta2 * dz_m, alpha_np_m * dz_m / 2.0);

    SampledField out = field;
    detail::apply_spectrum(out, half);
    for (int s = 0; s < steps; ++s) {
        detail::nonlinear_phase(out, g_manakov, g_scalar, model);
        detail::apply_spectrum(out, s + 1 == steps ? half : full);
    }
    return out;
}

/// Exact inverse of the accumulated chromatic dispersion; lossless and
/// linear ("ideal 100% DCF").
inline SampledField ideal_dcf(const SampledField& field, double accumulated_d_ps_nm) {
    field.check();
    if (accumulated_d_ps_nm == 0.0) return field;
    const double lambda = field.center_wavelength_m;
    // ps/nm -> s/m, then beta2*L = -D_acc * lambda^2 / (2 pi c).
    const double beta2_l =
        -(accumulated_d_ps_nm * 1e-3) * lambda * lambda / (2.0 * M_PI * kSpeedOfLight);
    SampledField out = field;
    detail::apply_spectrum(out, detail::linear_operator(out.size(), out.sample_rate_hz,
                                                        -beta2_l, 0.0));
    return out;
}

inline SampledField amplify(const SampledField& field, double gain_db) {
    SampledField out = field;
    scale(out, std::pow(10.0, gain_db / 20.0));
    return out;
}

/// ASE PSD per polarization for the whole link, W/Hz:
/// S = spans * (F G - 1) * h nu / 2.
inline double ase_psd_w_hz(int spans, double nf_db, double gain_db,
                           double lambda_m = 1550e-9) {
    const double f = std::pow(10.0, nf_db / 10.0);
    const double g = std::pow(10.0, gain_db / 10.0);
    const double nu = kSpeedOfLight / lambda_m;
    return spans * (f * g - 1.0) * kPlanck * nu / 2.0;
}

/// Loads circular complex Gaussian noise on both polarizations with the
/// link's accumulated ASE PSD. Per-sample complex variance is PSD * fs.
inline SampledField load_noise(const SampledField& field, int spans, double nf_db, double gain_db,
                               GaussianSource& rng) {
    field.check();
    if (gain_db <= 0.0) throw std::invalid_argument("load_noise: gain must be positive");
    SampledField out = field;
    if (spans <= 0) return out;
    const double psd = ase_psd_w_hz(spans, nf_db, gain_db, field.center_wavelength_m);
    if (psd <= 0.0) return out;  // F*G <= 1: transparent amplifier chain
    const double sigma = std::sqrt(psd * field.sample_rate_hz / 2.0);  // per quadrature
    for (auto& v : out.x) v += Complex(sigma * rng(), sigma * rng());
    for (auto& v : out.y) v += Complex(sigma * rng(), sigma * rng());
    return out;
}

/// The full recirculating link: spans x [fiber -> ideal DCF -> amplifier],
/// then one receiver-side noise load. PMD is not modeled.
inline SampledField run_link(const SampledField& field, const LinkConfig& cfg,
                             GaussianSource& rng) {
    SampledField f = field;
    const double acc_d = cfg.span.d_ps_nm_km * cfg.span.length_km;
    for (int s = 0; s < cfg.spans; ++s) {
        f = propagate_span(f, cfg.span, cfg.model);
        if (cfg.ideal_dcf) f = ideal_dcf(f, acc_d);
        f = amplify(f, cfg.amp_gain_db());
    }
    const int noise_spans = cfg.effective_noise_spans();
    if (noise_spans > 0) f = load_noise(f, noise_spans, cfg.nf_db, cfg.amp_gain_db(), rng);
    return f;
}

/// Validation mode for the SSFM step size: relative RMS change of the
/// output when the step is halved.
inline double step_halving_rms(const SampledField& field, const SpanParams& p,
                               NonlinearModel model = NonlinearModel::MANAKOV) {
    SpanParams fine = p;
    fine.step_km = p.step_km / 2.0;
    const SampledField a = propagate_span(field, p, model);
    const SampledField b = propagate_span(field, fine, model);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a.x[i] - b.x[i]) + std::norm(a.y[i] - b.y[i]);
        den += std::norm(b.x[i]) + std::norm(b.y[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace sp8d
