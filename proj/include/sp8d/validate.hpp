#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sp8d/equalizer.hpp"
#include "sp8d/fiber.hpp"
#include "sp8d/formats.hpp"
#include "sp8d/rng.hpp"
#include "sp8d/rrc.hpp"
#include "sp8d/wdm.hpp"

namespace sp8d {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double limit = 0.0;

    std::string line() const {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s %-34s measured=%.3e  limit=%.3e",
                      pass ? "PASS" : "FAIL", name.c_str(), measured, limit);
        return buf;
    }
};

namespace validate_detail {

inline CheckResult below(const std::string& name, double measured, double limit) {
    return {name, measured <= limit, measured, limit};
}

inline SampledField random_qpsk_field(int slots, int sps, double baud, double power_dbm,
                                      std::uint64_t seed) {
    const Constellation c = build_format(FormatKind::PDM_QPSK);
    std::mt19937_64 eng(seed);
    std::vector<JonesVector> sl;
    sl.reserve(static_cast<std::size_t>(slots));
    for (int i = 0; i < slots; i += 2) {
        const Symbol8D& s = c.symbol(static_cast<std::size_t>(eng() % c.size()));
        sl.push_back(s.t1);
        sl.push_back(s.t2);
    }
    return pulse_shape_slots(sl, {0.1, sps, 64, baud}, power_dbm);
}

inline double rel_rms(const SampledField& a, const SampledField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a.x[i] - b.x[i]) + std::norm(a.y[i] - b.y[i]);
        den += std::norm(b.x[i]) + std::norm(b.y[i]);
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace validate_detail

/// Analytic checks of the propagation, noise, and receiver blocks, with
/// pinned tolerances. Used by both `validate-channel` and the acceptance
/// suite.
inline std::vector<CheckResult> validate_channel() {
    using namespace validate_detail;
    std::vector<CheckResult> out;
    const double baud = 32e9;

    // --- dispersion-only span against the analytic transfer function ---
    {
        SampledField f = random_qpsk_field(512, 16, baud, 0.0, 11);
        SpanParams p;
        p.alpha_db_km = 0.0;
        p.gamma_w_km = 0.0;
        SampledField ssfm = propagate_span(f, p);
        SampledField analytic = f;
        const double beta2l = p.beta2_s2_m(f.center_wavelength_m) * p.length_km * 1e3;
        detail::apply_spectrum(analytic,
                               detail::linear_operator(f.size(), f.sample_rate_hz, beta2l, 0.0));
        out.push_back(below("ssfm-dispersion-transfer", rel_rms(ssfm, analytic), 1e-9));

        SampledField back = ideal_dcf(ssfm, p.d_ps_nm_km * p.length_km);
        out.push_back(below("dispersion-plus-dcf-identity", rel_rms(back, f), 1e-9));
    }

    // --- loss-only power drop ---
    {
        SampledField f = random_qpsk_field(256, 16, baud, 0.0, 12);
        SpanParams p;
        p.d_ps_nm_km = 0.0;
        p.gamma_w_km = 0.0;
        const double before = average_power_w(f);
        const double after = average_power_w(propagate_span(f, p));
        const double drop_db = 10.0 * std::log10(before / after);
        out.push_back(below("ssfm-loss-exact-db", std::abs(drop_db - p.loss_db()), 1e-9));
    }

    // --- CW Manakov nonlinear phase: common gamma*(8/9)*P_total*L ---
    {
        SampledField f;
        f.sample_rate_hz = baud * 16;
        const std::size_t n = 4096;
        f.x.assign(n, Complex(0.08, 0.0));  // 10 mW total: phase ~0.87 rad, no wrap
        f.y.assign(n, Complex(0.0, 0.06));
        SpanParams p;
        p.alpha_db_km = 0.0;
        p.d_ps_nm_km = 0.0;
        p.step_km = 5.0;
        const double p_total = average_power_w(f);
        const double expected = p.gamma_w_km * 1e-3 * (8.0 / 9.0) * p_total * p.length_km * 1e3;
        SampledField g = propagate_span(f, p);
        const double phx = std::arg(g.x[7] / f.x[7]);
        const double phy = std::arg(g.y[7] / f.y[7]);
        const double err = std::max(std::abs(phx - expected), std::abs(phy - expected));
        out.push_back(below("cw-manakov-phase-rel", err / expected, 1e-9));
    }

    // --- nonlinear step conserves instantaneous power when alpha = 0 ---
    {
        SampledField f = random_qpsk_field(256, 16, baud, 3.0, 13);
        SpanParams p;
        p.alpha_db_km = 0.0;
        p.d_ps_nm_km = 0.0;
        p.step_km = p.length_km;
        SampledField g = propagate_span(f, p);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double a = std::norm(f.x[i]) + std::norm(f.y[i]);
            const double b = std::norm(g.x[i]) + std::norm(g.y[i]);
            worst = std::max(worst, std::abs(a - b) / a);
        }
        out.push_back(below("nl-step-power-conservation", worst, 1e-12));
    }

    // --- lossless linear span is unitary ---
    {
        SampledField f = random_qpsk_field(256, 16, baud, 0.0, 14);
        SpanParams p;
        p.alpha_db_km = 0.0;
        p.gamma_w_km = 0.0;
        SampledField g = propagate_span(f, p);
        const double rel =
            std::abs(average_power_w(g) - average_power_w(f)) / average_power_w(f);
        out.push_back(below("lossless-span-unitary", rel, 1e-9));
    }

    // --- receiver noise loading against the closed-form PSD ---
    {
        SampledField f;
        f.sample_rate_hz = baud * 16;  // 512 GHz
        const std::size_t n = 1 << 20;
        f.x.assign(n, {});
        f.y.assign(n, {});
        const int spans = 20;
        const double gain_db = 15.0;
        GaussianSource rng(99);
        SampledField g = load_noise(f, spans, 7.0, gain_db, rng);
        const double psd = ase_psd_w_hz(spans, 7.0, gain_db);
        // periodogram power in a +-6.25 GHz band, both polarizations
        const double band = 12.5e9;
        auto& plan = fft::plan_for(n);
        double in_band = 0.0;
        for (const auto* v : {&g.x, &g.y}) {
            auto spec = *v;
            plan.forward(spec.data());
            for (std::size_t k = 0; k < n; ++k)
                if (std::abs(fft::bin_frequency_hz(k, n, f.sample_rate_hz)) <= band / 2)
                    in_band += std::norm(spec[k]);
        }
        in_band /= static_cast<double>(n) * static_cast<double>(n);
        const double expected = psd * band * 2.0;
        out.push_back(below("ase-psd-band-power-rel", std::abs(in_band - expected) / expected,
                            1e-2));

        GaussianSource rng2(99);
        SampledField g2 = load_noise(f, 2 * spans, 7.0, gain_db, rng2);
        const double ratio = average_power_w(g2) / average_power_w(g);
        out.push_back(below("ase-doubling-spans-rel", std::abs(ratio - 2.0) / 2.0, 2e-2));
    }

    // --- step halving at the default configuration, -3 dBm ---
    {
        SampledField f = random_qpsk_field(2048, 16, baud, -3.0, 15);
        SpanParams p;  // defaults: 75 km LEAF, 0.5 km step
        out.push_back(below("ssfm-step-halving-rms", step_halving_rms(f, p), 1e-3));
    }

    // --- frequency shift round trip ---
    {
        SampledField f = random_qpsk_field(256, 16, baud, 0.0, 16);
        SampledField g = f;
        frequency_shift(g, 37.5e9);
        frequency_shift(g, -37.5e9);
        out.push_back(below("frequency-shift-roundtrip", rel_rms(g, f), 1e-12));
    }

    // --- RRC taps: symmetry, unit energy, matched-cascade ISI ---
    {
        const PulseShapeSpec spec{0.1, 16, 64, baud};
        const auto h = rrc_taps(spec);
        double sym_err = 0.0, energy = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            sym_err = std::max(sym_err, std::abs(h[i] - h[h.size() - 1 - i]));
            energy += h[i] * h[i];
        }
        out.push_back(below("rrc-taps-symmetry", sym_err, 1e-12));
        out.push_back(below("rrc-taps-unit-energy", std::abs(energy - 1.0), 1e-12));

        // cascade g = h*h sampled at symbol instants
        std::vector<double> g(2 * h.size() - 1, 0.0);
        for (std::size_t i = 0; i < h.size(); ++i)
            for (std::size_t j = 0; j < h.size(); ++j) g[i + j] += h[i] * h[j];
        const std::size_t mid = h.size() - 1;
        const double main = g[mid];
        double isi = 0.0;
        for (std::size_t k = mid % static_cast<std::size_t>(spec.sps); k < g.size();
             k += static_cast<std::size_t>(spec.sps))
            if (k != mid) isi = std::max(isi, std::abs(g[k]));
        out.push_back(below("rrc-cascade-isi-db", 20.0 * std::log10(isi / main), -40.0));
    }

    // --- back-to-back chain identity at the matched-filter output ---
    {
        const Constellation c = build_format(FormatKind::PDM_QPSK);
        std::mt19937_64 eng(21);
        std::vector<JonesVector> slots;
        for (int i = 0; i < 1024; ++i) {
            const Symbol8D& s = c.symbol(static_cast<std::size_t>(eng() % c.size()));
            slots.push_back(s.t1);
            slots.push_back(s.t2);
        }
        const PulseShapeSpec spec{0.1, 16, 64, baud};
        SampledField tx = pulse_shape_slots(slots, spec, 0.0);
        SampledField rx2 = channel_select(tx, 0, spec, 37.5e9);
        // least-squares gain absorbs the launch-power scaling
        Complex num{};
        double den = 0.0;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            num += std::conj(rx2.x[2 * i]) * slots[i].ex + std::conj(rx2.y[2 * i]) * slots[i].ey;
            den += std::norm(rx2.x[2 * i]) + std::norm(rx2.y[2 * i]);
        }
        const Complex g = num / den;
        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            err += std::norm(g * rx2.x[2 * i] - slots[i].ex) +
                   std::norm(g * rx2.y[2 * i] - slots[i].ey);
            ref += std::norm(slots[i].ex) + std::norm(slots[i].ey);
        }
        out.push_back(below("b2b-matched-cascade-rms", std::sqrt(err / ref), 1e-3));
    }

    // --- WDM: power additivity and neighbor leakage ---
    {
        std::vector<SampledField> ch;
        double sum_power = 0.0;
        for (int k = 0; k < 5; ++k) {
            ch.push_back(random_qpsk_field(512, 64, baud, -3.0, 30 + static_cast<unsigned>(k)));
            sum_power += average_power_w(ch.back());
        }
        SampledField line = wdm_mux(ch, 37.5e9, baud * 1.1);
        const double total = average_power_w(line);
        const double diff_db = std::abs(10.0 * std::log10(total / sum_power));
        out.push_back(below("wdm-power-additivity-db", diff_db, 0.05));

        // leakage: mux only channel k=+1 active, select k=0
        std::vector<SampledField> one = ch;
        for (std::size_t i = 0; i < one.size(); ++i)
            if (i != 3)
                for (std::size_t s = 0; s < one[i].size(); ++s) {
                    one[i].x[s] = 0.0;
                    one[i].y[s] = 0.0;
                }
        SampledField lone = wdm_mux(one, 37.5e9, baud * 1.1);
        SampledField leak = channel_select(lone, 0, {0.1, 64, 64, baud}, 37.5e9);
        const double leak_db =
            10.0 * std::log10(average_power_w(leak) / average_power_w(ch[3]));
        out.push_back(below("adjacent-channel-leakage-db", leak_db, -30.0));
    }

    // --- equalizer: identity channel and 90-degree rotation ---
    {
        const Constellation c = build_format(FormatKind::PDM_QPSK);
        std::mt19937_64 eng(22);
        std::vector<JonesVector> slots;
        for (int i = 0; i < 4096; ++i) {
            const Symbol8D& s = c.symbol(static_cast<std::size_t>(eng() % c.size()));
            slots.push_back(s.t1);
            slots.push_back(s.t2);
        }
        const PulseShapeSpec spec{0.1, 16, 64, baud};
        SampledField rx = channel_select(pulse_shape_slots(slots, spec, 0.0), 0, spec, 37.5e9);
        EqualizerConfig cfg;
        std::vector<JonesVector> train(slots.begin(), slots.begin() + cfg.training_symbols);
        const EqualizeResult eq = equalize(rx, train, cfg);
        double mse = 0.0;
        for (std::size_t s = 0; s < slots.size(); ++s)
            mse += std::norm(eq.symbols[s].ex - slots[s].ex) +
                   std::norm(eq.symbols[s].ey - slots[s].ey);
        mse /= static_cast<double>(slots.size()) * 2.0;
        out.push_back(below("equalizer-identity-mse-db", 10.0 * std::log10(mse), -30.0));
        const double offdiag = (eq.tap_energy[1] + eq.tap_energy[2]) /
                               (eq.tap_energy[0] + eq.tap_energy[3]);
        out.push_back(below("equalizer-offdiagonal-db", 10.0 * std::log10(offdiag), -30.0));

        SampledField rot = rx;
        for (std::size_t i = 0; i < rot.size(); ++i) {
            const Complex x = rot.x[i], y = rot.y[i];
            rot.x[i] = y;     // 90-degree polarization rotation
            rot.y[i] = -x;
        }
        const EqualizeResult eq2 = equalize(rot, train, cfg);
        double mse2 = 0.0;
        for (std::size_t s = 0; s < slots.size(); ++s)
            mse2 += std::norm(eq2.symbols[s].ex - slots[s].ex) +
                    std::norm(eq2.symbols[s].ey - slots[s].ey);
        mse2 /= static_cast<double>(slots.size()) * 2.0;
        out.push_back(below("equalizer-rotated-mse-db", 10.0 * std::log10(mse2), -30.0));
    }

    return out;
}

}  // namespace sp8d
