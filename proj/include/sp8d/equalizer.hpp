#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "sp8d/field.hpp"
#include "sp8d/jones.hpp"

namespace sp8d {

struct EqualizerConfig {
    int taps = 11;                // per FIR, odd
    int training_symbols = 1024;  // data-aided slots at the sequence start
    // Normalized-LMS steps with a geometric schedule across the training
    // passes: a plain constant-step LMS cannot reach -30 dB crosstalk
    // from a cold start within 1024 symbols, and the weakly excited
    // band-edge modes need several passes over the training prefix.
    double step_initial = 0.5;
    double step_final = 0.01;
    int training_epochs = 4;
    int samples_per_symbol = 2;

    void check() const {
        if (taps < 1 || taps % 2 == 0) throw std::invalid_argument("equalizer taps must be odd");
        if (training_symbols < taps)
            throw std::invalid_argument("training shorter than filter span");
        if (samples_per_symbol < 1) throw std::invalid_argument("bad equalizer input spacing");
        if (step_initial <= 0.0 || step_final <= 0.0)
            throw std::invalid_argument("bad equalizer step size");
        if (training_epochs < 1) throw std::invalid_argument("bad training epoch count");
    }
};

struct EqualizeResult {
    std::vector<JonesVector> symbols;  // symbol-rate output, full sequence
    double training_mse_initial = 0.0;
    double training_mse_final = 0.0;
    // Energies of the four FIR branches after training: xx, xy, yx, yy.
    std::array<double, 4> tap_energy{};
};

/// Data-aided 2x2 butterfly FIR at fractional spacing, adapted by
/// normalized LMS over the training prefix only (one pass), then frozen
/// for the whole sequence. The input is gain-normalized to the
/// constellation's unit-energy-per-polarization scale. Training against
/// known transmitted symbols pins absolute phase and the polarization
/// assignment. start_offset_samples places training symbol 0 in the
/// (circular) capture buffer; the simulation knows the alignment.
inline EqualizeResult equalize(const SampledField& field, const std::vector<JonesVector>& training,
                               const EqualizerConfig& cfg, std::size_t start_offset_samples = 0) {
    cfg.check();
    field.check();
    if (training.size() != static_cast<std::size_t>(cfg.training_symbols))
        throw std::invalid_argument("equalize: training length mismatch");
    const std::size_t n = field.size();
    const std::size_t sps = static_cast<std::size_t>(cfg.samples_per_symbol);
    const std::size_t n_sym = n / sps;
    if (n_sym < training.size()) throw std::invalid_argument("equalize: field shorter than training");

    // Receiver AGC: unit average energy per polarization per slot.
    double p = 0.0;
    for (std::size_t i = 0; i < n; ++i) p += std::norm(field.x[i]) + std::norm(field.y[i]);
    p /= static_cast<double>(n);
    const double agc = p > 0.0 ? std::sqrt(2.0 / p) : 1.0;
    std::vector<Complex> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = field.x[i] * agc;
        y[i] = field.y[i] * agc;
    }

    const int taps = cfg.taps;
    const int half = taps / 2;
    std::vector<Complex> hxx(static_cast<std::size_t>(taps)), hxy(hxx), hyx(hxx), hyy(hxx);
    hxx[static_cast<std::size_t>(half)] = 1.0;
    hyy[static_cast<std::size_t>(half)] = 1.0;

    const auto tap_index = [&](std::size_t sym, int k) {
        const auto center = static_cast<long long>(start_offset_samples + sym * sps);
        const long long i = center + k - half;
        return static_cast<std::size_t>(((i % static_cast<long long>(n)) +
                                         static_cast<long long>(n)) %
                                        static_cast<long long>(n));
    };
    const auto filter = [&](std::size_t sym) {
        Complex ox{}, oy{};
        for (int k = 0; k < taps; ++k) {
            const std::size_t i = tap_index(sym, k);
            const Complex u = x[i], v = y[i];
            const std::size_t kk = static_cast<std::size_t>(k);
            ox += hxx[kk] * u + hxy[kk] * v;
            oy += hyx[kk] * u + hyy[kk] * v;
        }
        return JonesVector{ox, oy};
    };

    const std::size_t train = training.size();
    const std::size_t updates = train * static_cast<std::size_t>(cfg.training_epochs);
    const double ratio = cfg.step_final / cfg.step_initial;
    const std::size_t head = std::min<std::size_t>(128, train);
    double mse_head = 0.0, mse_tail = 0.0;
    for (std::size_t u = 0; u < updates; ++u) {
        const std::size_t s = u % train;
        const double mu =
            cfg.step_initial *
            std::pow(ratio,
                     updates > 1 ? static_cast<double>(u) / static_cast<double>(updates - 1) : 1.0);
        const JonesVector out = filter(s);
        const Complex ex = training[s].ex - out.ex;
        const Complex ey = training[s].ey - out.ey;
        const double e2 = std::norm(ex) + std::norm(ey);
        if (u < head) mse_head += e2;
        if (u >= updates - head) mse_tail += e2;
        double reg_energy = 1e-12;
        for (int k = 0; k < taps; ++k) {
            const std::size_t i = tap_index(s, k);
            reg_energy += std::norm(x[i]) + std::norm(y[i]);
        }
        const double g = mu / reg_energy;
        for (int k = 0; k < taps; ++k) {
            const std::size_t i = tap_index(s, k);
            const Complex cu = std::conj(x[i]), cv = std::conj(y[i]);
            const std::size_t kk = static_cast<std::size_t>(k);
            hxx[kk] += g * ex * cu;
            hxy[kk] += g * ex * cv;
            hyx[kk] += g * ey * cu;
            hyy[kk] += g * ey * cv;
        }
    }
    EqualizeResult res;
    res.training_mse_initial = mse_head / static_cast<double>(head);
    res.training_mse_final = mse_tail / static_cast<double>(head);
    if (!std::isfinite(res.training_mse_final) ||
        res.training_mse_final > res.training_mse_initial)
        throw std::runtime_error("equalizer diverged (step size too large)");

    for (int k = 0; k < taps; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        res.tap_energy[0] += std::norm(hxx[kk]);
        res.tap_energy[1] += std::norm(hxy[kk]);
        res.tap_energy[2] += std::norm(hyx[kk]);
        res.tap_energy[3] += std::norm(hyy[kk]);
    }

    res.symbols.resize(n_sym);
    for (std::size_t s = 0; s < n_sym; ++s) res.symbols[s] = filter(s);
    return res;
}

}  // namespace sp8d
