#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sp8d/equalizer.hpp"
#include "sp8d/fiber.hpp"
#include "sp8d/formats.hpp"
#include "sp8d/parallel.hpp"
#include "sp8d/qfactor.hpp"
#include "sp8d/rng.hpp"
#include "sp8d/rrc.hpp"
#include "sp8d/wdm.hpp"

namespace sp8d {

struct SimConfig {
    FormatKind format = FormatKind::PDM_QPSK;
    double baud_hz = 32e9;
    int sps = 64;
    double rolloff = 0.1;
    int channels = 5;
    double grid_hz = 37.5e9;
    // Bit budget per polarization for PDM-QPSK; all formats share the
    // resulting slot count 2^(seq_log2-1), so every format occupies the
    // same time window and the sample count stays a power of two.
    int seq_log2 = 16;
    int training_symbols = 1024;  // 4D slots, data-aided
    LinkConfig link;
    double power_dbm = -7.0;
    std::uint64_t seed = 1;
    int realization_cap = 64;
    int min_errors = 400;
    // Realizations are evaluated in fixed-size batches so parallel runs
    // stop at the same realization count as serial ones.
    int realization_batch = 4;

    std::size_t blocks_8d() const { return std::size_t{1} << (seq_log2 - 2); }
    std::size_t slots_4d() const { return std::size_t{1} << (seq_log2 - 1); }

    PulseShapeSpec pulse_spec() const { return {rolloff, sps, 64, baud_hz}; }

    void check() const {
        if (seq_log2 < 6 || seq_log2 > 26) throw std::invalid_argument("seq_log2 out of range");
        if (channels < 1 || channels % 2 == 0)
            throw std::invalid_argument("channels must be odd");
        if (training_symbols < 16 || static_cast<std::size_t>(training_symbols) >= slots_4d())
            throw std::invalid_argument("training_symbols must fit the sequence");
        if (training_symbols % 2 != 0)
            throw std::invalid_argument("training_symbols must be even (whole 8D blocks)");
        if (realization_cap < 1 || realization_batch < 1 || min_errors < 1)
            throw std::invalid_argument("bad Monte Carlo limits");
        pulse_spec().check();
    }
};

struct BerRecord {
    std::size_t bits_compared = 0;
    std::size_t bit_errors = 0;
    double ber = 0.0;
    double q2_db = std::numeric_limits<double>::quiet_NaN();
    int realizations = 0;
    // Empty when the >= min_errors stopping rule was met; otherwise
    // "error_free", "ber_upper_bound", or "failed: <reason>".
    std::string flag;

    bool flagged() const { return !flag.empty(); }
};

enum class SweepAxis { POWER_DBM, SPANS };

struct SweepResult {
    SweepAxis axis = SweepAxis::POWER_DBM;
    FormatKind format = FormatKind::PDM_QPSK;
    std::vector<std::pair<double, BerRecord>> points;
    std::string config_snapshot;  // reproduces the sweep bit-exactly
};

namespace detail {

/// Random information words for one channel realization.
inline std::vector<std::size_t> random_symbol_indices(const Constellation& c, std::size_t count,
                                                      std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    const std::uint64_t m = c.size();
    std::vector<std::size_t> idx(count);
    for (auto& v : idx) v = static_cast<std::size_t>(eng() % m);
    return idx;
}

struct RealizationResult {
    std::size_t errors = 0;
    std::size_t bits = 0;
};

/// One full Tx -> link -> Rx pass; counts information-bit errors on the
/// center channel, excluding the training prefix.
inline RealizationResult run_realization(const SimConfig& cfg, const Constellation& c,
                                         std::uint64_t realization) {
    const std::size_t n_blocks = cfg.blocks_8d();
    const int center = (cfg.channels - 1) / 2;
    const PulseShapeSpec spec = cfg.pulse_spec();

    std::vector<SampledField> fields;
    fields.reserve(static_cast<std::size_t>(cfg.channels));
    std::vector<std::size_t> tx_center;
    for (int ch = 0; ch < cfg.channels; ++ch) {
        auto idx = random_symbol_indices(
            c, n_blocks, derive_seed(cfg.seed, 0x10 + static_cast<std::uint64_t>(ch), realization));
        std::vector<JonesVector> slots;
        slots.reserve(2 * n_blocks);
        for (std::size_t i : idx) {
            slots.push_back(c.symbol(i).t1);
            slots.push_back(c.symbol(i).t2);
        }
        if (ch == center) tx_center = std::move(idx);
        fields.push_back(pulse_shape_slots(slots, spec, cfg.power_dbm));
    }

    SampledField line =
        cfg.channels == 1
            ? std::move(fields.front())
            : wdm_mux(fields, cfg.grid_hz, cfg.baud_hz * (1.0 + cfg.rolloff));
    fields.clear();

    GaussianSource noise(derive_seed(cfg.seed, 0x01, realization));
    line = run_link(line, cfg.link, noise);

    SampledField rx = channel_select(line, 0, spec, cfg.grid_hz);
    line.x.clear();
    line.y.clear();

    std::vector<JonesVector> training;
    training.reserve(static_cast<std::size_t>(cfg.training_symbols));
    for (int s = 0; s < cfg.training_symbols; ++s) {
        const Symbol8D& sym = c.symbol(tx_center[static_cast<std::size_t>(s) / 2]);
        training.push_back(s % 2 == 0 ? sym.t1 : sym.t2);
    }
    EqualizerConfig eq_cfg;
    eq_cfg.training_symbols = cfg.training_symbols;
    const EqualizeResult eq = equalize(rx, training, eq_cfg);

    const std::size_t first_block = static_cast<std::size_t>(cfg.training_symbols) / 2;
    RealizationResult res;
    for (std::size_t b = first_block; b < n_blocks; ++b) {
        const JonesVector& s1 = eq.symbols[2 * b];
        const JonesVector& s2 = eq.symbols[2 * b + 1];
        const std::array<double, 8> v = {s1.ex.real(), s1.ex.imag(), s1.ey.real(), s1.ey.imag(),
                                         s2.ex.real(), s2.ex.imag(), s2.ey.real(), s2.ey.imag()};
        const std::size_t decided = ml_decide_index(v, c);
        const std::uint32_t diff =
            c.info_word(decided).value() ^ c.info_word(tx_center[b]).value();
        res.errors += static_cast<std::size_t>(std::popcount(diff));
        res.bits += static_cast<std::size_t>(c.info_bits());
    }
    return res;
}

}  // namespace detail

/// Runs realizations in fixed-size batches until at least min_errors
/// information-bit errors are counted or the realization cap is hit.
inline BerRecord run_point(const SimConfig& cfg, const Constellation& c) {
    cfg.check();
    if (c.info_bits() != info_bits_of(cfg.format))
        throw std::invalid_argument("run_point: constellation does not match configured format");
    BerRecord rec;
    std::vector<detail::RealizationResult> batch;
    while (rec.realizations < cfg.realization_cap &&
           rec.bit_errors < static_cast<std::size_t>(cfg.min_errors)) {
        const int n = std::min(cfg.realization_batch, cfg.realization_cap - rec.realizations);
        batch.assign(static_cast<std::size_t>(n), {});
        const int base = rec.realizations;
        parallel_for(n, [&](int i) {
            batch[static_cast<std::size_t>(i)] =
                detail::run_realization(cfg, c, static_cast<std::uint64_t>(base + i));
        });
        for (const auto& r : batch) {
            rec.bit_errors += r.errors;
            rec.bits_compared += r.bits;
        }
        rec.realizations += n;
    }
    rec.ber = rec.bits_compared > 0
                  ? static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits_compared)
                  : 0.0;
    if (rec.bit_errors == 0)
        rec.flag = "error_free";
    else if (rec.bit_errors < static_cast<std::size_t>(cfg.min_errors))
        rec.flag = "ber_upper_bound";
    if (rec.ber > 0.0 && rec.ber < 0.5) rec.q2_db = q2_from_ber(rec.ber);
    return rec;
}

inline BerRecord run_point(const SimConfig& cfg) {
    return run_point(cfg, build_format(cfg.format));
}

namespace detail {

inline std::string snapshot(const SimConfig& cfg, const char* axis,
                            const std::vector<double>& values) {
    std::ostringstream os;
    os << "format=" << to_string(cfg.format) << " master_seed=" << cfg.seed << " axis=" << axis
       << " n_points=" << values.size()
       << " point_seed=derive_seed(master, 0xA0, point_index)"
       << " data_seed=derive_seed(point, 0x10+channel, realization)"
       << " noise_seed=derive_seed(point, 0x01, realization)";
    return os.str();
}

}  // namespace detail

/// Q^2 versus launch power at fixed span count. Points run in parallel;
/// per-point seeds derive from the master seed and the point index, so
/// results are independent of scheduling.
inline SweepResult sweep_power(const SimConfig& cfg, const std::vector<double>& powers_dbm,
                               const Constellation& c) {
    if (powers_dbm.empty()) throw std::invalid_argument("sweep_power: empty power list");
    for (std::size_t i = 1; i < powers_dbm.size(); ++i)
        if (powers_dbm[i] <= powers_dbm[i - 1])
            throw std::invalid_argument("sweep_power: powers must be strictly increasing");
    SweepResult res;
    res.axis = SweepAxis::POWER_DBM;
    res.format = cfg.format;
    res.config_snapshot = detail::snapshot(cfg, "power_dbm", powers_dbm);
    res.points.resize(powers_dbm.size());
    parallel_for(static_cast<int>(powers_dbm.size()), [&](int i) {
        SimConfig point_cfg = cfg;
        point_cfg.power_dbm = powers_dbm[static_cast<std::size_t>(i)];
        point_cfg.seed = derive_seed(cfg.seed, 0xA0, static_cast<std::uint64_t>(i));
        BerRecord rec;
        try {
            rec = run_point(point_cfg, c);
        } catch (const std::exception& e) {
            rec.flag = std::string("failed: ") + e.what();
        }
        res.points[static_cast<std::size_t>(i)] = {powers_dbm[static_cast<std::size_t>(i)], rec};
    });
    return res;
}

/// Q^2 versus span count at fixed launch power.
inline SweepResult sweep_reach(const SimConfig& cfg, const std::vector<int>& span_counts,
                               const Constellation& c) {
    if (span_counts.empty()) throw std::invalid_argument("sweep_reach: empty span list");
    for (std::size_t i = 1; i < span_counts.size(); ++i)
        if (span_counts[i] <= span_counts[i - 1])
            throw std::invalid_argument("sweep_reach: span counts must be strictly increasing");
    std::vector<double> axis(span_counts.begin(), span_counts.end());
    SweepResult res;
    res.axis = SweepAxis::SPANS;
    res.format = cfg.format;
    res.config_snapshot = detail::snapshot(cfg, "spans", axis);
    res.points.resize(span_counts.size());
    parallel_for(static_cast<int>(span_counts.size()), [&](int i) {
        SimConfig point_cfg = cfg;
        point_cfg.link.spans = span_counts[static_cast<std::size_t>(i)];
        point_cfg.seed = derive_seed(cfg.seed, 0xA0, static_cast<std::uint64_t>(i));
        BerRecord rec;
        try {
            rec = run_point(point_cfg, c);
        } catch (const std::exception& e) {
            rec.flag = std::string("failed: ") + e.what();
        }
        res.points[static_cast<std::size_t>(i)] = {axis[static_cast<std::size_t>(i)], rec};
    });
    return res;
}

/// Distance at which the Q^2 curve crosses the FEC threshold, by linear
/// interpolation over distance. Flagged points are excluded.
inline double reach_at_threshold(const SweepResult& sweep, double threshold_db,
                                 double span_km = 75.0) {
    if (sweep.axis != SweepAxis::SPANS)
        throw std::invalid_argument("reach_at_threshold: needs a reach sweep");
    std::vector<std::pair<double, double>> pts;  // distance, q2
    for (const auto& [spans, rec] : sweep.points)
        if (!rec.flagged() && std::isfinite(rec.q2_db)) pts.push_back({spans * span_km, rec.q2_db});
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const auto [d0, q0] = pts[i - 1];
        const auto [d1, q1] = pts[i];
        if ((q0 >= threshold_db && q1 <= threshold_db) ||
            (q0 <= threshold_db && q1 >= threshold_db)) {
            if (q0 == q1) return d0;
            return d0 + (d1 - d0) * (q0 - threshold_db) / (q0 - q1);
        }
    }
    throw std::runtime_error("reach_at_threshold: threshold not bracketed");
}

/// CSV with one row per sweep point. Columns:
/// format,axis,axis_value,power_dbm,spans,distance_km,bits_compared,
/// bit_errors,ber,q2_db,flagged
inline std::string to_csv(const SweepResult& sweep, const SimConfig& cfg) {
    std::ostringstream os;
    os << "format,axis,axis_value,power_dbm,spans,distance_km,bits_compared,bit_errors,ber,"
          "q2_db,flagged\n";
    for (const auto& [value, rec] : sweep.points) {
        const bool power_axis = sweep.axis == SweepAxis::POWER_DBM;
        const double power = power_axis ? value : cfg.power_dbm;
        const int spans = power_axis ? cfg.link.spans : static_cast<int>(value);
        char buf[512];
        std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.10g,%d,%.10g,%zu,%zu,%.10g,%.10g,%s\n",
                      to_string(sweep.format), power_axis ? "power_dbm" : "spans", value, power,
                      spans, spans * cfg.link.span.length_km, rec.bits_compared, rec.bit_errors,
                      rec.ber, rec.q2_db, rec.flag.c_str());
        os << buf;
    }
    return os.str();
}

}  // namespace sp8d
