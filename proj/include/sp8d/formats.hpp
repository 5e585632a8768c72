#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sp8d/constellation.hpp"
#include "sp8d/labeling.hpp"

namespace sp8d {

enum class FormatKind { PDM_BPSK, PDM_QPSK, PB_5B8D, PA_7B8D };

inline int info_bits_of(FormatKind kind) {
    switch (kind) {
        case FormatKind::PDM_BPSK: return 4;
        case FormatKind::PDM_QPSK: return 8;
        case FormatKind::PB_5B8D: return 5;
        case FormatKind::PA_7B8D: return 7;
    }
    throw std::invalid_argument("unknown format kind");
}

inline const char* to_string(FormatKind kind) {
    switch (kind) {
        case FormatKind::PDM_BPSK: return "PDM-BPSK";
        case FormatKind::PDM_QPSK: return "PDM-QPSK";
        case FormatKind::PB_5B8D: return "PB-5B8D";
        case FormatKind::PA_7B8D: return "PA-7B8D";
    }
    return "?";
}

inline FormatKind format_from_string(const std::string& s) {
    std::string t;
    for (char c : s) t.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(c)));
    if (t == "pdm-bpsk") return FormatKind::PDM_BPSK;
    if (t == "pdm-qpsk") return FormatKind::PDM_QPSK;
    if (t == "pb-5b8d") return FormatKind::PB_5B8D;
    if (t == "pa-7b8d") return FormatKind::PA_7B8D;
    throw std::invalid_argument("unknown format: " + s);
}

struct FormatReport {
    std::string name;
    int info_bits = 0;
    double se_per_4d = 0.0;
    std::size_t size = 0;
    ClassCensus census;
    double dmin_sq = 0.0;
    bool symmetric = false;
};

inline FormatReport report(const Constellation& c) {
    return {c.name(), c.info_bits(), c.se_per_4d(), c.size(), c.census(), c.dmin_sq(),
            is_symmetric(c)};
}

/// Builds one of the four named formats under the given label convention.
/// All outputs use unit average energy per polarization per time slot.
inline Constellation build_format(FormatKind kind, const LabelConvention& conv) {
    std::vector<Symbol8D> symbols;
    std::vector<BitWord> infos;
    switch (kind) {
        case FormatKind::PDM_QPSK:
            for (std::uint32_t w = 0; w < 256; ++w) {
                const BitWord label(w, 8);
                symbols.push_back(conv.symbol_from_label(label));
                infos.push_back(label);
            }
            break;
        case FormatKind::PDM_BPSK:
            // One bit per polarization per slot on the in-phase rail, amplitude +-1.
            for (std::uint32_t w = 0; w < 16; ++w) {
                const BitWord info(w, 4);
                const auto bit = [&](int i) { return 1.0 - 2.0 * info.bit(i); };
                symbols.push_back({{Complex(bit(1), 0.0), Complex(bit(2), 0.0)},
                                   {Complex(bit(3), 0.0), Complex(bit(4), 0.0)},
                                   BitWord(w << 4, 8)});
                infos.push_back(info);
            }
            break;
        case FormatKind::PB_5B8D:
            for (std::uint32_t w = 0; w < 32; ++w) {
                const BitWord info(w, 5);
                const BitWord label = info.concat(pb5b8d_overhead(info));
                const Symbol8D s = conv.symbol_from_label(label);
                if (classify(s) != PartitionClass::PB)
                    throw std::invalid_argument("build_format: convention invalid for PB-5B8D");
                symbols.push_back(s);
                infos.push_back(info);
            }
            break;
        case FormatKind::PA_7B8D: {
            ClassCensus census;
            for (std::uint32_t w = 0; w < 128; ++w) {
                const BitWord info(w, 7);
                const BitWord label =
                    info.concat(BitWord(static_cast<std::uint32_t>(pa7b8d_overhead(info)), 1));
                const Symbol8D s = conv.symbol_from_label(label);
                ++census.of(classify(s));
                symbols.push_back(s);
                infos.push_back(info);
            }
            if (!(census == ClassCensus{64, 64, 0}))
                throw std::invalid_argument("build_format: convention invalid for PA-7B8D");
            break;
        }
    }
    return Constellation(to_string(kind), std::move(symbols), info_bits_of(kind),
                         std::move(infos));
}

/// The library-wide canonical label convention: the first entry of
/// find_convention's deterministic enumeration.
inline const LabelConvention& canonical_convention() {
    static const LabelConvention conv = find_convention().front();
    return conv;
}

inline Constellation build_format(FormatKind kind) {
    return build_format(kind, canonical_convention());
}

namespace detail {

inline double min_dist_sq_to_set(const Symbol8D& cand, const std::vector<Symbol8D>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : set) best = std::min(best, distance_sq(cand, s));
    return best;
}

}  // namespace detail

/// Greedy max-min-distance subset selection over the 256-symbol PDM-QPSK
/// 8D set with strict class priority PB > PA > PI: a PA symbol may enter
/// only once all 64 PB symbols are in, a PI symbol only once all PA are.
/// Random restarts vary the seed symbol; ties break by label order.
inline Constellation search_partition(int target_info_bits, std::uint64_t seed,
                                      const LabelConvention& conv = {}, int restarts = 8) {
    if (target_info_bits < 4 || target_info_bits > 8)
        throw std::invalid_argument("search_partition: target_info_bits must be in [4, 8]");
    const std::size_t target = std::size_t{1} << target_info_bits;

    std::vector<Symbol8D> by_class[3];
    for (std::uint32_t w = 0; w < 256; ++w) {
        Symbol8D s = conv.symbol_from_label(BitWord(w, 8));
        by_class[static_cast<int>(classify(s))].push_back(s);
    }

    std::mt19937_64 rng(seed);
    std::vector<Symbol8D> best;
    double best_dmin = -1.0;
    for (int r = 0; r < std::max(1, restarts); ++r) {
        std::vector<Symbol8D> picked;
        picked.reserve(target);
        for (const auto& cls : by_class) {
            if (picked.size() == target) break;
            if (picked.size() + cls.size() <= target) {
                // Whole class fits: class priority forces all of it in.
                picked.insert(picked.end(), cls.begin(), cls.end());
                continue;
            }
            std::vector<bool> used(cls.size(), false);
            if (picked.empty()) {
                const std::size_t k = rng() % cls.size();
                picked.push_back(cls[k]);
                used[k] = true;
            }
            while (picked.size() < target) {
                double best_d = -1.0;
                std::size_t best_k = SIZE_MAX;
                for (std::size_t k = 0; k < cls.size(); ++k) {
                    if (used[k]) continue;
                    const double d = detail::min_dist_sq_to_set(cls[k], picked);
                    if (d > best_d + 1e-12 ||
                        (std::abs(d - best_d) <= 1e-12 && best_k != SIZE_MAX &&
                         cls[k].label.value() < cls[best_k].label.value())) {
                        best_d = d;
                        best_k = k;
                    }
                }
                picked.push_back(cls[best_k]);
                used[best_k] = true;
            }
            break;
        }
        const double dmin = Constellation::min_distance_sq_brute(picked);
        if (dmin > best_dmin) {
            best_dmin = dmin;
            best = picked;
        }
    }

    std::sort(best.begin(), best.end(), [](const Symbol8D& a, const Symbol8D& b) {
        return a.label.value() < b.label.value();
    });
    std::vector<BitWord> infos;
    infos.reserve(best.size());
    for (std::uint32_t i = 0; i < best.size(); ++i)
        infos.push_back(BitWord(i, target_info_bits));
    return Constellation("searched-" + std::to_string(target_info_bits) + "b8d",
                         std::move(best), target_info_bits, std::move(infos));
}

/// Maps an information bit stream (length divisible by info_bits) to
/// constellation indices, one 8D symbol per chunk.
inline std::vector<std::size_t> encode_indices(const std::vector<std::uint8_t>& info_bits,
                                               const Constellation& c) {
    const int k = c.info_bits();
    if (info_bits.size() % static_cast<std::size_t>(k) != 0)
        throw std::invalid_argument("encode: bit count not divisible by info bits per symbol");
    std::vector<std::size_t> out;
    out.reserve(info_bits.size() / static_cast<std::size_t>(k));
    for (std::size_t p = 0; p < info_bits.size(); p += static_cast<std::size_t>(k)) {
        std::uint32_t w = 0;
        for (int i = 0; i < k; ++i) w = (w << 1) | (info_bits[p + static_cast<std::size_t>(i)] & 1u);
        out.push_back(c.index_of_info(BitWord(w, k)));
    }
    return out;
}

inline std::vector<Symbol8D> encode_stream(const std::vector<std::uint8_t>& info_bits,
                                           const Constellation& c) {
    std::vector<Symbol8D> out;
    const auto idx = encode_indices(info_bits, c);
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(c.symbol(i));
    return out;
}

/// Minimum-Euclidean-distance decision in 8 real dimensions. Ties break
/// toward the lowest label value.
inline std::size_t ml_decide_index(const std::array<double, 8>& received, const Constellation& c) {
    if (c.size() == 0) throw std::invalid_argument("ml_decide: empty constellation");
    double best_d = std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto p = c.symbol(i).coords();
        double d = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double diff = received[static_cast<std::size_t>(k)] - p[static_cast<std::size_t>(k)];
            d += diff * diff;
        }
        if (d < best_d - 1e-15 ||
            (d <= best_d + 1e-15 && c.symbol(i).label.value() < c.symbol(best).label.value()))
        {
            best_d = std::min(d, best_d);
            best = i;
        }
    }
    return best;
}

/// Returns (label, information word) of the ML decision.
inline std::pair<BitWord, BitWord> ml_decide(const std::array<double, 8>& received,
                                             const Constellation& c) {
    const std::size_t i = ml_decide_index(received, c);
    return {c.symbol(i).label, c.info_word(i)};
}

}  // namespace sp8d
