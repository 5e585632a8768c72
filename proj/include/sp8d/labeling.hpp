#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sp8d/constellation.hpp"
#include "sp8d/symbol.hpp"

namespace sp8d {

/// Overhead bits (b6, b7, b8) of PB-5B8D from the 5 information bits:
/// b6 = b3 ^ (b4 ^ b5), b7 = ~b2 ^ (b4 ^ b5), b8 = ~b1 ^ (b4 ^ b5).
inline BitWord pb5b8d_overhead(const BitWord& info) {
    if (info.length() != 5) throw std::invalid_argument("pb5b8d_overhead: need 5 bits");
    const int t = info.bit(4) ^ info.bit(5);
    const int b6 = info.bit(3) ^ t;
    const int b7 = (1 ^ info.bit(2)) ^ t;
    const int b8 = (1 ^ info.bit(1)) ^ t;
    return BitWord{b6, b7, b8};
}

/// Overhead bit b8 of PA-7B8D from the 7 information bits (b7 is free):
/// b8 = ~(b1^b4^b6 ^ b1b3^b1b4^b1b5^b1b6 ^ b2b3^b2b4^b2b5^b2b6 ^ b3b5^b3b6 ^ b4b5^b4b6).
inline int pa7b8d_overhead(const BitWord& info) {
    if (info.length() != 7) throw std::invalid_argument("pa7b8d_overhead: need 7 bits");
    const int b1 = info.bit(1), b2 = info.bit(2), b3 = info.bit(3), b4 = info.bit(4),
              b5 = info.bit(5), b6 = info.bit(6);
    const int lin = b1 ^ b4 ^ b6;
    const int quad = (b1 & b3) ^ (b1 & b4) ^ (b1 & b5) ^ (b1 & b6) ^ (b2 & b3) ^ (b2 & b4) ^
                     (b2 & b5) ^ (b2 & b6) ^ (b3 & b5) ^ (b3 & b6) ^ (b4 & b5) ^ (b4 & b6);
    return 1 ^ (lin ^ quad);
}

/// Quadrature rule shared by the whole convention family:
/// s(i, q) = ((1 - 2i) + j(1 - 2q)) / sqrt(2).
inline Complex qpsk_point(int i, int q) {
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    return Complex(1.0 - 2.0 * i, 1.0 - 2.0 * q) * inv_sqrt2;
}

/// Resolves the Gray-mapping ambiguity: a permutation assigning label
/// positions (b1..b4) to the quadrature roles (Ix, Qx, Iy, Qy) of slot T1
/// (applied identically to b5..b8 for T2) plus an 8-bit inversion mask
/// XORed onto the label first. Family size 4! * 2^8 = 6144.
struct LabelConvention {
    std::array<int, 4> role_of_position = {0, 1, 2, 3};  // 0=Ix 1=Qx 2=Iy 3=Qy
    std::uint8_t inversion_mask = 0;

    Symbol8D symbol_from_label(const BitWord& label) const {
        if (label.length() != 8) throw std::invalid_argument("symbol_from_label: need 8 bits");
        const std::uint32_t b = label.value() ^ inversion_mask;
        JonesVector slots[2];
        for (int s = 0; s < 2; ++s) {
            int role_bits[4] = {0, 0, 0, 0};
            for (int pos = 0; pos < 4; ++pos) {
                const int bit_index = 4 * s + pos;  // 0-based from b1
                const int bit = static_cast<int>((b >> (7 - bit_index)) & 1u);
                role_bits[role_of_position[static_cast<std::size_t>(pos)]] = bit;
            }
            slots[s] = {qpsk_point(role_bits[0], role_bits[1]),
                        qpsk_point(role_bits[2], role_bits[3])};
        }
        return {slots[0], slots[1], label};
    }

    bool operator==(const LabelConvention&) const = default;
};

namespace detail {

inline std::array<std::array<int, 4>, 24> role_permutations() {
    std::array<int, 4> p = {0, 1, 2, 3};
    std::array<std::array<int, 4>, 24> out{};
    std::size_t n = 0;
    do {
        out[n++] = p;
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace detail

inline std::vector<BitWord> pb5b8d_labels() {
    std::vector<BitWord> labels;
    labels.reserve(32);
    for (std::uint32_t w = 0; w < 32; ++w) {
        const BitWord info(w, 5);
        labels.push_back(info.concat(pb5b8d_overhead(info)));
    }
    return labels;
}

inline std::vector<BitWord> pa7b8d_labels() {
    std::vector<BitWord> labels;
    labels.reserve(128);
    for (std::uint32_t w = 0; w < 128; ++w) {
        const BitWord info(w, 7);
        labels.push_back(info.concat(BitWord(static_cast<std::uint32_t>(pa7b8d_overhead(info)), 1)));
    }
    return labels;
}

/// Exhaustively enumerates the 6144-member convention family and keeps
/// every convention under which (a) all 32 PB-5B8D labels map to PB
/// symbols and (b) the 128 PA-7B8D labels map to census (PB=64, PA=64,
/// PI=0). Enumeration order: role permutations in lexicographic order,
/// inversion masks ascending.
inline std::vector<LabelConvention> find_convention() {
    const auto perms = detail::role_permutations();
    const auto pb5 = pb5b8d_labels();
    const auto pa7 = pa7b8d_labels();
    std::vector<LabelConvention> found;
    for (const auto& perm : perms) {
        for (int mask = 0; mask < 256; ++mask) {
            const LabelConvention conv{perm, static_cast<std::uint8_t>(mask)};
            bool ok = true;
            for (const auto& lab : pb5) {
                if (classify(conv.symbol_from_label(lab)) != PartitionClass::PB) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            ClassCensus census;
            for (const auto& lab : pa7) ++census.of(classify(conv.symbol_from_label(lab)));
            if (census == ClassCensus{64, 64, 0}) found.push_back(conv);
        }
    }
    if (found.empty()) throw std::runtime_error("no convention satisfies Eqs. (1)-(2)");
    return found;
}

}  // namespace sp8d
