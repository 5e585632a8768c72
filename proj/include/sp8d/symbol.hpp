#pragma once

#include <array>
#include <stdexcept>

#include "sp8d/bits.hpp"
#include "sp8d/jones.hpp"

namespace sp8d {

/// One 8D constellation point: dual-polarization symbols in two
/// consecutive time slots plus the 8-bit label.
struct Symbol8D {
    JonesVector t1;
    JonesVector t2;
    BitWord label;  // 8 bits

    /// Coordinates in 8 real dimensions:
    /// (Re ex1, Im ex1, Re ey1, Im ey1, Re ex2, Im ex2, Re ey2, Im ey2).
    std::array<double, 8> coords() const {
        return {t1.ex.real(), t1.ex.imag(), t1.ey.real(), t1.ey.imag(),
                t2.ex.real(), t2.ex.imag(), t2.ey.real(), t2.ey.imag()};
    }

    double energy() const { return t1.power() + t2.power(); }
};

inline double distance_sq(const Symbol8D& a, const Symbol8D& b) {
    const auto ca = a.coords();
    const auto cb = b.coords();
    double d = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double diff = ca[static_cast<std::size_t>(i)] - cb[static_cast<std::size_t>(i)];
        d += diff * diff;
    }
    return d;
}

/// Relative SOP orientation between the two time slots.
enum class PartitionClass { PB, PA, PI };

inline const char* to_string(PartitionClass c) {
    switch (c) {
        case PartitionClass::PB: return "PB";
        case PartitionClass::PA: return "PA";
        case PartitionClass::PI: return "PI";
    }
    return "?";
}

/// Classify by the Stokes dot product of the two slots: -1 -> PB
/// (opposite SOPs), 0 -> PA (orthogonal), +1 -> PI (identical).
/// Values are exact on the PDM-QPSK lattice; eps absorbs rounding.
inline PartitionClass classify(const Symbol8D& s, double eps = 1e-9) {
    const double d = stokes(s.t1).dot(stokes(s.t2));
    if (d <= -1.0 + eps) return PartitionClass::PB;
    if (std::abs(d) <= eps) return PartitionClass::PA;
    if (d >= 1.0 - eps) return PartitionClass::PI;
    throw std::domain_error("symbol not on PDM-QPSK SOP lattice");
}

}  // namespace sp8d
