#pragma once

#include <cmath>
#include <stdexcept>

namespace sp8d {

/// Inverse complementary error function on (0, 2), accurate to better
/// than 1e-12 relative: rational initial guess plus Halley refinement
/// against std::erfc.
inline double erfcinv(double y) {
    if (!(y > 0.0 && y < 2.0)) throw std::domain_error("erfcinv: argument outside (0, 2)");
    if (y == 1.0) return 0.0;
    const double pp = y < 1.0 ? y : 2.0 - y;
    const double t = std::sqrt(-2.0 * std::log(pp / 2.0));
    double x = -0.70711 * ((2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t);
    for (int j = 0; j < 3; ++j) {
        const double err = std::erfc(x) - pp;
        x += err / (1.12837916709551257 * std::exp(-x * x) - x * err);
    }
    return y < 1.0 ? x : -x;
}

/// Q^2 in dB from a measured bit error ratio: Q = sqrt(2) erfcinv(2 ber).
inline double q2_from_ber(double ber) {
    if (ber >= 0.5) throw std::domain_error("q2_from_ber: no decision gain");
    if (ber <= 0.0) throw std::domain_error("q2_from_ber: needs errors");
    const double q = std::sqrt(2.0) * erfcinv(2.0 * ber);
    return 20.0 * std::log10(q);
}

/// Forward map, for sweep tooling and tests.
inline double ber_from_q2(double q2_db) {
    const double q = std::pow(10.0, q2_db / 20.0);
    return 0.5 * std::erfc(q / std::sqrt(2.0));
}

}  // namespace sp8d
