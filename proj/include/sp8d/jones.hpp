#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace sp8d {

using Complex = std::complex<double>;

/// Dual-polarization field amplitude of one time slot (dimensionless).
struct JonesVector {
    Complex ex{};
    Complex ey{};

    double power() const { return std::norm(ex) + std::norm(ey); }

    bool operator==(const JonesVector& o) const = default;
};

/// Normalized Stokes vector on the Poincare sphere.
struct StokesVector {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;

    double dot(const StokesVector& o) const { return s1 * o.s1 + s2 * o.s2 + s3 * o.s3; }
    double norm() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }
};

/// State of polarization of a Jones vector, normalized to |S| = 1.
/// Convention: S = (|ex|^2 - |ey|^2, 2 Re(ex ey*), -2 Im(ex ey*)) / (|ex|^2 + |ey|^2).
inline StokesVector stokes(const JonesVector& j) {
    const double p = j.power();
    if (p <= 0.0) throw std::domain_error("degenerate polarization state");
    const Complex cross = j.ex * std::conj(j.ey);
    return {(std::norm(j.ex) - std::norm(j.ey)) / p, 2.0 * cross.real() / p,
            -2.0 * cross.imag() / p};
}

}  // namespace sp8d
