#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace sp8d::fft {

/// Stockham autosort transform, radix 4 with one radix-2 stage for odd
/// powers of two. Self-sorting (no bit-reversal pass) with unit-stride
/// inner loops; forward is unscaled, inverse scales by 1/n. All sample
/// counts in this library are powers of two by construction.
class Plan {
public:
    explicit Plan(std::size_t n) : n_(n), work_(n) {
        if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be 2^k");
        tw_re_.resize(n);
        tw_im_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double a = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
            tw_re_[j] = std::cos(a);
            tw_im_[j] = std::sin(a);
        }
    }

    std::size_t size() const { return n_; }

    void forward(std::complex<double>* data) const { transform(data, false); }

    void inverse(std::complex<double>* data) const {
        transform(data, true);
        const double s = 1.0 / static_cast<double>(n_);
        double* d = reinterpret_cast<double*>(data);
        for (std::size_t i = 0; i < 2 * n_; ++i) d[i] *= s;
    }

private:
    // One Stockham pass: butterflies of the leading dimension n with s
    // interleaved sub-transforms, x -> y.
    void pass4(std::size_t n, std::size_t s, const double* x, double* y, bool inv) const {
        const std::size_t m = n / 4;
        const std::size_t stride = n_ / n;
        const double i_sign = inv ? 1.0 : -1.0;
        for (std::size_t p = 0; p < m; ++p) {
            const std::size_t k = p * stride;
            const double w1r = tw_re_[k], w1i = inv ? -tw_im_[k] : tw_im_[k];
            const double w2r = w1r * w1r - w1i * w1i, w2i = 2.0 * w1r * w1i;
            const double w3r = w2r * w1r - w2i * w1i, w3i = w2r * w1i + w2i * w1r;
            const double* xa = x + 2 * s * p;
            const double* xb = x + 2 * s * (p + m);
            const double* xc = x + 2 * s * (p + 2 * m);
            const double* xd = x + 2 * s * (p + 3 * m);
            double* y0 = y + 2 * s * 4 * p;
            for (std::size_t q = 0; q < s; ++q) {
                const double ar = xa[2 * q], ai = xa[2 * q + 1];
                const double br = xb[2 * q], bi = xb[2 * q + 1];
                const double cr = xc[2 * q], ci = xc[2 * q + 1];
                const double dr = xd[2 * q], di = xd[2 * q + 1];
                const double t0r = ar + cr, t0i = ai + ci;
                const double t1r = ar - cr, t1i = ai - ci;
                const double t2r = br + dr, t2i = bi + di;
                // t3 = -+i (b - d)
                const double t3r = -i_sign * (bi - di);
                const double t3i = i_sign * (br - dr);
                const double u0r = t0r + t2r, u0i = t0i + t2i;
                const double u1r = t1r + t3r, u1i = t1i + t3i;
                const double u2r = t0r - t2r, u2i = t0i - t2i;
                const double u3r = t1r - t3r, u3i = t1i - t3i;
                y0[2 * q] = u0r;
                y0[2 * q + 1] = u0i;
                y0[2 * (s + q)] = u1r * w1r - u1i * w1i;
                y0[2 * (s + q) + 1] = u1r * w1i + u1i * w1r;
                y0[2 * (2 * s + q)] = u2r * w2r - u2i * w2i;
                y0[2 * (2 * s + q) + 1] = u2r * w2i + u2i * w2r;
                y0[2 * (3 * s + q)] = u3r * w3r - u3i * w3i;
                y0[2 * (3 * s + q) + 1] = u3r * w3i + u3i * w3r;
            }
        }
    }

    void pass2(std::size_t n, std::size_t s, const double* x, double* y, bool inv) const {
        const std::size_t m = n / 2;
        const std::size_t stride = n_ / n;
        for (std::size_t p = 0; p < m; ++p) {
            const std::size_t k = p * stride;
            const double wr = tw_re_[k], wi = inv ? -tw_im_[k] : tw_im_[k];
            const double* xa = x + 2 * s * p;
            const double* xb = x + 2 * s * (p + m);
            double* y0 = y + 2 * s * 2 * p;
            for (std::size_t q = 0; q < s; ++q) {
                const double ar = xa[2 * q], ai = xa[2 * q + 1];
                const double br = xb[2 * q], bi = xb[2 * q + 1];
                const double sr = ar - br, si = ai - bi;
                y0[2 * q] = ar + br;
                y0[2 * q + 1] = ai + bi;
                y0[2 * (s + q)] = sr * wr - si * wi;
                y0[2 * (s + q) + 1] = sr * wi + si * wr;
            }
        }
    }

    void transform(std::complex<double>* data, bool inv) const {
        if (n_ == 1) return;
        double* a = reinterpret_cast<double*>(data);
        double* b = reinterpret_cast<double*>(work_.data());
        std::size_t n = n_;
        std::size_t s = 1;
        bool in_a = true;
        while (n > 1) {
            if (n % 4 == 0) {
                pass4(n, s, in_a ? a : b, in_a ? b : a, inv);
                n /= 4;
                s *= 4;
            } else {
                pass2(n, s, in_a ? a : b, in_a ? b : a, inv);
                n /= 2;
                s *= 2;
            }
            in_a = !in_a;
        }
        if (!in_a) {
            for (std::size_t i = 0; i < 2 * n_; ++i) a[i] = b[i];
        }
    }

    std::size_t n_;
    mutable std::vector<std::complex<double>> work_;
    std::vector<double> tw_re_, tw_im_;
};

/// Per-thread plan cache; SSFM reuses one size thousands of times.
inline const Plan& plan_for(std::size_t n) {
    thread_local std::unordered_map<std::size_t, std::unique_ptr<Plan>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Plan>(n);
    return *slot;
}

inline void forward(std::vector<std::complex<double>>& v) { plan_for(v.size()).forward(v.data()); }
inline void inverse(std::vector<std::complex<double>>& v) { plan_for(v.size()).inverse(v.data()); }

/// Frequency of FFT bin k at the given sample rate (negative for the
/// upper half, standard wrap-around order).
inline double bin_frequency_hz(std::size_t k, std::size_t n, double sample_rate_hz) {
    const auto half = n / 2;
    const double idx = k < half ? static_cast<double>(k)
                                : static_cast<double>(k) - static_cast<double>(n);
    return idx * sample_rate_hz / static_cast<double>(n);
}

}  // namespace sp8d::fft
