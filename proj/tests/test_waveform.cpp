#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sp8d/formats.hpp"
#include "sp8d/rrc.hpp"
#include "sp8d/wdm.hpp"

using namespace sp8d;

namespace {

std::vector<JonesVector> random_slots(std::size_t n_slots, std::uint64_t seed) {
    const Constellation c = build_format(FormatKind::PDM_QPSK);
    std::mt19937_64 eng(seed);
    std::vector<JonesVector> slots;
    slots.reserve(n_slots);
    for (std::size_t i = 0; i < n_slots; i += 2) {
        const Symbol8D& s = c.symbol(eng() % c.size());
        slots.push_back(s.t1);
        slots.push_back(s.t2);
    }
    return slots;
}

}  // namespace

TEST(RrcTaps, SymmetryAndUnitEnergy) {
    const PulseShapeSpec spec{0.1, 16, 64, 32e9};
    const auto h = rrc_taps(spec);
    ASSERT_EQ(h.size(), static_cast<std::size_t>(64 * 16 + 1));
    double energy = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        EXPECT_NEAR(h[i], h[h.size() - 1 - i], 1e-12);
        energy += h[i] * h[i];
    }
    EXPECT_NEAR(energy, 1.0, 1e-12);
}

TEST(RrcTaps, MatchedCascadeIsiBelow40dB) {
    // numerical convolution oracle, sampled at symbol instants
    for (const int span : {32, 64}) {
        const PulseShapeSpec spec{0.1, 8, span, 32e9};
        const auto h = rrc_taps(spec);
        std::vector<double> g(2 * h.size() - 1, 0.0);
        for (std::size_t i = 0; i < h.size(); ++i)
            for (std::size_t j = 0; j < h.size(); ++j) g[i + j] += h[i] * h[j];
        const std::size_t mid = h.size() - 1;
        double isi = 0.0;
        for (std::size_t k = mid % 8; k < g.size(); k += 8)
            if (k != mid) isi = std::max(isi, std::abs(g[k]));
        EXPECT_LT(20.0 * std::log10(isi / g[mid]), -40.0) << "span " << span;
    }
}

TEST(RrcTaps, InvalidSpecThrows) {
    EXPECT_THROW(rrc_taps({0.0, 16, 64, 32e9}), std::invalid_argument);
    EXPECT_THROW(rrc_taps({0.1, 15, 64, 32e9}), std::invalid_argument);
    EXPECT_THROW(rrc_taps({0.1, 16, 8, 32e9}), std::invalid_argument);
}

TEST(PulseShape, MeasuredPowerHitsTarget) {
    const PulseShapeSpec spec{0.1, 8, 64, 32e9};
    for (const double dbm : {-7.0, 0.0, 3.0}) {
        const SampledField f = pulse_shape_slots(random_slots(8192, 21), spec, dbm);
        const double err_db = std::abs(w_to_dbm(average_power_w(f)) - dbm);
        EXPECT_LT(err_db, 0.01);
    }
}

TEST(PulseShape, OccupiedBandwidthMatchesRaisedCosineOracle) {
    const PulseShapeSpec spec{0.1, 8, 64, 32e9};
    SampledField f = pulse_shape_slots(random_slots(4096, 22), spec, 0.0);
    auto spec_x = f.x;
    fft::forward(spec_x);
    // periodogram: total power and the band holding 99% of it
    std::vector<std::pair<double, double>> bins;  // |f|, power
    bins.reserve(spec_x.size());
    double total = 0.0;
    for (std::size_t k = 0; k < spec_x.size(); ++k) {
        const double p = std::norm(spec_x[k]);
        bins.push_back({std::abs(fft::bin_frequency_hz(k, spec_x.size(), f.sample_rate_hz)), p});
        total += p;
    }
    std::sort(bins.begin(), bins.end());
    double acc = 0.0, bw99 = 0.0, support = 0.0;
    for (const auto& [freq, p] : bins) {
        acc += p;
        if (bw99 == 0.0 && acc >= 0.99 * total) bw99 = 2.0 * freq;
        if (p > 1e-12 * total) support = 2.0 * freq;
    }

    // quadrature oracle: 99% point of the raised-cosine power spectrum
    const double baud = spec.baud_hz, b = spec.rolloff;
    const double f1 = 0.5 * baud * (1.0 - b), f2 = 0.5 * baud * (1.0 + b);
    const auto rc = [&](double fr) {
        if (fr <= f1) return 1.0;
        if (fr >= f2) return 0.0;
        return 0.5 * (1.0 + std::cos(M_PI / (b * baud) * (fr - f1)));
    };
    const int steps = 200000;
    std::vector<double> cum(steps + 1, 0.0);
    for (int i = 1; i <= steps; ++i)
        cum[i] = cum[i - 1] + rc((i - 0.5) * f2 / steps) * f2 / steps;
    double oracle99 = 0.0;
    for (int i = 1; i <= steps; ++i)
        if (cum[i] >= 0.99 * cum[steps]) {
            oracle99 = 2.0 * i * f2 / steps;
            break;
        }

    EXPECT_NEAR(bw99, oracle99, 0.05 * oracle99);
    // full occupied band is baud*(1+rolloff) = 35.2 GHz
    EXPECT_NEAR(support, 35.2e9, 0.05 * 35.2e9);
}

TEST(PulseShape, EmptyInputThrows) {
    EXPECT_THROW(pulse_shape_slots({}, PulseShapeSpec{}, 0.0), std::invalid_argument);
}

TEST(PulseShape, BackToBackMatchedFilterRecoversSlots) {
    const PulseShapeSpec spec{0.1, 16, 64, 32e9};
    const auto slots = random_slots(2048, 23);
    const SampledField tx = pulse_shape_slots(slots, spec, -3.0);
    const SampledField rx = channel_select(tx, 0, spec, 37.5e9);
    Complex num{};
    double den = 0.0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        num += std::conj(rx.x[2 * i]) * slots[i].ex + std::conj(rx.y[2 * i]) * slots[i].ey;
        den += std::norm(rx.x[2 * i]) + std::norm(rx.y[2 * i]);
    }
    const Complex g = num / den;
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        err += std::norm(g * rx.x[2 * i] - slots[i].ex) + std::norm(g * rx.y[2 * i] - slots[i].ey);
        ref += std::norm(slots[i].ex) + std::norm(slots[i].ey);
    }
    EXPECT_LT(std::sqrt(err / ref), 1e-3);
}

TEST(WdmMux, SingleChannelIsIdentity) {
    const PulseShapeSpec spec{0.1, 8, 64, 32e9};
    const SampledField f = pulse_shape_slots(random_slots(512, 24), spec, 0.0);
    const SampledField m = wdm_mux({f}, 37.5e9, 35.2e9);
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_EQ(m.x[i], f.x[i]);
        EXPECT_EQ(m.y[i], f.y[i]);
    }
}

TEST(WdmMux, PaperCombFitsAndPowerAdds) {
    // 5 channels, 37.5 GHz grid, 64 sps at 32 GBd: 187.5 GHz << 2.048 THz
    const PulseShapeSpec spec{0.1, 64, 64, 32e9};
    std::vector<SampledField> ch;
    double sum = 0.0;
    for (int k = 0; k < 5; ++k) {
        ch.push_back(pulse_shape_slots(random_slots(256, 30 + static_cast<unsigned>(k)), spec,
                                       -7.0 + 0.5 * k));
        sum += average_power_w(ch.back());
    }
    const SampledField line = wdm_mux(ch, 37.5e9, 32e9 * 1.1);
    const double diff_db = std::abs(10.0 * std::log10(average_power_w(line) / sum));
    EXPECT_LT(diff_db, 0.05);
}

TEST(WdmMux, PreconditionsEnforced) {
    const PulseShapeSpec spec{0.1, 8, 64, 32e9};
    const SampledField f = pulse_shape_slots(random_slots(256, 25), spec, 0.0);
    EXPECT_THROW(wdm_mux({f, f}, 37.5e9, 35.2e9), std::invalid_argument);  // even count
    // 7 channels on a 256 GHz sample rate with 37.5 GHz grid: 6*37.5+35.2 > 256
    std::vector<SampledField> seven(7, f);
    EXPECT_THROW(wdm_mux(seven, 37.5e9, 35.2e9), std::invalid_argument);
}

TEST(ChannelSelect, RecoversNonCenterChannel) {
    const PulseShapeSpec spec{0.1, 32, 64, 32e9};
    std::vector<SampledField> ch;
    std::vector<std::vector<JonesVector>> slots;
    for (int k = 0; k < 5; ++k) {
        slots.push_back(random_slots(512, 40 + static_cast<unsigned>(k)));
        ch.push_back(pulse_shape_slots(slots.back(), spec, -5.0));
    }
    const SampledField line = wdm_mux(ch, 37.5e9, 32e9 * 1.1);
    const SampledField rx = channel_select(line, +1, spec, 37.5e9);  // channel index 3
    const auto& want = slots[3];
    Complex num{};
    double den = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        num += std::conj(rx.x[2 * i]) * want[i].ex + std::conj(rx.y[2 * i]) * want[i].ey;
        den += std::norm(rx.x[2 * i]) + std::norm(rx.y[2 * i]);
    }
    const Complex g = num / den;
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        err += std::norm(g * rx.x[2 * i] - want[i].ex) + std::norm(g * rx.y[2 * i] - want[i].ey);
        ref += std::norm(want[i].ex) + std::norm(want[i].ey);
    }
    // cross-channel leakage sits >= 30 dB down at roll-off 0.1
    EXPECT_LT(10.0 * std::log10(err / ref), -30.0);
}

TEST(ChannelSelect, SelectedEnergyMatchesLaunch) {
    const PulseShapeSpec spec{0.1, 32, 64, 32e9};
    std::vector<SampledField> ch;
    for (int k = 0; k < 3; ++k)
        ch.push_back(pulse_shape_slots(random_slots(512, 50 + static_cast<unsigned>(k)), spec, -5.0));
    const SampledField line = wdm_mux(ch, 37.5e9, 32e9 * 1.1);
    SampledField rx = channel_select(line, 0, spec, 37.5e9);
    // compare against the same receiver applied to the lone channel
    SampledField alone = channel_select(ch[1], 0, spec, 37.5e9);
    const double diff_db =
        std::abs(10.0 * std::log10(average_power_w(rx) / average_power_w(alone)));
    EXPECT_LT(diff_db, 0.1);
}

TEST(Linearity, MuxAndSelectScaleExactly) {
    const PulseShapeSpec spec{0.1, 8, 64, 32e9};
    SampledField f = pulse_shape_slots(random_slots(256, 26), spec, 0.0);
    const Complex alpha(0.3, -1.2);
    SampledField g = f;
    for (auto& v : g.x) v *= alpha;
    for (auto& v : g.y) v *= alpha;

    SampledField m1 = wdm_mux({f}, 37.5e9, 35.2e9);
    frequency_shift(m1, 12.5e9);
    SampledField m2 = wdm_mux({g}, 37.5e9, 35.2e9);
    frequency_shift(m2, 12.5e9);
    for (std::size_t i = 0; i < m1.size(); i += 17) {
        EXPECT_NEAR(std::abs(m2.x[i] - alpha * m1.x[i]), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(m2.y[i] - alpha * m1.y[i]), 0.0, 1e-12);
    }

    const SampledField s1 = channel_select(m1, 0, spec, 37.5e9);
    const SampledField s2 = channel_select(m2, 0, spec, 37.5e9);
    for (std::size_t i = 0; i < s1.size(); i += 7) {
        EXPECT_NEAR(std::abs(s2.x[i] - alpha * s1.x[i]), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(s2.y[i] - alpha * s1.y[i]), 0.0, 1e-12);
    }
}

TEST(FrequencyShift, RoundTripIdentity) {
    const PulseShapeSpec spec{0.1, 8, 64, 32e9};
    const SampledField f = pulse_shape_slots(random_slots(512, 27), spec, 0.0);
    SampledField g = f;
    frequency_shift(g, 37.5e9);
    frequency_shift(g, -37.5e9);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        err += std::norm(g.x[i] - f.x[i]) + std::norm(g.y[i] - f.y[i]);
        ref += std::norm(f.x[i]) + std::norm(f.y[i]);
    }
    EXPECT_LT(std::sqrt(err / ref), 1e-12);
}

TEST(PulseShape, PowerNormalizationIsScaleInvariant) {
    // the imposed power scaling makes shaping blind to symbol amplitude
    const PulseShapeSpec spec{0.1, 8, 64, 32e9};
    auto slots = random_slots(256, 28);
    const SampledField a = pulse_shape_slots(slots, spec, -3.0);
    for (auto& s : slots) {
        s.ex *= 2.5;
        s.ey *= 2.5;
    }
    const SampledField b = pulse_shape_slots(slots, spec, -3.0);
    for (std::size_t i = 0; i < a.size(); i += 13)
        EXPECT_NEAR(std::abs(a.x[i] - b.x[i]), 0.0, 1e-12);
}
