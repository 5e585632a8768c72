#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sp8d/formats.hpp"

using namespace sp8d;

TEST(BuildFormat, SizesAndInfoBits) {
    EXPECT_EQ(build_format(FormatKind::PDM_QPSK).size(), 256u);
    EXPECT_EQ(build_format(FormatKind::PDM_BPSK).size(), 16u);
    const Constellation pb5 = build_format(FormatKind::PB_5B8D);
    EXPECT_EQ(pb5.size(), 32u);
    EXPECT_EQ(pb5.info_bits(), 5);
    EXPECT_DOUBLE_EQ(pb5.se_per_4d(), 2.5);
    const Constellation pa7 = build_format(FormatKind::PA_7B8D);
    EXPECT_EQ(pa7.size(), 128u);
    EXPECT_EQ(pa7.info_bits(), 7);
    EXPECT_DOUBLE_EQ(pa7.se_per_4d(), 3.5);
}

TEST(BuildFormat, MinimumDistances) {
    // brute-force oracle values: one quadrature flip of 1/sqrt(2) for the
    // full set, a +-1 rail flip for PDM-BPSK
    EXPECT_NEAR(build_format(FormatKind::PDM_QPSK).dmin_sq(), 2.0, 1e-12);
    EXPECT_NEAR(build_format(FormatKind::PDM_BPSK).dmin_sq(), 4.0, 1e-12);
    EXPECT_NEAR(build_format(FormatKind::PB_5B8D).dmin_sq(), 4.0, 1e-12);
    // same minimum Euclidean distance as PDM-QPSK
    EXPECT_NEAR(build_format(FormatKind::PA_7B8D).dmin_sq(), 2.0, 1e-12);
}

TEST(BuildFormat, UnitEnergyPerPolarizationPerSlot) {
    for (const FormatKind kind : {FormatKind::PDM_BPSK, FormatKind::PDM_QPSK,
                                  FormatKind::PB_5B8D, FormatKind::PA_7B8D}) {
        const Constellation c = build_format(kind);
        for (const auto& s : c.symbols()) {
            EXPECT_NEAR(std::norm(s.t1.ex), 1.0, 1e-12);
            EXPECT_NEAR(std::norm(s.t1.ey), 1.0, 1e-12);
            EXPECT_NEAR(std::norm(s.t2.ex), 1.0, 1e-12);
            EXPECT_NEAR(std::norm(s.t2.ey), 1.0, 1e-12);
        }
    }
}

TEST(BuildFormat, InvalidConventionRejected) {
    // A convention outside find_convention()'s result set breaks the
    // PB-5B8D class constraint.
    LabelConvention bad;
    bad.inversion_mask = 0x01;
    bool rejected = false;
    try {
        build_format(FormatKind::PB_5B8D, bad);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    try {
        build_format(FormatKind::PA_7B8D, bad);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    EXPECT_TRUE(rejected);
}

TEST(SearchPartition, FullTargetReturnsWholeSet) {
    const Constellation all = search_partition(8, 1);
    EXPECT_EQ(all.size(), 256u);
    EXPECT_EQ(all.census(), (ClassCensus{64, 128, 64}));
}

TEST(SearchPartition, SevenBitsExhaustsPbThenPa) {
    const Constellation c = search_partition(7, 1);
    EXPECT_EQ(c.size(), 128u);
    EXPECT_EQ(c.census(), (ClassCensus{64, 64, 0}));
}

TEST(SearchPartition, SixBitsIsExactlyThePbSet) {
    const Constellation c = search_partition(6, 123);
    EXPECT_EQ(c.size(), 64u);
    EXPECT_EQ(c.census(), (ClassCensus{64, 0, 0}));
}

TEST(SearchPartition, FiveBitsAllPbAndAtLeastEqOneDistance) {
    const Constellation searched = search_partition(5, 7, canonical_convention(), 16);
    EXPECT_EQ(searched.census(), (ClassCensus{32, 0, 0}));
    const Constellation eq1 = build_format(FormatKind::PB_5B8D);
    EXPECT_GE(searched.dmin_sq(), eq1.dmin_sq() - 1e-9);
}

TEST(SearchPartition, InvalidBitCountThrows) {
    EXPECT_THROW(search_partition(3, 1), std::invalid_argument);
    EXPECT_THROW(search_partition(9, 1), std::invalid_argument);
}

TEST(SearchPartition, DeterministicForFixedSeed) {
    const Constellation a = search_partition(5, 99);
    const Constellation b = search_partition(5, 99);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(a.symbol(i).label.value(), b.symbol(i).label.value());
}

TEST(EncodeStream, Pb5ZeroBitsGetsLabel00000011) {
    const Constellation pb5 = build_format(FormatKind::PB_5B8D);
    const auto symbols = encode_stream({0, 0, 0, 0, 0}, pb5);
    ASSERT_EQ(symbols.size(), 1u);
    EXPECT_EQ(symbols[0].label, BitWord(0b00000011, 8));
}

TEST(EncodeStream, QpskLabelsAreIdentity) {
    const Constellation qpsk = build_format(FormatKind::PDM_QPSK);
    const auto symbols = encode_stream({1, 0, 1, 1, 0, 0, 1, 0}, qpsk);
    ASSERT_EQ(symbols.size(), 1u);
    EXPECT_EQ(symbols[0].label, BitWord(0b10110010, 8));
}

TEST(EncodeStream, LengthMismatchThrows) {
    const Constellation pb5 = build_format(FormatKind::PB_5B8D);
    EXPECT_THROW(encode_stream({0, 1, 0}, pb5), std::invalid_argument);
}

TEST(EncodeDecode, RoundTripOnNoiselessData) {
    std::mt19937_64 eng(7);
    for (const FormatKind kind : {FormatKind::PDM_BPSK, FormatKind::PDM_QPSK,
                                  FormatKind::PB_5B8D, FormatKind::PA_7B8D}) {
        const Constellation c = build_format(kind);
        const int k = c.info_bits();
        const std::size_t n_bits = 10000 / static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
        std::vector<std::uint8_t> bits(n_bits);
        for (auto& b : bits) b = static_cast<std::uint8_t>(eng() & 1u);
        const auto symbols = encode_stream(bits, c);
        std::vector<std::uint8_t> back;
        back.reserve(n_bits);
        for (const auto& s : symbols) {
            const auto [label, info] = ml_decide(s.coords(), c);
            EXPECT_EQ(label, s.label);
            for (int i = 1; i <= k; ++i) back.push_back(static_cast<std::uint8_t>(info.bit(i)));
        }
        EXPECT_EQ(back, bits);
    }
}

TEST(MlDecide, HalfMinimumDistanceGuarantee) {
    std::mt19937_64 eng(11);
    std::normal_distribution<double> gauss;
    for (const FormatKind kind : {FormatKind::PDM_QPSK, FormatKind::PB_5B8D}) {
        const Constellation c = build_format(kind);
        const double dmin = std::sqrt(c.dmin_sq());
        for (int trial = 0; trial < 500; ++trial) {
            const Symbol8D& s = c.symbol(eng() % c.size());
            std::array<double, 8> noise{};
            double norm = 0.0;
            for (auto& v : noise) {
                v = gauss(eng);
                norm += v * v;
            }
            norm = std::sqrt(norm);
            const double radius = 0.49 * dmin;
            auto r = s.coords();
            for (int i = 0; i < 8; ++i)
                r[static_cast<std::size_t>(i)] +=
                    noise[static_cast<std::size_t>(i)] / norm * radius;
            EXPECT_EQ(ml_decide(r, c).first, s.label);
        }
    }
}

TEST(MlDecide, DecisionsStayInsideTheCodebook) {
    const Constellation pb5 = build_format(FormatKind::PB_5B8D);
    std::set<std::uint32_t> labels;
    for (const auto& s : pb5.symbols()) labels.insert(s.label.value());
    std::mt19937_64 eng(13);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 2000; ++trial) {
        std::array<double, 8> r;
        for (auto& v : r) v = uni(eng);
        EXPECT_TRUE(labels.count(ml_decide(r, pb5).first.value()));
    }
}

TEST(MlDecide, TieBreaksTowardLowestLabel) {
    const Constellation qpsk = build_format(FormatKind::PDM_QPSK);
    // midpoint between two nearest neighbours is equidistant to both (and
    // possibly more); the decision must take the lowest label among the
    // argmin set
    const auto& a = qpsk.symbol(0);
    std::size_t nearest = 1;
    double best = 1e300;
    for (std::size_t j = 1; j < qpsk.size(); ++j) {
        const double d = distance_sq(a, qpsk.symbol(j));
        if (d < best) {
            best = d;
            nearest = j;
        }
    }
    auto mid = a.coords();
    const auto bc = qpsk.symbol(nearest).coords();
    for (int i = 0; i < 8; ++i)
        mid[static_cast<std::size_t>(i)] =
            0.5 * (mid[static_cast<std::size_t>(i)] + bc[static_cast<std::size_t>(i)]);
    double dmin = 1e300;
    for (std::size_t j = 0; j < qpsk.size(); ++j) {
        double d = 0.0;
        const auto pc = qpsk.symbol(j).coords();
        for (int i = 0; i < 8; ++i) {
            const double diff = mid[static_cast<std::size_t>(i)] - pc[static_cast<std::size_t>(i)];
            d += diff * diff;
        }
        dmin = std::min(dmin, d);
    }
    std::uint32_t lowest = UINT32_MAX;
    for (std::size_t j = 0; j < qpsk.size(); ++j) {
        double d = 0.0;
        const auto pc = qpsk.symbol(j).coords();
        for (int i = 0; i < 8; ++i) {
            const double diff = mid[static_cast<std::size_t>(i)] - pc[static_cast<std::size_t>(i)];
            d += diff * diff;
        }
        if (d <= dmin + 1e-12) lowest = std::min(lowest, qpsk.symbol(j).label.value());
    }
    EXPECT_EQ(ml_decide(mid, qpsk).first.value(), lowest);
}

TEST(FormatReport, FieldsAreConsistent) {
    const FormatReport r = report(build_format(FormatKind::PA_7B8D));
    EXPECT_EQ(r.name, "PA-7B8D");
    EXPECT_EQ(r.info_bits, 7);
    EXPECT_DOUBLE_EQ(r.se_per_4d, 3.5);
    EXPECT_EQ(r.census, (ClassCensus{64, 64, 0}));
    EXPECT_TRUE(r.symmetric);
}

TEST(FormatKindParsing, NamesRoundTrip) {
    EXPECT_EQ(format_from_string("PDM-QPSK"), FormatKind::PDM_QPSK);
    EXPECT_EQ(format_from_string("pb_5b8d"), FormatKind::PB_5B8D);
    EXPECT_THROW(format_from_string("qam-16"), std::invalid_argument);
}
