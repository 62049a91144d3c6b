#include <cmath>

#include <gtest/gtest.h>

#include "freqaug/error.hpp"
#include "freqaug/fft.hpp"
#include "test_support.hpp"

using namespace freqaug;
using testing_support::max_abs_diff;
using testing_support::random_image;

namespace {

double natural_bin_error(const Spectrum& centered, const std::vector<oracle::Complex>& direct, int c) {
    const Spectrum natural = unshift_center(centered);
    double worst = 0.0;
    for (int u = 0; u < natural.height(); ++u) {
        for (int v = 0; v < natural.width(); ++v) {
            worst = std::max(worst, std::abs(natural.at(c, u, v) - direct[static_cast<std::size_t>(u) * natural.width() + v]));
        }
    }
    return worst;
}

}  // namespace

TEST(Dft2, ConstantImageHasOnlyTheCenterBin) {
    const int m = 6;
    const int n = 5;
    const double c = 0.37;
    const Spectrum s = dft2(Image(Field(m, n, 1, c)));
    EXPECT_EQ(s.layout(), SpectrumLayout::centered);
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < n; ++v) {
            const Complex expected = (u == m / 2 && v == n / 2) ? Complex(c * m * n, 0.0) : Complex(0.0, 0.0);
            EXPECT_NEAR(std::abs(s.at(0, u, v) - expected), 0.0, 1e-9) << u << "," << v;
        }
    }
}

TEST(Dft2, MatchesDirectSummationOnSmallSizes) {
    std::uint64_t seed = 1;
    for (int m : {2, 3, 4, 8}) {
        for (int n : {2, 3, 4, 8}) {
            const Image img = random_image(m, n, 2, seed++);
            const Spectrum s = dft2(img);
            for (int c = 0; c < 2; ++c) {
                EXPECT_LT(natural_bin_error(s, oracle::dft2(img.field(), c), c), 1e-9) << m << "x" << n;
            }
        }
    }
}

TEST(Dft2, MatchesDirectSummationOnRandom8x8) {
    const Image img = random_image(8, 8, 1, 88);
    EXPECT_LT(natural_bin_error(dft2(img), oracle::dft2(img.field(), 0), 0), 1e-9);
}

TEST(Dft2, MatchesDirectSummationOnAwkwardLengths) {
    // Prime and composite non-power-of-two lengths exercise the chirp path.
    for (auto [m, n] : {std::pair{7, 11}, std::pair{12, 5}, std::pair{13, 9}}) {
        const Image img = random_image(m, n, 1, static_cast<std::uint64_t>(m * 100 + n));
        EXPECT_LT(natural_bin_error(dft2(img), oracle::dft2(img.field(), 0), 0), 1e-9) << m << "x" << n;
    }
}

TEST(Dft2, RejectsDegenerateExtent) {
    EXPECT_THROW(dft2(Field(1, 4, 1)), InvalidInput);
    EXPECT_THROW(dft2(Field(4, 1, 1)), InvalidInput);
}

TEST(Idft2, RoundTripRandom64x64) {
    const Image img = random_image(64, 64, 3, 64);
    const InverseResult back = idft2(dft2(img));
    EXPECT_LT(max_abs_diff(back.real, img.field()), 1e-9);
    EXPECT_LT(back.max_imag, 1e-9);
}

TEST(Idft2, RoundTripAcrossShapes) {
    std::uint64_t seed = 500;
    for (int m : {2, 3, 5, 16, 30, 33}) {
        for (int n : {2, 7, 8, 24, 31}) {
            const Image img = random_image(m, n, 1, seed++);
            EXPECT_LT(max_abs_diff(idft2(dft2(img)).real, img.field()), 1e-9) << m << "x" << n;
        }
    }
}

TEST(Idft2, MatchesDirectInverse) {
    const Image img = random_image(6, 9, 1, 69);
    const Spectrum s = dft2(img);
    Spectrum perturbed = s;
    perturbed.at(0, 1, 2) += Complex(0.3, -0.7);
    const Spectrum natural = unshift_center(perturbed);
    std::vector<oracle::Complex> raw(natural.values().begin(), natural.values().end());
    double oracle_imag = 0.0;
    const std::vector<double> expected = oracle::idft2_real(raw, 6, 9, &oracle_imag);
    const InverseResult got = idft2(perturbed);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(got.real.values()[i], expected[i], 1e-9);
    }
    EXPECT_NEAR(got.max_imag, oracle_imag, 1e-9);
    EXPECT_GT(got.max_imag, 1e-3);
}

TEST(Idft2, CenteredDcImpulseGivesConstantField) {
    Spectrum s(4, 4, 1, SpectrumLayout::centered);
    s.at(0, 2, 2) = 1.0;
    const InverseResult r = idft2(s);
    for (double v : r.real.values()) {
        EXPECT_NEAR(v, 0.0625, 1e-15);
    }
}

TEST(Idft2, ParsevalRandom16x16) {
    const Image img = random_image(16, 16, 1, 16);
    const Spectrum s = dft2(img);
    double space = 0.0;
    for (double v : img.field().values()) {
        space += v * v;
    }
    double freq = 0.0;
    for (const Complex& z : s.values()) {
        freq += std::norm(z);
    }
    freq /= 256.0;
    EXPECT_LT(std::abs(space - freq) / space, 1e-9);
}

TEST(Dft2, IsLinear) {
    const Field x = oracle::random_field(10, 12, 2, 1);
    const Field y = oracle::random_field(10, 12, 2, 2);
    const double a = 0.7;
    const double b = -1.9;
    Field combo(10, 12, 2);
    for (std::size_t i = 0; i < combo.size(); ++i) {
        combo.values()[i] = a * x.values()[i] + b * y.values()[i];
    }
    const Spectrum fx = dft2(x);
    const Spectrum fy = dft2(y);
    const Spectrum fc = dft2(combo);
    for (std::size_t i = 0; i < fc.values().size(); ++i) {
        EXPECT_LT(std::abs(fc.values()[i] - (a * fx.values()[i] + b * fy.values()[i])), 1e-9);
    }
}

TEST(Dft2, RealInputIsConjugateSymmetric) {
    for (auto [m, n] : {std::pair{8, 8}, std::pair{5, 6}, std::pair{9, 7}}) {
        const Spectrum s = unshift_center(dft2(random_image(m, n, 1, static_cast<std::uint64_t>(m + n))));
        for (int u = 0; u < m; ++u) {
            for (int v = 0; v < n; ++v) {
                EXPECT_LT(std::abs(s.at(0, u, v) - std::conj(s.at(0, (m - u) % m, (n - v) % n))), 1e-9);
            }
        }
    }
}

TEST(Dft2, ChannelsAreIndependent) {
    Field two = oracle::random_field(8, 6, 2, 3);
    Field first(8, 6, 1);
    std::copy(two.plane(0).begin(), two.plane(0).end(), first.plane(0).begin());
    const Spectrum both = dft2(two);
    const Spectrum alone = dft2(first);
    for (std::size_t i = 0; i < alone.values().size(); ++i) {
        EXPECT_EQ(both.values()[i], alone.values()[i]);
    }
}

TEST(ShiftCenter, ShiftThenUnshiftIsBitwiseIdentity) {
    const Spectrum s = dft2(random_image(7, 10, 2, 710));
    const Spectrum natural = unshift_center(s);
    EXPECT_EQ(natural.layout(), SpectrumLayout::natural);
    EXPECT_EQ(shift_center(natural), s);
    EXPECT_EQ(unshift_center(shift_center(natural)), natural);
}

TEST(ShiftCenter, DcMovesToFloorHalf) {
    for (auto [m, n] : {std::pair{4, 4}, std::pair{3, 3}, std::pair{5, 8}}) {
        Spectrum s(m, n, 1, SpectrumLayout::natural);
        s.at(0, 0, 0) = 1.0;
        const Spectrum c = shift_center(s);
        EXPECT_EQ(c.at(0, m / 2, n / 2), Complex(1.0, 0.0));
    }
    EXPECT_EQ(centered_index(0, 3), 1);
}

TEST(ShiftCenter, AlreadyInLayoutIsUnchanged) {
    const Spectrum c = dft2(random_image(4, 6, 1, 46));
    EXPECT_EQ(shift_center(c), c);
    const Spectrum n = unshift_center(c);
    EXPECT_EQ(unshift_center(n), n);
}

TEST(FftPlan, InverseOfForwardScalesByLength) {
    for (std::size_t n : {1u, 2u, 3u, 16u, 17u, 100u}) {
        const FftPlan plan(n);
        std::vector<Complex> data(n);
        for (std::size_t i = 0; i < n; ++i) {
            data[i] = Complex(std::sin(1.0 + i), std::cos(0.3 * i));
        }
        const auto original = data;
        plan.forward(data);
        plan.inverse(data);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_LT(std::abs(data[i] / static_cast<double>(n) - original[i]), 1e-12);
        }
    }
}
