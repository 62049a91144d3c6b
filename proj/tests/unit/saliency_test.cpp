#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "freqaug/error.hpp"
#include "freqaug/fft.hpp"
#include "freqaug/saliency.hpp"
#include "test_support.hpp"

using namespace freqaug;
using testing_support::max_abs_diff;
using testing_support::random_image;

TEST(GaussianKernel, SymmetricNonnegativeNormalized) {
    for (int radius : {1, 2, 5, 16}) {
        for (double sigma : {0.3, radius / 3.0, 2.5}) {
            const GaussianKernel k = make_gaussian_kernel(radius, sigma);
            ASSERT_EQ(k.weights.size(), static_cast<std::size_t>(2 * radius + 1));
            EXPECT_NEAR(std::accumulate(k.weights.begin(), k.weights.end(), 0.0), 1.0, 1e-12);
            for (int i = 0; i < k.window(); ++i) {
                EXPECT_GE(k.weights[i], 0.0);
                EXPECT_EQ(k.weights[i], k.weights[k.window() - 1 - i]);
            }
            EXPECT_NEAR(k.weights[radius + 1] / k.weights[radius], std::exp(-0.5 / (sigma * sigma)), 1e-12);
        }
    }
    EXPECT_THROW(make_gaussian_kernel(0, 1.0), InvalidInput);
    EXPECT_THROW(make_gaussian_kernel(1, 0.0), InvalidInput);
}

TEST(DefaultKernel, SizeRule) {
    const GaussianKernel big = default_kernel_for(512, 512);
    EXPECT_EQ(big.radius, 16);
    EXPECT_DOUBLE_EQ(big.sigma, 16.0 / 3.0);
    const GaussianKernel mid = default_kernel_for(64, 64);
    EXPECT_EQ(mid.radius, 2);
    EXPECT_DOUBLE_EQ(mid.sigma, 2.0 / 3.0);
    const GaussianKernel small = default_kernel_for(8, 8);
    EXPECT_EQ(small.radius, 1);
    EXPECT_EQ(small.window() % 2, 1);
    EXPECT_EQ(default_kernel_for(100, 700).radius, 3);
    EXPECT_THROW(default_kernel_for(7, 64), InvalidInput);
}

TEST(ReflectIndex, HalfSampleMirror) {
    EXPECT_EQ(reflect_index(0, 5), 0);
    EXPECT_EQ(reflect_index(4, 5), 4);
    EXPECT_EQ(reflect_index(-1, 5), 0);
    EXPECT_EQ(reflect_index(-2, 5), 1);
    EXPECT_EQ(reflect_index(5, 5), 4);
    EXPECT_EQ(reflect_index(6, 5), 3);
    EXPECT_EQ(reflect_index(-6, 5), 4);
    EXPECT_EQ(reflect_index(10, 5), 0);
}

TEST(GaussianBlur, ConstantImageIsUnchanged) {
    const Field flat(12, 10, 2, 0.42);
    const Field out = gaussian_blur(flat, make_gaussian_kernel(3, 1.1));
    for (double v : out.values()) {
        EXPECT_NEAR(v, 0.42, 1e-12);
    }
}

TEST(GaussianBlur, ImpulseReproducesKernel) {
    Field impulse(21, 21, 1, 0.0);
    impulse.at(0, 10, 10) = 1.0;
    const GaussianKernel k = make_gaussian_kernel(3, 1.0);
    const Field out = gaussian_blur(impulse, k);
    for (int r = 0; r < 21; ++r) {
        for (int c = 0; c < 21; ++c) {
            const int dr = r - 10;
            const int dc = c - 10;
            const double expected =
                (std::abs(dr) <= 3 && std::abs(dc) <= 3) ? k.weights[dr + 3] * k.weights[dc + 3] : 0.0;
            EXPECT_NEAR(out.at(0, r, c), expected, 1e-15);
        }
    }
}

TEST(GaussianBlur, MatchesDenseConvolution16x16) {
    const Image img = random_image(16, 16, 3, 1616);
    for (auto [radius, sigma] : {std::pair{1, 1.0 / 3.0}, std::pair{2, 0.8}, std::pair{5, 2.0}, std::pair{7, 3.0}}) {
        const Field fast = gaussian_blur(img.field(), make_gaussian_kernel(radius, sigma));
        EXPECT_LT(max_abs_diff(fast, oracle::dense_blur(img.field(), radius, sigma)), 1e-12) << radius;
    }
}

TEST(GaussianBlur, MatchesDenseConvolutionOnNonSquare) {
    const Image img = random_image(9, 14, 1, 914);
    const Field fast = gaussian_blur(img.field(), make_gaussian_kernel(4, 1.7));
    EXPECT_LT(max_abs_diff(fast, oracle::dense_blur(img.field(), 4, 1.7)), 1e-12);
}

TEST(GaussianBlur, RejectsKernelWiderThanImage) {
    EXPECT_THROW(gaussian_blur(Field(4, 10, 1), make_gaussian_kernel(2, 1.0)), InvalidInput);
    EXPECT_THROW(gaussian_blur(Field(10, 4, 1), make_gaussian_kernel(2, 1.0)), InvalidInput);
    EXPECT_NO_THROW(gaussian_blur(Field(5, 5, 1), make_gaussian_kernel(2, 1.0)));
}

TEST(StructureSaliency, ReconstructionIdentity) {
    const Image img = random_image(40, 33, 3, 4033);
    const GaussianKernel k = default_kernel_for(40, 33);
    const Field psi = structure_saliency(img, k);
    const Field blur = gaussian_blur(img.field(), k);
    ASSERT_TRUE(psi.same_shape(img.field()));
    for (std::size_t i = 0; i < psi.size(); ++i) {
        EXPECT_NEAR(psi.values()[i] + blur.values()[i], img.field().values()[i], 1e-12);
    }
}

TEST(StructureSaliency, ConstantImageIsZero) {
    const Field psi = structure_saliency(Image(Field(32, 32, 3, 0.8)), default_kernel_for(32, 32));
    for (double v : psi.values()) {
        EXPECT_NEAR(v, 0.0, 1e-12);
    }
}

TEST(StructureSaliency, InvariantToConstantOffset) {
    const Field x = oracle::random_field(24, 24, 2, 24);
    Field shifted = x;
    for (double& v : shifted.values()) {
        v += 0.37;
    }
    const GaussianKernel k = make_gaussian_kernel(2, 0.9);
    EXPECT_LT(max_abs_diff(structure_saliency(x, k), structure_saliency(shifted, k)), 1e-12);
}

TEST(StructureSaliency, StepEdgeIsAntisymmetricAndLocal) {
    Field step(32, 32, 1, 0.0);
    for (int r = 0; r < 32; ++r) {
        for (int c = 16; c < 32; ++c) {
            step.at(0, r, c) = 1.0;
        }
    }
    const GaussianKernel k = default_kernel_for(32, 32);
    const Field psi = structure_saliency(Image(step), k);
    Field expected = step;
    const Field blur = oracle::dense_blur(step, k.radius, k.sigma);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        expected.values()[i] -= blur.values()[i];
    }
    EXPECT_LT(max_abs_diff(psi, expected), 1e-12);
    for (int r = 0; r < 32; ++r) {
        for (int j = 0; j < 16; ++j) {
            EXPECT_NEAR(psi.at(0, r, 15 - j), -psi.at(0, r, 16 + j), 1e-12);
            if (j >= k.radius) {
                EXPECT_NEAR(psi.at(0, r, 15 - j), 0.0, 1e-12);
            }
        }
    }
    EXPECT_LT(psi.at(0, 5, 15), 0.0);
    EXPECT_GT(psi.at(0, 5, 16), 0.0);
}

TEST(StructureSaliency, TranslationCovariantAwayFromBorders) {
    const Field x = oracle::random_field(48, 48, 1, 48);
    const int dy = 3;
    const int dx = 5;
    Field crop(40, 40, 1);
    for (int r = 0; r < 40; ++r) {
        for (int c = 0; c < 40; ++c) {
            crop.at(0, r, c) = x.at(0, r + dy, c + dx);
        }
    }
    const GaussianKernel k = make_gaussian_kernel(3, 1.0);
    const Field full = structure_saliency(x, k);
    const Field part = structure_saliency(crop, k);
    for (int r = k.radius; r < 40 - k.radius; ++r) {
        for (int c = k.radius; c < 40 - k.radius; ++c) {
            EXPECT_NEAR(part.at(0, r, c), full.at(0, r + dy, c + dx), 1e-12);
        }
    }
}

TEST(StructureSaliency, SuppressesLowFrequenciesOfWhiteNoise) {
    const int n = 32;
    std::vector<std::pair<int, int>> low_bins;
    std::vector<std::pair<double, std::pair<int, int>>> by_distance;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            by_distance.push_back({std::hypot(u - n / 2, v - n / 2), {u, v}});
        }
    }
    std::sort(by_distance.begin(), by_distance.end());
    const std::size_t keep = by_distance.size() / 20;
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Image noise = random_image(n, n, 1, 7000 + seed);
        const Spectrum in = dft2(noise);
        const Spectrum out = dft2(structure_saliency(noise, default_kernel_for(n, n)));
        double in_mag = 0.0;
        double out_mag = 0.0;
        for (std::size_t i = 0; i < keep; ++i) {
            const auto [u, v] = by_distance[i].second;
            in_mag += std::abs(in.at(0, u, v));
            out_mag += std::abs(out.at(0, u, v));
        }
        wins += out_mag < in_mag ? 1 : 0;
    }
    EXPECT_EQ(wins, 10);
}

TEST(SaliencyPreview, AffineToUnitRange) {
    const Field psi = structure_saliency(random_image(16, 16, 3, 3), make_gaussian_kernel(1, 0.5));
    const Image preview = saliency_preview(psi);
    const auto [lo, hi] = std::minmax_element(preview.field().values().begin(), preview.field().values().end());
    EXPECT_EQ(*lo, 0.0);
    EXPECT_EQ(*hi, 1.0);
    const Image flat = saliency_preview(Field(4, 4, 1, 0.0));
    for (double v : flat.field().values()) {
        EXPECT_EQ(v, 0.5);
    }
}
