#pragma once

#include <vector>

#include "freqaug/field.hpp"

namespace freqaug {

/// Normalized 1D Gaussian taps over [-radius, radius]; the 2D kernel is their
/// outer product.
struct GaussianKernel {
    int radius = 1;
    double sigma = 1.0;
    std::vector<double> weights;  // 2 * radius + 1 taps, sum 1

    int window() const { return 2 * radius + 1; }
};

/// Throws InvalidInput for radius < 1 or sigma <= 0.
GaussianKernel make_gaussian_kernel(int radius, double sigma);

/// Size rule: radius = max(1, round(min(H, W) / divisor)), sigma = radius * sigma_ratio.
struct KernelRule {
    int divisor = 32;
    double sigma_ratio = 1.0 / 3.0;
};

/// Requires H, W >= 8.
GaussianKernel default_kernel_for(int height, int width, const KernelRule& rule = {});

/// Half-sample symmetric reflection (... c b a | a b c ...) of index i into [0, n).
int reflect_index(int i, int n);

/// Separable per-channel convolution with reflective borders. The kernel
/// window may not exceed either image dimension.
Field gaussian_blur(const Field& field, const GaussianKernel& kernel);

/// Signed residual x - x * g: the structure saliency map.
using SaliencyMap = Field;

SaliencyMap structure_saliency(const Field& field, const GaussianKernel& kernel);
SaliencyMap structure_saliency(const Image& image, const GaussianKernel& kernel);

/// Affine map of the whole map to [0,1], for previews only.
Image saliency_preview(const SaliencyMap& saliency);

}  // namespace freqaug
