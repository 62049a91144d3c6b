#include "freqaug/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freqaug/error.hpp"

namespace freqaug {

GaussianKernel make_gaussian_kernel(int radius, double sigma) {
    if (radius < 1) {
        throw InvalidInput("Gaussian kernel radius must be at least 1");
    }
    if (!(sigma > 0.0)) {
        throw InvalidInput("Gaussian kernel sigma must be positive");
    }
    GaussianKernel kernel{radius, sigma, std::vector<double>(2 * radius + 1)};
    std::vector<double> half(radius + 1);
    for (int i = 0; i <= radius; ++i) {
        half[i] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    }
    double sum = half[0];
    for (int i = 1; i <= radius; ++i) {
        sum += 2.0 * half[i];
    }
    for (int i = 0; i <= radius; ++i) {
        kernel.weights[radius + i] = half[i] / sum;
        kernel.weights[radius - i] = half[i] / sum;
    }
    return kernel;
}

GaussianKernel default_kernel_for(int height, int width, const KernelRule& rule) {
    if (height < 8 || width < 8) {
        throw InvalidInput("default kernel rule needs an image of at least 8x8");
    }
    if (rule.divisor < 1 || !(rule.sigma_ratio > 0.0)) {
        throw ConfigError("kernel rule needs divisor >= 1 and positive sigma ratio");
    }
    const double scaled = static_cast<double>(std::min(height, width)) / rule.divisor;
    const int radius = std::max(1, static_cast<int>(std::lround(scaled)));
    return make_gaussian_kernel(radius, radius * rule.sigma_ratio);
}

int reflect_index(int i, int n) {
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) {
        m += period;
    }
    return m < n ? m : period - 1 - m;
}

Field gaussian_blur(const Field& field, const GaussianKernel& kernel) {
    const int h = field.height();
    const int w = field.width();
    if (kernel.window() > h || kernel.window() > w) {
        std::ostringstream msg;
        msg << "kernel window " << kernel.window() << " exceeds image " << w << "x" << h;
        throw InvalidInput(msg.str());
    }
    const int r = kernel.radius;
    const auto& k = kernel.weights;

    Field horizontal(h, w, field.channels());
    Field out(h, w, field.channels());
    std::vector<double> line(static_cast<std::size_t>(std::max(h, w) + 2 * r));
    for (int c = 0; c < field.channels(); ++c) {
        for (int row = 0; row < h; ++row) {
            for (int j = -r; j < w + r; ++j) {
                line[j + r] = field.at(c, row, reflect_index(j, w));
            }
            for (int col = 0; col < w; ++col) {
                double acc = 0.0;
                for (int t = 0; t <= 2 * r; ++t) {
                    acc += k[t] * line[col + t];
                }
                horizontal.at(c, row, col) = acc;
            }
        }
        for (int col = 0; col < w; ++col) {
            for (int j = -r; j < h + r; ++j) {
                line[j + r] = horizontal.at(c, reflect_index(j, h), col);
            }
            for (int row = 0; row < h; ++row) {
                double acc = 0.0;
                for (int t = 0; t <= 2 * r; ++t) {
                    acc += k[t] * line[row + t];
                }
                out.at(c, row, col) = acc;
            }
        }
    }
    return out;
}

SaliencyMap structure_saliency(const Field& field, const GaussianKernel& kernel) {
    Field blurred = gaussian_blur(field, kernel);
    const auto src = field.values();
    auto dst = blurred.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = src[i] - dst[i];
    }
    return blurred;
}

SaliencyMap structure_saliency(const Image& image, const GaussianKernel& kernel) {
    return structure_saliency(image.field(), kernel);
}

Image saliency_preview(const SaliencyMap& saliency) {
    Field out(saliency.height(), saliency.width(), saliency.channels());
    const auto src = saliency.values();
    if (src.empty()) {
        return Image(std::move(out));
    }
    const auto [lo, hi] = std::minmax_element(src.begin(), src.end());
    const double extent = *hi - *lo;
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = extent > 0.0 ? (src[i] - *lo) / extent : 0.5;
    }
    return Image(std::move(out));
}

}  // namespace freqaug
