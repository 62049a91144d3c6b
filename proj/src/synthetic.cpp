#include "freqaug/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freqaug/rng.hpp"

namespace freqaug {

SyntheticSample synthetic_fundus(int height, int width, std::uint64_t seed) {
    RngStream rng(derive_seed(seed, {0x66756e64}));
    const double cy = height / 2.0 + rng.uniform(-0.03, 0.03) * height;
    const double cx = width / 2.0 + rng.uniform(-0.03, 0.03) * width;
    const double radius = 0.46 * std::min(height, width);
    const double tint[3] = {rng.uniform(0.70, 0.90), rng.uniform(0.30, 0.45), rng.uniform(0.10, 0.20)};

    const double disc_angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double disc_y = cy + 0.45 * radius * std::sin(disc_angle);
    const double disc_x = cx + 0.45 * radius * std::cos(disc_angle);
    const double disc_r = 0.12 * radius;

    Field field(height, width, 3);
    CategoryMap label{height, width, 2, std::vector<int>(static_cast<std::size_t>(height) * width, 0)};

    // Vessels: random walks leaving the optic disc.
    std::vector<double> vessel(static_cast<std::size_t>(height) * width, 0.0);
    const int branches = 10;
    for (int b = 0; b < branches; ++b) {
        double angle = disc_angle + std::numbers::pi + rng.uniform(-1.6, 1.6);
        double y = disc_y;
        double x = disc_x;
        const double thickness = rng.uniform(0.6, 1.8) * std::max(1.0, std::min(height, width) / 128.0);
        const int steps = static_cast<int>(rng.uniform(0.8, 1.6) * radius);
        for (int s = 0; s < steps; ++s) {
            angle += rng.uniform(-0.12, 0.12);
            y += std::sin(angle);
            x += std::cos(angle);
            const int r0 = static_cast<int>(std::floor(y - thickness));
            const int c0 = static_cast<int>(std::floor(x - thickness));
            for (int r = r0; r <= r0 + 2 * thickness + 1; ++r) {
                for (int c = c0; c <= c0 + 2 * thickness + 1; ++c) {
                    if (r < 0 || r >= height || c < 0 || c >= width) {
                        continue;
                    }
                    const double d = std::hypot(r - y, c - x);
                    if (d <= thickness) {
                        vessel[static_cast<std::size_t>(r) * width + c] = 1.0;
                    }
                }
            }
        }
    }

    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const double rho = std::hypot(r - cy, c - cx) / radius;
            const std::size_t i = static_cast<std::size_t>(r) * width + c;
            if (rho > 1.0) {
                for (int ch = 0; ch < 3; ++ch) {
                    field.at(ch, r, c) = std::clamp(0.02 + 0.01 * rng.uniform(-1.0, 1.0), 0.0, 1.0);
                }
                continue;
            }
            const double vignette = 1.0 - 0.45 * rho * rho;
            const double disc = std::exp(-std::pow(std::hypot(r - disc_y, c - disc_x) / disc_r, 2.0));
            const bool in_vessel = vessel[i] > 0.0;
            if (in_vessel) {
                label.labels[i] = 1;
            }
            for (int ch = 0; ch < 3; ++ch) {
                double v = tint[ch] * vignette + 0.35 * disc;
                if (in_vessel) {
                    v *= ch == 0 ? 0.65 : 0.45;
                }
                v += 0.015 * rng.uniform(-1.0, 1.0);
                field.at(ch, r, c) = std::clamp(v, 0.0, 1.0);
            }
        }
    }
    return {Image(std::move(field)), std::move(label)};
}

}  // namespace freqaug
