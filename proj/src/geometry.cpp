#include "freqaug/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "freqaug/error.hpp"

namespace freqaug {

namespace {

struct Tap {
    int lo;
    int hi;
    double frac;
};

std::vector<Tap> bilinear_taps(int src, int dst) {
    std::vector<Tap> taps(dst);
    const double scale = static_cast<double>(src) / dst;
    for (int i = 0; i < dst; ++i) {
        const double x = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(src - 1));
        const int lo = static_cast<int>(std::floor(x));
        taps[i] = {lo, std::min(lo + 1, src - 1), x - lo};
    }
    return taps;
}

int nearest_index(int i, int src, int dst) {
    const auto x = static_cast<int>(std::floor((i + 0.5) * src / dst));
    return std::clamp(x, 0, src - 1);
}

}  // namespace

Field resize_bilinear(const Field& field, int height, int width) {
    if (height < 1 || width < 1) {
        throw InvalidInput("resize target must be positive");
    }
    if (field.height() == height && field.width() == width) {
        return field;
    }
    const auto rows = bilinear_taps(field.height(), height);
    const auto cols = bilinear_taps(field.width(), width);
    Field out(height, width, field.channels());
    for (int c = 0; c < field.channels(); ++c) {
        for (int r = 0; r < height; ++r) {
            const Tap& tr = rows[r];
            for (int q = 0; q < width; ++q) {
                const Tap& tc = cols[q];
                const double top = std::lerp(field.at(c, tr.lo, tc.lo), field.at(c, tr.lo, tc.hi), tc.frac);
                const double bottom = std::lerp(field.at(c, tr.hi, tc.lo), field.at(c, tr.hi, tc.hi), tc.frac);
                out.at(c, r, q) = std::lerp(top, bottom, tr.frac);
            }
        }
    }
    return out;
}

Image resize_bilinear(const Image& image, int height, int width) {
    return clamp_to_image(resize_bilinear(image.field(), height, width));
}

CategoryMap resize_nearest(const CategoryMap& labels, int height, int width) {
    if (height < 1 || width < 1) {
        throw InvalidInput("resize target must be positive");
    }
    CategoryMap out{height, width, labels.classes, {}};
    out.labels.resize(static_cast<std::size_t>(height) * width);
    for (int r = 0; r < height; ++r) {
        const int sr = nearest_index(r, labels.height, height);
        for (int c = 0; c < width; ++c) {
            out.labels[static_cast<std::size_t>(r) * width + c] = labels.at(sr, nearest_index(c, labels.width, width));
        }
    }
    return out;
}

Image dihedral_transform(const Image& image, int op) {
    if (op < 0 || op > 7) {
        throw InvalidInput("dihedral op must be in [0, 8)");
    }
    const int turns = op % 4;
    const bool flip = op >= 4;
    const int h = image.height();
    const int w = image.width();
    const int oh = turns % 2 ? w : h;
    const int ow = turns % 2 ? h : w;
    Field out(oh, ow, image.channels());
    for (int c = 0; c < image.channels(); ++c) {
        for (int r = 0; r < h; ++r) {
            for (int q = 0; q < w; ++q) {
                const int fq = flip ? w - 1 - q : q;
                int tr = r;
                int tq = fq;
                switch (turns) {
                    case 1:
                        tr = w - 1 - fq;
                        tq = r;
                        break;
                    case 2:
                        tr = h - 1 - r;
                        tq = w - 1 - fq;
                        break;
                    case 3:
                        tr = fq;
                        tq = h - 1 - r;
                        break;
                    default:
                        break;
                }
                out.at(c, tr, tq) = image.at(c, r, q);
            }
        }
    }
    return Image(std::move(out));
}

}  // namespace freqaug
