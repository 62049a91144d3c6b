#include "freqaug/diversity.hpp"

#include <cmath>

#include "freqaug/error.hpp"
#include "freqaug/fft.hpp"
#include "freqaug/geometry.hpp"
#include "freqaug/pipeline.hpp"
#include "freqaug/rng.hpp"

namespace freqaug {

std::vector<Image> frequency_views(const Image& source, int k, std::uint64_t seed, const FilterSampling& filter,
                                   const MaskSampling& mask) {
    const Spectrum spectrum = dft2(source);
    std::vector<Image> views;
    for (int i = 0; i < k; ++i) {
        RngStream rng(view_substream(seed, 0, 0, i));
        const ViewParams params =
            sample_view_params(rng, source.channels(), source.height(), source.width(), filter, mask);
        views.push_back(render_view(spectrum, "source", params).blended.image);
    }
    return views;
}

std::vector<Image> geometric_views(const Image& source, int k, std::uint64_t seed) {
    RngStream rng(derive_seed(seed, {0x67656f6d}));
    const bool square = source.height() == source.width();
    std::vector<Image> views;
    for (int i = 0; i < k; ++i) {
        int op = rng.uniform_int(0, square ? 7 : 3);
        if (!square) {
            op = (op % 2) * 2 + (op / 2) * 4;  // {0, 2, 4, 6}
        }
        views.push_back(dihedral_transform(source, op));
    }
    return views;
}

double mean_pairwise_l2(std::span<const Image> views) {
    if (views.size() < 2) {
        throw InvalidInput("pairwise distance needs at least two views");
    }
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < views.size(); ++a) {
        for (std::size_t b = a + 1; b < views.size(); ++b) {
            const Field& fa = views[a].field();
            const Field& fb = views[b].field();
            if (!fa.same_shape(fb)) {
                throw InvalidInput("views differ in shape");
            }
            double sq = 0.0;
            for (std::size_t i = 0; i < fa.size(); ++i) {
                const double d = fa.values()[i] - fb.values()[i];
                sq += d * d;
            }
            total += std::sqrt(sq);
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

}  // namespace freqaug
