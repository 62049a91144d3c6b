#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "freqaug/blending.hpp"
#include "freqaug/field.hpp"
#include "freqaug/filters.hpp"

namespace freqaug {

/// k filter-and-blend views of one source, each from its own substream of `seed`.
std::vector<Image> frequency_views(const Image& source, int k, std::uint64_t seed, const FilterSampling& filter = {},
                                   const MaskSampling& mask = {});

/// k flip/rotation views drawn uniformly from the symmetries that keep the
/// source's extent (all eight for square images, four otherwise).
std::vector<Image> geometric_views(const Image& source, int k, std::uint64_t seed);

/// Mean Euclidean distance over all unordered pairs of views.
double mean_pairwise_l2(std::span<const Image> views);

}  // namespace freqaug
