#pragma once

#include <cstdint>

#include "freqaug/field.hpp"
#include "freqaug/losses.hpp"

namespace freqaug {

struct SyntheticSample {
    Image image;         // RGB
    CategoryMap label;   // 1 on vessel pixels
};

/// Fundus-like test image: a vignetted orange disc on black with a bright
/// optic disc and dark branching vessels, plus mild seeded noise.
SyntheticSample synthetic_fundus(int height, int width, std::uint64_t seed);

}  // namespace freqaug
