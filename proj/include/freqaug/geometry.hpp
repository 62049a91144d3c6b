#pragma once

#include "freqaug/field.hpp"
#include "freqaug/losses.hpp"

namespace freqaug {

/// Bilinear resampling with half-pixel centers and clamped borders.
Field resize_bilinear(const Field& field, int height, int width);
Image resize_bilinear(const Image& image, int height, int width);

/// Nearest-neighbour resampling for label maps (half-pixel centers).
CategoryMap resize_nearest(const CategoryMap& labels, int height, int width);

/// One of the eight symmetries of the square: op = rotation (0..3 quarter
/// turns counter-clockwise) + 4 * horizontal flip applied first. Odd rotations
/// swap height and width.
Image dihedral_transform(const Image& image, int op);

}  // namespace freqaug
