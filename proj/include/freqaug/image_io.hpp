#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "freqaug/field.hpp"
#include "freqaug/losses.hpp"

namespace freqaug {

/// Decoded integer pixels, interleaved, alpha already dropped.
struct RawImage {
    int height = 0;
    int width = 0;
    int channels = 0;   // 1 (gray) or 3 (RGB)
    int bit_depth = 8;  // 8 or 16
    int max_value = 255;  // full-scale sample value (PNM may use less than 2^depth - 1)
    std::vector<std::uint16_t> samples;
};

/// PNG, BMP, PPM/PGM (binary or ASCII), 8- or 16-bit. Throws IoError when the
/// file cannot be opened and DataError when its content cannot be decoded.
RawImage read_raw_image(const std::filesystem::path& path);

/// True for extensions read_raw_image understands.
bool is_supported_image(const std::filesystem::path& path);

/// Integer samples divided by max_value.
Image to_unit_image(const RawImage& raw);
Image read_image(const std::filesystem::path& path);

/// First channel of the file as integer class indices; classes = max + 1 (at least 2).
/// Palette PNGs yield their palette indices.
CategoryMap read_label_map(const std::filesystem::path& path);

/// Rounds [0,1] values to the given depth (8 or 16). Throws IoError.
void write_png(const std::filesystem::path& path, const Image& image, int bit_depth = 8);
void write_png(const std::filesystem::path& path, const RawImage& raw);
void write_label_png(const std::filesystem::path& path, const CategoryMap& labels);

RawImage quantize(const Image& image, int bit_depth = 8);

}  // namespace freqaug
