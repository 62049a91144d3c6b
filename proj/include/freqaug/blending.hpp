#pragma once

#include <string>
#include <variant>
#include <vector>

#include "freqaug/field.hpp"
#include "freqaug/filters.hpp"
#include "freqaug/rng.hpp"

namespace freqaug {

enum class MaskKind { continuous, patch, grid };

const char* to_string(MaskKind kind);
MaskKind mask_kind_from_string(const std::string& name);

/// Distance-map center in pixel coordinates: col is c_w, row is c_h.
struct MaskCenter {
    int col = 0;
    int row = 0;
    friend bool operator==(const MaskCenter&, const MaskCenter&) = default;
};

struct PatchRect {
    int top = 0;
    int left = 0;
    int height = 0;
    int width = 0;
    friend bool operator==(const PatchRect&, const PatchRect&) = default;
};

struct GridCell {
    int size = 1;
    friend bool operator==(const GridCell&, const GridCell&) = default;
};

using MaskParams = std::variant<MaskCenter, PatchRect, GridCell>;

struct BlendMask {
    int height = 0;
    int width = 0;
    MaskKind kind = MaskKind::continuous;
    MaskParams params;
    std::vector<double> values;  // row-major, each in [0,1]

    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
};

/// M(a,b) = |(a,b) - center| / D_max, D_max the farthest corner from the center.
BlendMask continuous_mask(int height, int width, MaskCenter center);

/// Uniform over all pixel coordinates.
MaskCenter sample_center(RngStream& rng, int height, int width);

struct PatchArea {
    double min_ratio = 0.25;
    double max_ratio = 0.75;
};

/// Rectangle of ones on zeros. Area ratio r ~ U[min, max); sides are
/// round(H * sqrt(r)) by round(W * sqrt(r)) clamped to [1, extent]; top-left
/// corner uniform over valid placements. Draw order: ratio, top, left.
BlendMask patch_mask(int height, int width, RngStream& rng, PatchArea area = {});
BlendMask patch_mask(int height, int width, PatchRect rect);

/// Checkerboard with the top-left cell set to 1.
BlendMask grid_mask(int height, int width, int cell);

/// ceil(min(H, W) / 8)
int default_grid_cell(int height, int width);

struct MaskSampling {
    MaskKind kind = MaskKind::continuous;
    PatchArea patch;
    int grid_cell = 0;  // 0 selects default_grid_cell
};

/// Draws the random parameters of a mask (none for grid).
MaskParams sample_mask_params(RngStream& rng, int height, int width, const MaskSampling& sampling);

/// Rebuilds a mask from recorded parameters.
BlendMask make_mask(int height, int width, const MaskParams& params);

struct BlendedSample {
    Image image;
    std::string parent_id;
};

/// x = M * x_m + (1 - M) * x_n per channel. Both samples must come from the
/// same parent image (HomologyError otherwise) and share the mask's extent.
BlendedSample blend(const FilteredSample& x_m, const FilteredSample& x_n, const BlendMask& mask);

}  // namespace freqaug
