#include "freqaug/blending.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freqaug/error.hpp"

namespace freqaug {

namespace {

void check_extent(int height, int width) {
    if (height < 1 || width < 1) {
        throw InvalidInput("mask extent must be positive");
    }
}

}  // namespace

const char* to_string(MaskKind kind) {
    switch (kind) {
        case MaskKind::continuous:
            return "continuous";
        case MaskKind::patch:
            return "patch";
        case MaskKind::grid:
            return "grid";
    }
    return "?";
}

MaskKind mask_kind_from_string(const std::string& name) {
    if (name == "continuous") {
        return MaskKind::continuous;
    }
    if (name == "patch") {
        return MaskKind::patch;
    }
    if (name == "grid") {
        return MaskKind::grid;
    }
    throw ConfigError("unknown mask kind '" + name + "'");
}

BlendMask continuous_mask(int height, int width, MaskCenter center) {
    check_extent(height, width);
    if (center.row < 0 || center.row >= height || center.col < 0 || center.col >= width) {
        std::ostringstream msg;
        msg << "mask center (" << center.col << ", " << center.row << ") outside " << width << "x" << height;
        throw InvalidInput(msg.str());
    }
    const auto dist = [&](int row, int col) {
        const double dr = row - center.row;
        const double dc = col - center.col;
        return std::sqrt(dr * dr + dc * dc);
    };
    const double d_max =
        std::max({dist(0, 0), dist(0, width - 1), dist(height - 1, 0), dist(height - 1, width - 1)});

    BlendMask mask{height, width, MaskKind::continuous, center, {}};
    mask.values.resize(static_cast<std::size_t>(height) * width, 0.0);
    if (d_max == 0.0) {
        return mask;  // 1x1 extent
    }
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            mask.values[static_cast<std::size_t>(row) * width + col] = dist(row, col) / d_max;
        }
    }
    return mask;
}

MaskCenter sample_center(RngStream& rng, int height, int width) {
    check_extent(height, width);
    MaskCenter center;
    center.col = rng.uniform_int(0, width - 1);
    center.row = rng.uniform_int(0, height - 1);
    return center;
}

BlendMask patch_mask(int height, int width, PatchRect rect) {
    check_extent(height, width);
    if (rect.height < 1 || rect.width < 1 || rect.top < 0 || rect.left < 0 || rect.top + rect.height > height ||
        rect.left + rect.width > width) {
        throw InvalidInput("patch rectangle outside the mask extent");
    }
    BlendMask mask{height, width, MaskKind::patch, rect, {}};
    mask.values.assign(static_cast<std::size_t>(height) * width, 0.0);
    for (int row = rect.top; row < rect.top + rect.height; ++row) {
        std::fill_n(mask.values.begin() + static_cast<std::ptrdiff_t>(row) * width + rect.left, rect.width, 1.0);
    }
    return mask;
}

namespace {

PatchRect sample_patch_rect(RngStream& rng, int height, int width, PatchArea area) {
    if (!(area.min_ratio > 0.0 && area.min_ratio <= area.max_ratio && area.max_ratio <= 1.0)) {
        throw ConfigError("patch area ratios must satisfy 0 < min <= max <= 1");
    }
    const double ratio = rng.uniform(area.min_ratio, area.max_ratio);
    const double side = std::sqrt(ratio);
    PatchRect rect;
    rect.height = std::clamp(static_cast<int>(std::lround(height * side)), 1, height);
    rect.width = std::clamp(static_cast<int>(std::lround(width * side)), 1, width);
    rect.top = rng.uniform_int(0, height - rect.height);
    rect.left = rng.uniform_int(0, width - rect.width);
    return rect;
}

}  // namespace

BlendMask patch_mask(int height, int width, RngStream& rng, PatchArea area) {
    check_extent(height, width);
    return patch_mask(height, width, sample_patch_rect(rng, height, width, area));
}

BlendMask grid_mask(int height, int width, int cell) {
    check_extent(height, width);
    if (cell < 1) {
        throw InvalidInput("grid cell must be at least 1 pixel");
    }
    if (cell > height || cell > width) {
        std::ostringstream msg;
        msg << "grid cell " << cell << " larger than " << width << "x" << height << " image";
        throw InvalidInput(msg.str());
    }
    BlendMask mask{height, width, MaskKind::grid, GridCell{cell}, {}};
    mask.values.resize(static_cast<std::size_t>(height) * width);
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            mask.values[static_cast<std::size_t>(row) * width + col] = ((row / cell + col / cell) % 2 == 0) ? 1.0 : 0.0;
        }
    }
    return mask;
}

int default_grid_cell(int height, int width) { return (std::min(height, width) + 7) / 8; }

MaskParams sample_mask_params(RngStream& rng, int height, int width, const MaskSampling& sampling) {
    switch (sampling.kind) {
        case MaskKind::continuous:
            return sample_center(rng, height, width);
        case MaskKind::patch:
            return sample_patch_rect(rng, height, width, sampling.patch);
        case MaskKind::grid:
            return GridCell{sampling.grid_cell > 0 ? sampling.grid_cell : default_grid_cell(height, width)};
    }
    throw ConfigError("unknown mask kind");
}

BlendMask make_mask(int height, int width, const MaskParams& params) {
    return std::visit(
        [&](const auto& p) -> BlendMask {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, MaskCenter>) {
                return continuous_mask(height, width, p);
            } else if constexpr (std::is_same_v<T, PatchRect>) {
                return patch_mask(height, width, p);
            } else {
                return grid_mask(height, width, p.size);
            }
        },
        params);
}

BlendedSample blend(const FilteredSample& x_m, const FilteredSample& x_n, const BlendMask& mask) {
    const Field& a = x_m.image.field();
    const Field& b = x_n.image.field();
    if (!a.same_shape(b)) {
        throw InvalidInput("blend operands differ in shape");
    }
    if (a.height() != mask.height || a.width() != mask.width) {
        throw InvalidInput("blend mask extent differs from the samples");
    }
    if (x_m.parent_id != x_n.parent_id) {
        throw HomologyError("blend operands come from different parents ('" + x_m.parent_id + "' vs '" +
                            x_n.parent_id + "')");
    }
    Field out(a.height(), a.width(), a.channels());
    for (int c = 0; c < a.channels(); ++c) {
        const auto pa = a.plane(c);
        const auto pb = b.plane(c);
        auto dst = out.plane(c);
        for (std::size_t i = 0; i < dst.size(); ++i) {
            dst[i] = std::lerp(pb[i], pa[i], mask.values[i]);
        }
    }
    return BlendedSample{Image(std::move(out)), x_m.parent_id};
}

}  // namespace freqaug
