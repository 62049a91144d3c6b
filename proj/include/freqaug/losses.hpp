#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "freqaug/field.hpp"

namespace freqaug {

inline constexpr double kLogClampEpsilon = 1e-7;
inline constexpr double kProbabilityTolerance = 1e-6;

/// Per-pixel class indices; the one-hot target is implied.
struct CategoryMap {
    int height = 0;
    int width = 0;
    int classes = 2;
    std::vector<int> labels;  // row-major, each in [0, classes)

    int at(int row, int col) const { return labels[static_cast<std::size_t>(row) * width + col]; }
};

/// Decodes a (classes, H, W) one-hot tensor; throws InvalidInput unless every
/// pixel is exactly one-hot.
CategoryMap category_map_from_one_hot(const Field& one_hot);

struct PredictionBatch {
    std::vector<Field> saliency;      // K signed fields, same shape as the pretext target
    std::vector<Field> segmentation;  // K fields with one channel per class, probabilities
};

struct TargetBatch {
    Field pretext;  // psi(x) of the source image, shared by all K views
    CategoryMap labels;
};

/// Mean over views and elements of (psi - phi_k)^2.
double loss_self(std::span<const Field> views, const Field& target);
double loss_self(const PredictionBatch& preds, const TargetBatch& targets);

/// Mean over views and pixels of -sum_c y^c log(max(p^c, eps)).
double loss_seg(std::span<const Field> probabilities, const CategoryMap& labels, double eps = kLogClampEpsilon);
double loss_seg(const PredictionBatch& preds, const TargetBatch& targets, double eps = kLogClampEpsilon);

/// l_sel + alpha * l_seg; negative alpha is a ConfigError.
double loss_total(double l_sel, double l_seg, double alpha);

struct BinaryMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> values;  // 0 or 1, row-major
};

/// Pixels whose most probable class is not class 0.
BinaryMask foreground_from_probabilities(const Field& probabilities);
BinaryMask foreground_from_labels(const CategoryMap& labels);

struct OverlapScores {
    double dice = 0.0;
    double iou = 0.0;
};

/// Dice 2|A&B|/(|A|+|B|) and IoU |A&B|/|A|B|; (1, 1) when both masks are empty.
OverlapScores dice_and_iou(const BinaryMask& pred, const BinaryMask& truth);

}  // namespace freqaug
