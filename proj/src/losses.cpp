#include "freqaug/losses.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freqaug/error.hpp"

namespace freqaug {

CategoryMap category_map_from_one_hot(const Field& one_hot) {
    CategoryMap map{one_hot.height(), one_hot.width(), one_hot.channels(), {}};
    map.labels.resize(one_hot.plane_size());
    for (int row = 0; row < one_hot.height(); ++row) {
        for (int col = 0; col < one_hot.width(); ++col) {
            int hot = -1;
            for (int c = 0; c < one_hot.channels(); ++c) {
                const double v = one_hot.at(c, row, col);
                if (v == 1.0 && hot < 0) {
                    hot = c;
                } else if (v != 0.0) {
                    hot = -2;
                    break;
                }
            }
            if (hot < 0) {
                std::ostringstream msg;
                msg << "label at (" << row << ", " << col << ") is not one-hot";
                throw InvalidInput(msg.str());
            }
            map.labels[static_cast<std::size_t>(row) * one_hot.width() + col] = hot;
        }
    }
    return map;
}

double loss_self(std::span<const Field> views, const Field& target) {
    if (views.empty()) {
        throw InvalidInput("loss_self needs at least one view");
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (const Field& view : views) {
        if (!view.same_shape(target)) {
            throw InvalidInput("saliency prediction shape differs from the pretext target");
        }
        const auto p = view.values();
        const auto t = target.values();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double d = t[i] - p[i];
            sum += d * d;
        }
        count += p.size();
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double loss_self(const PredictionBatch& preds, const TargetBatch& targets) {
    return loss_self(preds.saliency, targets.pretext);
}

namespace {

void check_probabilities(const Field& probs, const CategoryMap& labels) {
    if (probs.height() != labels.height || probs.width() != labels.width) {
        throw InvalidInput("segmentation prediction extent differs from the labels");
    }
    if (probs.channels() != labels.classes) {
        std::ostringstream msg;
        msg << "segmentation prediction has " << probs.channels() << " classes, labels have " << labels.classes;
        throw InvalidInput(msg.str());
    }
    for (int row = 0; row < probs.height(); ++row) {
        for (int col = 0; col < probs.width(); ++col) {
            double total = 0.0;
            for (int c = 0; c < probs.channels(); ++c) {
                const double p = probs.at(c, row, col);
                if (!(p >= -kProbabilityTolerance && p <= 1.0 + kProbabilityTolerance)) {
                    std::ostringstream msg;
                    msg << "probability " << p << " at (" << row << ", " << col << ") outside [0,1]";
                    throw InvalidInput(msg.str());
                }
                total += p;
            }
            if (std::abs(total - 1.0) > kProbabilityTolerance) {
                std::ostringstream msg;
                msg << "class probabilities at (" << row << ", " << col << ") sum to " << total;
                throw InvalidInput(msg.str());
            }
        }
    }
}

}  // namespace

double loss_seg(std::span<const Field> probabilities, const CategoryMap& labels, double eps) {
    if (probabilities.empty()) {
        throw InvalidInput("loss_seg needs at least one view");
    }
    if (labels.labels.size() != static_cast<std::size_t>(labels.height) * labels.width) {
        throw InvalidInput("label map size does not match its extent");
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (const Field& probs : probabilities) {
        check_probabilities(probs, labels);
        for (int row = 0; row < labels.height; ++row) {
            for (int col = 0; col < labels.width; ++col) {
                const int cls = labels.at(row, col);
                if (cls < 0 || cls >= labels.classes) {
                    throw InvalidInput("label index outside the class range");
                }
                // Only the true class carries weight in the one-hot sum.
                sum -= std::log(std::max(probs.at(cls, row, col), eps));
                ++count;
            }
        }
    }
    return sum / static_cast<double>(count);
}

double loss_seg(const PredictionBatch& preds, const TargetBatch& targets, double eps) {
    return loss_seg(preds.segmentation, targets.labels, eps);
}

double loss_total(double l_sel, double l_seg, double alpha) {
    if (!(alpha >= 0.0)) {
        throw ConfigError("alpha must be nonnegative");
    }
    return l_sel + alpha * l_seg;
}

BinaryMask foreground_from_probabilities(const Field& probabilities) {
    BinaryMask mask{probabilities.height(), probabilities.width(), {}};
    mask.values.resize(probabilities.plane_size());
    for (int row = 0; row < mask.height; ++row) {
        for (int col = 0; col < mask.width; ++col) {
            int best = 0;
            for (int c = 1; c < probabilities.channels(); ++c) {
                if (probabilities.at(c, row, col) > probabilities.at(best, row, col)) {
                    best = c;
                }
            }
            mask.values[static_cast<std::size_t>(row) * mask.width + col] = best != 0 ? 1 : 0;
        }
    }
    return mask;
}

BinaryMask foreground_from_labels(const CategoryMap& labels) {
    BinaryMask mask{labels.height, labels.width, {}};
    mask.values.resize(labels.labels.size());
    std::transform(labels.labels.begin(), labels.labels.end(), mask.values.begin(),
                   [](int cls) { return static_cast<std::uint8_t>(cls != 0 ? 1 : 0); });
    return mask;
}

OverlapScores dice_and_iou(const BinaryMask& pred, const BinaryMask& truth) {
    if (pred.height != truth.height || pred.width != truth.width || pred.values.size() != truth.values.size()) {
        throw InvalidInput("dice/iou masks differ in shape");
    }
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t both = 0;
    for (std::size_t i = 0; i < pred.values.size(); ++i) {
        const bool p = pred.values[i] != 0;
        const bool t = truth.values[i] != 0;
        a += p;
        b += t;
        both += p && t;
    }
    if (a + b == 0) {
        return {1.0, 1.0};
    }
    const double inter = static_cast<double>(both);
    return {2.0 * inter / static_cast<double>(a + b), inter / static_cast<double>(a + b - both)};
}

}  // namespace freqaug
