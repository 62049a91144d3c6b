#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace freqaug {

/// Planar real tensor (channel-major, then row-major). No range constraint.
class Field {
public:
    Field() = default;
    Field(int height, int width, int channels, double fill = 0.0);

    int height() const { return height_; }
    int width() const { return width_; }
    int channels() const { return channels_; }
    std::size_t plane_size() const { return static_cast<std::size_t>(height_) * width_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& at(int c, int row, int col) { return data_[index(c, row, col)]; }
    double at(int c, int row, int col) const { return data_[index(c, row, col)]; }

    std::span<double> plane(int c) { return {data_.data() + c * plane_size(), plane_size()}; }
    std::span<const double> plane(int c) const { return {data_.data() + c * plane_size(), plane_size()}; }

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    bool same_shape(const Field& other) const {
        return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
    }
    bool same_extent(const Field& other) const { return height_ == other.height_ && width_ == other.width_; }

    friend bool operator==(const Field&, const Field&) = default;

private:
    std::size_t index(int c, int row, int col) const {
        return (static_cast<std::size_t>(c) * height_ + row) * width_ + col;
    }

    int height_ = 0;
    int width_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

/// A Field whose values all lie in [0,1] and whose extent is at least 2x2.
class Image {
public:
    Image() = default;
    /// Throws InvalidInput when the field violates the image invariants.
    explicit Image(Field field);

    const Field& field() const { return field_; }
    int height() const { return field_.height(); }
    int width() const { return field_.width(); }
    int channels() const { return field_.channels(); }
    double at(int c, int row, int col) const { return field_.at(c, row, col); }

    friend bool operator==(const Image&, const Image&) = default;

private:
    Field field_;
};

/// Clamps into [0,1] and wraps; for fields that are in range up to rounding.
Image clamp_to_image(Field field);

}  // namespace freqaug
