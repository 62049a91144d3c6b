#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "freqaug/field.hpp"

namespace freqaug {

using Complex = std::complex<double>;

enum class SpectrumLayout {
    natural,   // DC at (0, 0)
    centered,  // DC at (floor(M/2), floor(N/2))
};

/// Per-channel complex H x W spectra, planar like Field.
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(int height, int width, int channels, SpectrumLayout layout);

    int height() const { return height_; }
    int width() const { return width_; }
    int channels() const { return channels_; }
    SpectrumLayout layout() const { return layout_; }
    std::size_t plane_size() const { return static_cast<std::size_t>(height_) * width_; }

    Complex& at(int c, int u, int v) { return data_[index(c, u, v)]; }
    const Complex& at(int c, int u, int v) const { return data_[index(c, u, v)]; }

    std::span<Complex> plane(int c) { return {data_.data() + c * plane_size(), plane_size()}; }
    std::span<const Complex> plane(int c) const { return {data_.data() + c * plane_size(), plane_size()}; }
    std::span<const Complex> values() const { return data_; }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::size_t index(int c, int u, int v) const {
        return (static_cast<std::size_t>(c) * height_ + u) * width_ + v;
    }

    int height_ = 0;
    int width_ = 0;
    int channels_ = 0;
    SpectrumLayout layout_ = SpectrumLayout::natural;
    std::vector<Complex> data_;
};

/// In-place 1D DFT of a fixed length. Powers of two use an iterative radix-2
/// kernel; every other length goes through Bluestein's chirp-z reduction onto
/// a power-of-two convolution. Immutable after construction.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(FftPlan&&) noexcept;
    FftPlan& operator=(FftPlan&&) noexcept;

    std::size_t size() const { return n_; }

    /// X[k] = sum_j x[j] exp(-2 pi i jk/n)
    void forward(std::span<Complex> data) const;
    /// Unscaled: x[j] = sum_k X[k] exp(+2 pi i jk/n)
    void inverse(std::span<Complex> data) const;

    /// Transforms every column of a row-major n x `batch` array.
    void forward_columns(std::span<Complex> data, std::size_t batch) const;
    void inverse_columns(std::span<Complex> data, std::size_t batch) const;

private:
    struct Bluestein;

    void radix2(std::span<Complex> data) const;
    void bluestein(std::span<Complex> data) const;
    void radix2_columns(std::span<Complex> data, std::size_t batch) const;

    std::size_t n_ = 0;
    std::vector<Complex> twiddles_;  // exp(-2 pi i j/n), j < n/2 (radix-2 only)
    std::vector<std::size_t> bitrev_;
    std::unique_ptr<Bluestein> chirp_;
};

/// Unnormalized forward 2D DFT of each channel, returned in centered layout.
Spectrum dft2(const Field& field);
Spectrum dft2(const Image& image);

struct InverseResult {
    Field real;
    double max_imag = 0.0;  // largest |imag| discarded, a realness diagnostic
};

/// Inverse 2D DFT scaled by 1/(MN). Accepts either layout.
InverseResult idft2(const Spectrum& spectrum);

/// Relabel natural -> centered. A centered input is returned unchanged.
Spectrum shift_center(const Spectrum& spectrum);
/// Relabel centered -> natural. A natural input is returned unchanged.
Spectrum unshift_center(const Spectrum& spectrum);

/// Index of bin `u` of an axis of length n after centering.
inline int centered_index(int u, int n) { return (u + n / 2) % n; }

}  // namespace freqaug
