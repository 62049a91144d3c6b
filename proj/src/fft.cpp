#include "freqaug/fft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "freqaug/error.hpp"

namespace freqaug {

Spectrum::Spectrum(int height, int width, int channels, SpectrumLayout layout)
    : height_(height), width_(width), channels_(channels), layout_(layout) {
    if (height < 0 || width < 0 || channels < 0) {
        throw InvalidInput("spectrum dimensions must be nonnegative");
    }
    data_.assign(static_cast<std::size_t>(height) * width * channels, Complex{});
}

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline Complex mul(const Complex& a, const Complex& b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// exp(-2 pi i num/den) from the reduced fraction.
Complex unit_root(std::size_t num, std::size_t den) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(num % den) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

struct FftPlan::Bluestein {
    std::size_t padded = 0;
    std::vector<Complex> chirp;           // exp(-i pi k^2 / n), k < n
    std::vector<Complex> kernel_spectrum;  // FFT of the conjugate chirp, length padded
    FftPlan inner;

    explicit Bluestein(std::size_t n) : padded(std::bit_ceil(2 * n - 1)), inner(padded) {
        chirp.resize(n);
        const std::size_t period = 2 * n;
        for (std::size_t k = 0; k < n; ++k) {
            // k^2 mod 2n keeps the angle small; exp(-i pi m/n) = exp(-2 pi i m/(2n)).
            const std::size_t sq = static_cast<std::size_t>((static_cast<unsigned long long>(k) * k) % period);
            chirp[k] = unit_root(sq, period);
        }
        kernel_spectrum.assign(padded, Complex{});
        kernel_spectrum[0] = std::conj(chirp[0]);
        for (std::size_t k = 1; k < n; ++k) {
            kernel_spectrum[k] = std::conj(chirp[k]);
            kernel_spectrum[padded - k] = std::conj(chirp[k]);
        }
        inner.forward(kernel_spectrum);
    }
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0) {
        throw InvalidInput("FFT length must be positive");
    }
    if (is_power_of_two(n)) {
        twiddles_.resize(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            twiddles_[j] = unit_root(j, n);
        }
        const int bits = std::countr_zero(n);
        bitrev_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (int b = 0; b < bits; ++b) {
                r |= ((i >> b) & 1u) << (bits - 1 - b);
            }
            bitrev_[i] = r;
        }
    } else {
        chirp_ = std::make_unique<Bluestein>(n);
    }
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<Complex> data) const {
    if (data.size() != n_) {
        throw InvalidInput("FFT buffer length does not match plan");
    }
    if (n_ == 1) {
        return;
    }
    if (chirp_) {
        bluestein(data);
    } else {
        radix2(data);
    }
}

void FftPlan::inverse(std::span<Complex> data) const {
    for (auto& z : data) {
        z = std::conj(z);
    }
    forward(data);
    for (auto& z : data) {
        z = std::conj(z);
    }
}

void FftPlan::radix2(std::span<Complex> data) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t r = bitrev_[i];
        if (i < r) {
            std::swap(data[i], data[r]);
        }
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n_ / len;
        for (std::size_t j = 0; j < half; ++j) {
            const Complex w = twiddles_[j * stride];
            for (std::size_t start = j; start < n_; start += len) {
                const Complex t = mul(w, data[start + half]);
                const Complex u = data[start];
                data[start] = u + t;
                data[start + half] = u - t;
            }
        }
    }
}

void FftPlan::forward_columns(std::span<Complex> data, std::size_t batch) const {
    if (data.size() != n_ * batch) {
        throw InvalidInput("FFT buffer length does not match plan");
    }
    if (n_ == 1) {
        return;
    }
    if (!chirp_) {
        radix2_columns(data, batch);
        return;
    }
    std::vector<Complex> column(n_);
    for (std::size_t c = 0; c < batch; ++c) {
        for (std::size_t r = 0; r < n_; ++r) {
            column[r] = data[r * batch + c];
        }
        bluestein(column);
        for (std::size_t r = 0; r < n_; ++r) {
            data[r * batch + c] = column[r];
        }
    }
}

void FftPlan::inverse_columns(std::span<Complex> data, std::size_t batch) const {
    for (auto& z : data) {
        z = std::conj(z);
    }
    forward_columns(data, batch);
    for (auto& z : data) {
        z = std::conj(z);
    }
}

// Same butterflies as radix2, applied to whole rows at once.
void FftPlan::radix2_columns(std::span<Complex> data, std::size_t batch) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t r = bitrev_[i];
        if (i < r) {
            std::swap_ranges(data.begin() + i * batch, data.begin() + (i + 1) * batch, data.begin() + r * batch);
        }
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n_ / len;
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const Complex w = twiddles_[j * stride];
                Complex* a = data.data() + (start + j) * batch;
                Complex* b = data.data() + (start + j + half) * batch;
                for (std::size_t v = 0; v < batch; ++v) {
                    const Complex t = mul(w, b[v]);
                    const Complex u = a[v];
                    a[v] = u + t;
                    b[v] = u - t;
                }
            }
        }
    }
}

void FftPlan::bluestein(std::span<Complex> data) const {
    const Bluestein& b = *chirp_;
    std::vector<Complex> work(b.padded, Complex{});
    for (std::size_t k = 0; k < n_; ++k) {
        work[k] = mul(data[k], b.chirp[k]);
    }
    b.inner.forward(work);
    for (std::size_t k = 0; k < b.padded; ++k) {
        work[k] = mul(work[k], b.kernel_spectrum[k]);
    }
    b.inner.inverse(work);
    const double scale = 1.0 / static_cast<double>(b.padded);
    for (std::size_t k = 0; k < n_; ++k) {
        data[k] = mul(work[k] * scale, b.chirp[k]);
    }
}

namespace {

void check_extent(int height, int width) {
    if (height < 2 || width < 2) {
        std::ostringstream msg;
        msg << "2D transform needs at least 2x2, got " << height << "x" << width;
        throw InvalidInput(msg.str());
    }
}

void transform_rows(std::span<Complex> plane, int height, int width, const FftPlan& rows) {
    for (int r = 0; r < height; ++r) {
        rows.forward(plane.subspan(static_cast<std::size_t>(r) * width, width));
    }
}

// dst[(u + dr) % h][(v + dc) % w] = src[u][v], one or two block copies per row.
void rotated_copy(std::span<const Complex> src, std::span<Complex> dst, int h, int w, int dr, int dc) {
    for (int u = 0; u < h; ++u) {
        const Complex* in = src.data() + static_cast<std::size_t>(u) * w;
        Complex* out = dst.data() + static_cast<std::size_t>((u + dr) % h) * w;
        std::copy(in, in + (w - dc), out + dc);
        std::copy(in + (w - dc), in + w, out);
    }
}

Spectrum relabel(const Spectrum& in, SpectrumLayout to) {
    const int h = in.height();
    const int w = in.width();
    Spectrum out(h, w, in.channels(), to);
    // centered = (natural + floor(n/2)) mod n; the inverse shifts by n - floor(n/2).
    const int dr = to == SpectrumLayout::centered ? h / 2 : h - h / 2;
    const int dc = to == SpectrumLayout::centered ? w / 2 : w - w / 2;
    for (int c = 0; c < in.channels(); ++c) {
        rotated_copy(in.plane(c), out.plane(c), h, w, dr, dc);
    }
    return out;
}

}  // namespace

Spectrum shift_center(const Spectrum& spectrum) {
    if (spectrum.layout() == SpectrumLayout::centered) {
        return spectrum;
    }
    return relabel(spectrum, SpectrumLayout::centered);
}

Spectrum unshift_center(const Spectrum& spectrum) {
    if (spectrum.layout() == SpectrumLayout::natural) {
        return spectrum;
    }
    return relabel(spectrum, SpectrumLayout::natural);
}

Spectrum dft2(const Field& field) {
    check_extent(field.height(), field.width());
    const int h = field.height();
    const int w = field.width();
    const FftPlan rows(w);
    const FftPlan cols(h);
    Spectrum centered(h, w, field.channels(), SpectrumLayout::centered);
    std::vector<Complex> work(static_cast<std::size_t>(h) * w);
    for (int c = 0; c < field.channels(); ++c) {
        auto src = field.plane(c);
        for (std::size_t i = 0; i < work.size(); ++i) {
            work[i] = Complex(src[i], 0.0);
        }
        transform_rows(work, h, w, rows);
        cols.forward_columns(work, w);
        rotated_copy(work, centered.plane(c), h, w, h / 2, w / 2);
    }
    return centered;
}

Spectrum dft2(const Image& image) { return dft2(image.field()); }

InverseResult idft2(const Spectrum& spectrum) {
    check_extent(spectrum.height(), spectrum.width());
    const int h = spectrum.height();
    const int w = spectrum.width();
    const bool centered = spectrum.layout() == SpectrumLayout::centered;
    const FftPlan rows(w);
    const FftPlan cols(h);
    const double scale = 1.0 / (static_cast<double>(h) * w);

    InverseResult result{Field(h, w, spectrum.channels()), 0.0};
    std::vector<Complex> work(static_cast<std::size_t>(h) * w);
    for (int c = 0; c < spectrum.channels(); ++c) {
        if (centered) {
            rotated_copy(spectrum.plane(c), work, h, w, h - h / 2, w - w / 2);
        } else {
            std::copy(spectrum.plane(c).begin(), spectrum.plane(c).end(), work.begin());
        }
        // inverse(X) = conj(forward(conj(X))); the outer conj only flips the
        // sign of the discarded imaginary part.
        for (auto& z : work) {
            z = std::conj(z);
        }
        transform_rows(work, h, w, rows);
        cols.forward_columns(work, w);
        auto dst = result.real.plane(c);
        double max_imag = result.max_imag;
        for (std::size_t i = 0; i < work.size(); ++i) {
            dst[i] = work[i].real() * scale;
            max_imag = std::max(max_imag, std::abs(work[i].imag() * scale));
        }
        result.max_imag = max_imag;
    }
    return result;
}

}  // namespace freqaug
