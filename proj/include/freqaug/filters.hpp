#pragma once

#include <string>
#include <vector>

#include "freqaug/fft.hpp"
#include "freqaug/field.hpp"
#include "freqaug/rng.hpp"

namespace freqaug {

/// Largest validated cutoff, as a fraction of the spectrum radius.
inline constexpr double kMaxCutoffFraction = 0.04;
inline constexpr int kMaxOrder = 3;

struct ButterworthParams {
    double d0_fraction = 0.0;  // cutoff D0 = d0_fraction * radius
    int order = 1;             // ignored by the ideal filter

    friend bool operator==(const ButterworthParams&, const ButterworthParams&) = default;
};

/// Throws InvalidInput unless 0 < d0_fraction <= 0.04 and order is 1, 2 or 3.
void validate(const ButterworthParams& params);

enum class FilterKind { ideal, butterworth };

const char* to_string(FilterKind kind);
FilterKind filter_kind_from_string(const std::string& name);

/// One entry per channel, or a single entry shared by every channel.
struct FilterSpec {
    FilterKind kind = FilterKind::butterworth;
    std::vector<ButterworthParams> per_channel;

    const ButterworthParams& for_channel(int c) const {
        return per_channel.size() == 1 ? per_channel.front() : per_channel[c];
    }

    friend bool operator==(const FilterSpec&, const FilterSpec&) = default;
};

/// Throws InvalidInput if it is empty, has invalid entries, or its
/// length is neither 1 nor `channels`.
void validate(const FilterSpec& spec, int channels);

/// Euclidean distance of every bin from the centered DC bin, plus the
/// spectrum radius min(M, N) / 2 that cutoff fractions are relative to.
class SpectrumGeometry {
public:
    SpectrumGeometry(int height, int width);

    int height() const { return height_; }
    int width() const { return width_; }
    double radius() const { return radius_; }
    double distance(int u, int v) const { return distances_[static_cast<std::size_t>(u) * width_ + v]; }
    const std::vector<double>& distances() const { return distances_; }

private:
    int height_;
    int width_;
    double radius_;
    std::vector<double> distances_;
};

/// High-pass Butterworth gain 1 / (1 + (D0/D)^(2n)), defined as 0 at D = 0.
double butterworth_response(double distance, double cutoff, int order);

/// 0 below the cutoff, 1 at or above it.
double ideal_response(double distance, double cutoff);

/// Gain for every bin of a centered spectrum.
std::vector<double> gain_field(const SpectrumGeometry& geometry, FilterKind kind, const ButterworthParams& params);

/// Multiplies each channel of a centered spectrum by its gain field.
Spectrum filter_spectrum(const Spectrum& spectrum, const FilterSpec& spec);

struct ChannelRange {
    double min = 0.0;  // before renormalization
    double max = 0.0;
    bool degenerate = false;  // flat after filtering; output channel is all zeros

    friend bool operator==(const ChannelRange&, const ChannelRange&) = default;
};

struct FilterReport {
    std::vector<ChannelRange> channels;
    double max_imag_residue = 0.0;

    bool any_degenerate() const;
};

/// Range below which a filtered channel counts as flat.
inline constexpr double kFlatChannelTolerance = 1e-10;

/// Per-channel min-max map to [0,1]; flat channels become zeros.
Image renormalize(const Field& field, FilterReport& report);

struct FilteredSample {
    Image image;
    FilterReport report;
    std::string parent_id;
};

/// dft2 -> gain -> idft2 -> per-channel min-max renormalization.
FilteredSample apply_filter(const Image& image, const FilterSpec& spec, std::string parent_id = {});

/// Same as above, starting from the image's centered spectrum so one forward
/// transform can feed many filtered variants. Bitwise identical results.
FilteredSample apply_filter(const Spectrum& spectrum, const FilterSpec& spec, std::string parent_id = {});

/// Filtered field before renormalization.
InverseResult filter_unnormalized(const Spectrum& spectrum, const FilterSpec& spec);

struct ParamRanges {
    double d0_min = 0.005;
    double d0_max = kMaxCutoffFraction;
    std::vector<int> orders{1, 2, 3};

    /// Throws ConfigError.
    void validate() const;
};

/// Sampling policy: channel-wise Butterworth by default; `shared` draws one
/// entry for all channels, and the ideal kind draws cutoffs only.
struct FilterSampling {
    ParamRanges ranges;
    FilterKind kind = FilterKind::butterworth;
    bool channel_wise = true;
};

/// Channel-wise Butterworth parameters. Draw order: channel 0 d0, channel 0
/// order, channel 1 d0, ... d0 ~ U[d0_min, d0_max), order uniform over the set.
FilterSpec sample_filter_spec(RngStream& rng, int channels, const ParamRanges& ranges);
FilterSpec sample_filter_spec(RngStream& rng, int channels, const FilterSampling& sampling);

}  // namespace freqaug
