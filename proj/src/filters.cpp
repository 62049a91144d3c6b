#include "freqaug/filters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freqaug/error.hpp"

namespace freqaug {

void validate(const ButterworthParams& params) {
    if (!(params.d0_fraction > 0.0 && params.d0_fraction <= kMaxCutoffFraction)) {
        std::ostringstream msg;
        msg << "cutoff fraction " << params.d0_fraction << " outside (0, " << kMaxCutoffFraction << "]";
        throw InvalidInput(msg.str());
    }
    if (params.order < 1 || params.order > kMaxOrder) {
        std::ostringstream msg;
        msg << "filter order " << params.order << " outside {1, 2, 3}";
        throw InvalidInput(msg.str());
    }
}

const char* to_string(FilterKind kind) { return kind == FilterKind::ideal ? "ideal" : "butterworth"; }

FilterKind filter_kind_from_string(const std::string& name) {
    if (name == "ideal") {
        return FilterKind::ideal;
    }
    if (name == "butterworth") {
        return FilterKind::butterworth;
    }
    throw ConfigError("unknown filter kind '" + name + "'");
}

void validate(const FilterSpec& spec, int channels) {
    const auto n = static_cast<int>(spec.per_channel.size());
    if (n == 0) {
        throw InvalidInput("filter spec has no channel entries");
    }
    if (n != 1 && n != channels) {
        std::ostringstream msg;
        msg << "filter spec has " << n << " channel entries for a " << channels << "-channel image";
        throw InvalidInput(msg.str());
    }
    for (const auto& p : spec.per_channel) {
        if (spec.kind == FilterKind::ideal) {
            validate(ButterworthParams{p.d0_fraction, 1});
        } else {
            validate(p);
        }
    }
}

SpectrumGeometry::SpectrumGeometry(int height, int width)
    : height_(height), width_(width), radius_(std::min(height, width) / 2.0) {
    if (height < 2 || width < 2) {
        throw InvalidInput("spectrum geometry needs at least 2x2");
    }
    distances_.resize(static_cast<std::size_t>(height) * width);
    const int cu = height / 2;
    const int cv = width / 2;
    for (int u = 0; u < height; ++u) {
        const double du = u - cu;
        for (int v = 0; v < width; ++v) {
            const double dv = v - cv;
            distances_[static_cast<std::size_t>(u) * width + v] = std::sqrt(du * du + dv * dv);
        }
    }
}

double butterworth_response(double distance, double cutoff, int order) {
    if (distance <= 0.0) {
        return 0.0;
    }
    const double ratio = cutoff / distance;
    const double ratio_sq = ratio * ratio;
    double power = 1.0;
    for (int i = 0; i < order; ++i) {
        power *= ratio_sq;
    }
    return 1.0 / (1.0 + power);
}

double ideal_response(double distance, double cutoff) { return distance < cutoff ? 0.0 : 1.0; }

std::vector<double> gain_field(const SpectrumGeometry& geometry, FilterKind kind, const ButterworthParams& params) {
    const double cutoff = params.d0_fraction * geometry.radius();
    std::vector<double> gain(geometry.distances().size());
    std::transform(geometry.distances().begin(), geometry.distances().end(), gain.begin(), [&](double d) {
        return kind == FilterKind::ideal ? ideal_response(d, cutoff) : butterworth_response(d, cutoff, params.order);
    });
    return gain;
}

Spectrum filter_spectrum(const Spectrum& spectrum, const FilterSpec& spec) {
    validate(spec, spectrum.channels());
    Spectrum out = shift_center(spectrum);
    const SpectrumGeometry geometry(out.height(), out.width());
    for (int c = 0; c < out.channels(); ++c) {
        const auto gain = gain_field(geometry, spec.kind, spec.for_channel(c));
        auto plane = out.plane(c);
        for (std::size_t i = 0; i < plane.size(); ++i) {
            plane[i] *= gain[i];
        }
    }
    return out;
}

InverseResult filter_unnormalized(const Spectrum& spectrum, const FilterSpec& spec) {
    return idft2(filter_spectrum(spectrum, spec));
}

bool FilterReport::any_degenerate() const {
    return std::any_of(channels.begin(), channels.end(), [](const ChannelRange& r) { return r.degenerate; });
}

Image renormalize(const Field& field, FilterReport& report) {
    Field out(field.height(), field.width(), field.channels());
    report.channels.assign(field.channels(), ChannelRange{});
    for (int c = 0; c < field.channels(); ++c) {
        const auto src = field.plane(c);
        const auto [lo, hi] = std::minmax_element(src.begin(), src.end());
        ChannelRange& range = report.channels[c];
        range.min = *lo;
        range.max = *hi;
        const double extent = range.max - range.min;
        if (!(extent > kFlatChannelTolerance)) {
            range.degenerate = true;
            continue;
        }
        auto dst = out.plane(c);
        for (std::size_t i = 0; i < src.size(); ++i) {
            dst[i] = (src[i] - range.min) / extent;
        }
    }
    return Image(std::move(out));
}

FilteredSample apply_filter(const Spectrum& spectrum, const FilterSpec& spec, std::string parent_id) {
    InverseResult filtered = filter_unnormalized(spectrum, spec);
    FilteredSample sample;
    sample.report.max_imag_residue = filtered.max_imag;
    sample.image = renormalize(filtered.real, sample.report);
    sample.parent_id = std::move(parent_id);
    return sample;
}

FilteredSample apply_filter(const Image& image, const FilterSpec& spec, std::string parent_id) {
    validate(spec, image.channels());
    return apply_filter(dft2(image), spec, std::move(parent_id));
}

void ParamRanges::validate() const {
    if (!(d0_min > 0.0 && d0_min <= d0_max && d0_max <= kMaxCutoffFraction)) {
        std::ostringstream msg;
        msg << "cutoff range [" << d0_min << ", " << d0_max << "] must satisfy 0 < min <= max <= "
            << kMaxCutoffFraction;
        throw ConfigError(msg.str());
    }
    if (orders.empty()) {
        throw ConfigError("order set is empty");
    }
    for (int n : orders) {
        if (n < 1 || n > kMaxOrder) {
            throw ConfigError("filter order " + std::to_string(n) + " outside {1, 2, 3}");
        }
    }
}

FilterSpec sample_filter_spec(RngStream& rng, int channels, const ParamRanges& ranges) {
    return sample_filter_spec(rng, channels, FilterSampling{ranges, FilterKind::butterworth, true});
}

FilterSpec sample_filter_spec(RngStream& rng, int channels, const FilterSampling& sampling) {
    sampling.ranges.validate();
    if (channels < 1) {
        throw ConfigError("channel count must be positive");
    }
    const auto& r = sampling.ranges;
    FilterSpec spec;
    spec.kind = sampling.kind;
    const int entries = sampling.channel_wise ? channels : 1;
    for (int c = 0; c < entries; ++c) {
        ButterworthParams p;
        p.d0_fraction = rng.uniform(r.d0_min, r.d0_max);
        if (sampling.kind == FilterKind::butterworth) {
            p.order = r.orders[rng.uniform_int(0, static_cast<int>(r.orders.size()) - 1)];
        }
        spec.per_channel.push_back(p);
    }
    return spec;
}

}  // namespace freqaug
