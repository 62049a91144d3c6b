#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "freqaug/blending.hpp"
#include "freqaug/filters.hpp"
#include "freqaug/saliency.hpp"

namespace freqaug {

struct ImageSize {
    int width = 512;
    int height = 512;
    friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

/// Parses "WxH" (e.g. "512x512"). Throws ConfigError.
ImageSize parse_size(const std::string& text);
std::string to_string(const ImageSize& size);

enum class ResizePolicy { bilinear, none };

const char* to_string(ResizePolicy policy);
ResizePolicy resize_policy_from_string(const std::string& name);

/// "channel-wise" | "shared" | "ideal"
std::string filter_mode_name(const FilterSampling& sampling);
void set_filter_mode(FilterSampling& sampling, const std::string& name);

struct RunConfig {
    std::filesystem::path input_dir;
    std::optional<std::filesystem::path> label_dir;
    std::filesystem::path output_dir;
    std::uint64_t seed = 0;
    int k = 10;
    int epochs = 1;
    FilterSampling filter;
    MaskSampling mask;
    ImageSize size;
    ResizePolicy resize = ResizePolicy::bilinear;
    KernelRule kernel;
    double alpha = 1.0;
    int workers = 1;

    /// Throws ConfigError.
    void validate() const;
};

/// Overlays keys present in `j` onto `config`; unknown keys are a ConfigError.
/// Keys: input, labels, out, seed, k, epochs, d0_min, d0_max, orders, filter,
/// mask, patch_area, grid_cell, size, resize, kernel_divisor,
/// kernel_sigma_ratio, alpha, workers.
void apply_config_json(RunConfig& config, const nlohmann::json& j);
RunConfig load_config_file(const std::filesystem::path& path);

/// Everything that determines the outputs (worker count excluded).
nlohmann::json to_json(const RunConfig& config);

}  // namespace freqaug
