#include "freqaug/config.hpp"

#include <fstream>
#include <regex>
#include <set>

#include "freqaug/error.hpp"

namespace freqaug {

namespace fs = std::filesystem;
using nlohmann::json;

ImageSize parse_size(const std::string& text) {
    std::smatch m;
    if (!std::regex_match(text, m, std::regex(R"((\d+)[xX](\d+))"))) {
        throw ConfigError("size must look like WxH, got '" + text + "'");
    }
    try {
        return {std::stoi(m[1]), std::stoi(m[2])};
    } catch (const std::out_of_range&) {
        throw ConfigError("size out of range: '" + text + "'");
    }
}

std::string to_string(const ImageSize& size) {
    return std::to_string(size.width) + "x" + std::to_string(size.height);
}

const char* to_string(ResizePolicy policy) { return policy == ResizePolicy::none ? "none" : "bilinear"; }

ResizePolicy resize_policy_from_string(const std::string& name) {
    if (name == "bilinear") {
        return ResizePolicy::bilinear;
    }
    if (name == "none") {
        return ResizePolicy::none;
    }
    throw ConfigError("unknown resize policy '" + name + "'");
}

std::string filter_mode_name(const FilterSampling& sampling) {
    if (sampling.kind == FilterKind::ideal) {
        return "ideal";
    }
    return sampling.channel_wise ? "channel-wise" : "shared";
}

void set_filter_mode(FilterSampling& sampling, const std::string& name) {
    if (name == "channel-wise") {
        sampling.kind = FilterKind::butterworth;
        sampling.channel_wise = true;
    } else if (name == "shared") {
        sampling.kind = FilterKind::butterworth;
        sampling.channel_wise = false;
    } else if (name == "ideal") {
        sampling.kind = FilterKind::ideal;
        sampling.channel_wise = true;
    } else {
        throw ConfigError("unknown filter mode '" + name + "' (channel-wise, shared, ideal)");
    }
}

void RunConfig::validate() const {
    if (k < 1) {
        throw ConfigError("k must be at least 1");
    }
    if (epochs < 1) {
        throw ConfigError("epochs must be at least 1");
    }
    if (size.width < 8 || size.height < 8) {
        throw ConfigError("target size must be at least 8x8");
    }
    if (workers < 1) {
        throw ConfigError("workers must be at least 1");
    }
    if (!(alpha >= 0.0)) {
        throw ConfigError("alpha must be nonnegative");
    }
    if (kernel.divisor < 1 || !(kernel.sigma_ratio > 0.0)) {
        throw ConfigError("kernel rule needs divisor >= 1 and positive sigma ratio");
    }
    if (mask.grid_cell < 0) {
        throw ConfigError("grid cell must be nonnegative");
    }
    if (!(mask.patch.min_ratio > 0.0 && mask.patch.min_ratio <= mask.patch.max_ratio && mask.patch.max_ratio <= 1.0)) {
        throw ConfigError("patch area ratios must satisfy 0 < min <= max <= 1");
    }
    filter.ranges.validate();
}

void apply_config_json(RunConfig& config, const json& j) {
    static const std::set<std::string> known = {
        "input",  "labels",     "out",       "seed", "k",    "epochs",         "d0_min",
        "d0_max", "orders",     "filter",    "mask", "size", "patch_area",     "grid_cell",
        "resize", "kernel_divisor", "kernel_sigma_ratio", "alpha", "workers"};
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    for (const auto& item : j.items()) {
        if (!known.contains(item.key())) {
            throw ConfigError("unknown config key '" + item.key() + "'");
        }
    }
    try {
        if (j.contains("input")) config.input_dir = j["input"].get<std::string>();
        if (j.contains("labels")) {
            if (j["labels"].is_null()) {
                config.label_dir.reset();
            } else {
                config.label_dir = j["labels"].get<std::string>();
            }
        }
        if (j.contains("out")) config.output_dir = j["out"].get<std::string>();
        if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("k")) config.k = j["k"].get<int>();
        if (j.contains("epochs")) config.epochs = j["epochs"].get<int>();
        if (j.contains("d0_min")) config.filter.ranges.d0_min = j["d0_min"].get<double>();
        if (j.contains("d0_max")) config.filter.ranges.d0_max = j["d0_max"].get<double>();
        if (j.contains("orders")) config.filter.ranges.orders = j["orders"].get<std::vector<int>>();
        if (j.contains("filter")) set_filter_mode(config.filter, j["filter"].get<std::string>());
        if (j.contains("mask")) config.mask.kind = mask_kind_from_string(j["mask"].get<std::string>());
        if (j.contains("patch_area")) {
            const auto area = j["patch_area"].get<std::vector<double>>();
            if (area.size() != 2) {
                throw ConfigError("patch_area must be [min, max]");
            }
            config.mask.patch = {area[0], area[1]};
        }
        if (j.contains("grid_cell")) config.mask.grid_cell = j["grid_cell"].get<int>();
        if (j.contains("size")) config.size = parse_size(j["size"].get<std::string>());
        if (j.contains("resize")) config.resize = resize_policy_from_string(j["resize"].get<std::string>());
        if (j.contains("kernel_divisor")) config.kernel.divisor = j["kernel_divisor"].get<int>();
        if (j.contains("kernel_sigma_ratio")) config.kernel.sigma_ratio = j["kernel_sigma_ratio"].get<double>();
        if (j.contains("alpha")) config.alpha = j["alpha"].get<double>();
        if (j.contains("workers")) config.workers = j["workers"].get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
}

RunConfig load_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    RunConfig config;
    try {
        apply_config_json(config, json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return config;
}

json to_json(const RunConfig& config) {
    json j;
    j["input"] = config.input_dir.string();
    j["labels"] = config.label_dir ? json(config.label_dir->string()) : json(nullptr);
    j["seed"] = config.seed;
    j["k"] = config.k;
    j["epochs"] = config.epochs;
    j["d0_min"] = config.filter.ranges.d0_min;
    j["d0_max"] = config.filter.ranges.d0_max;
    j["orders"] = config.filter.ranges.orders;
    j["filter"] = filter_mode_name(config.filter);
    j["mask"] = to_string(config.mask.kind);
    j["patch_area"] = {config.mask.patch.min_ratio, config.mask.patch.max_ratio};
    j["grid_cell"] = config.mask.grid_cell;
    j["size"] = to_string(config.size);
    j["resize"] = to_string(config.resize);
    j["kernel_divisor"] = config.kernel.divisor;
    j["kernel_sigma_ratio"] = config.kernel.sigma_ratio;
    j["alpha"] = config.alpha;
    return j;
}

}  // namespace freqaug
