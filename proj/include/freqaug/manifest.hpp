#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "freqaug/blending.hpp"
#include "freqaug/config.hpp"
#include "freqaug/filters.hpp"

namespace freqaug {

/// Provenance of one augmented view: enough to rebuild it bit for bit.
struct AugmentationRecord {
    std::string parent_id;
    int image_index = 0;
    int epoch = 0;
    int view_index = 0;
    std::uint64_t seed = 0;       // master seed of the run
    std::uint64_t substream = 0;  // derive_seed(seed, {epoch, image_index, view_index})
    std::string source_path;
    ImageSize size;  // extent the source was prepared to
    ResizePolicy resize = ResizePolicy::bilinear;
    FilterSpec filter_m;
    FilterSpec filter_n;
    MaskParams mask;
    int kernel_radius = 1;
    double kernel_sigma = 1.0;
    std::string image_path;     // relative to the output directory
    std::string saliency_path;  // relative to the output directory
    std::optional<std::string> label_path;
    std::string output_sha256;  // field_sha256 of the blended view
};

nlohmann::json to_json(const AugmentationRecord& record);
/// Throws DataError on missing or malformed fields.
AugmentationRecord record_from_json(const nlohmann::json& j);

/// One compact JSON object per line.
std::string to_jsonl_line(const AugmentationRecord& record);

void write_manifest(const std::filesystem::path& path, const std::vector<AugmentationRecord>& records);
std::vector<AugmentationRecord> read_manifest(const std::filesystem::path& path);

nlohmann::json to_json(const FilterSpec& spec);
FilterSpec filter_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MaskParams& params);
MaskParams mask_params_from_json(const nlohmann::json& j);

}  // namespace freqaug
