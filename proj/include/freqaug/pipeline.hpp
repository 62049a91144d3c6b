#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "freqaug/blending.hpp"
#include "freqaug/config.hpp"
#include "freqaug/fft.hpp"
#include "freqaug/filters.hpp"
#include "freqaug/losses.hpp"
#include "freqaug/manifest.hpp"
#include "freqaug/saliency.hpp"

namespace freqaug {

// ------------------------------------------------------------------ ingest

struct SourcePair {
    std::string id;  // filename stem
    std::filesystem::path image_path;
    std::optional<std::filesystem::path> label_path;
    Image image;
    std::optional<CategoryMap> label;
};

struct IngestResult {
    std::vector<SourcePair> pairs;  // lexicographic by stem
    std::vector<std::string> warnings;
};

/// Decodes every supported image in `image_dir`, pairing labels by stem.
/// Unreadable files are skipped with a warning; a label whose extent differs
/// from its image is a DataError. A missing directory is an IoError.
IngestResult ingest(const std::filesystem::path& image_dir,
                    const std::optional<std::filesystem::path>& label_dir = std::nullopt);

// ------------------------------------------------------------------ views

/// Random choices behind one augmented view. Draw order from the view's
/// substream: filter_m, filter_n, mask.
struct ViewParams {
    FilterSpec filter_m;
    FilterSpec filter_n;
    MaskParams mask;
};

ViewParams sample_view_params(RngStream& rng, int channels, int height, int width, const FilterSampling& filter,
                              const MaskSampling& mask);

struct ViewResult {
    FilteredSample x_m;
    FilteredSample x_n;
    BlendMask mask;
    BlendedSample blended;
};

/// Both filtered variants start from the source's centered spectrum.
ViewResult render_view(const Spectrum& source_spectrum, const std::string& parent_id, const ViewParams& params);

/// Resizes to the configured extent unless the policy is `none`.
Image prepare_source(const Image& image, ImageSize size, ResizePolicy policy);
CategoryMap prepare_label(const CategoryMap& label, ImageSize size, ResizePolicy policy);

std::uint64_t view_substream(std::uint64_t seed, int epoch, int image_index, int view_index);

// ------------------------------------------------------------------ augment

struct AugmentOptions {
    bool write_outputs = true;
};

/// Augments one epoch: K views per source plus one saliency target from the
/// unaugmented source. Records are ordered by (image index, view index)
/// regardless of the worker count. Artifacts go under config.output_dir in
/// images/, targets/ and labels/.
std::vector<AugmentationRecord> augment_epoch(const std::vector<SourcePair>& pairs, const RunConfig& config, int epoch,
                                              AugmentOptions options = {});

struct AugmentSummary {
    std::size_t sources = 0;
    std::size_t records = 0;
    std::vector<std::string> warnings;
    std::filesystem::path manifest_path;
};

/// ingest + every epoch + manifest.jsonl + run_config.json. On failure the
/// manifest holds the completed prefix and a manifest.partial note is left
/// next to it before the error propagates.
AugmentSummary run_augment(const RunConfig& config);

// ------------------------------------------------------------------ replay

struct ReplayResult {
    std::string sha256;
    bool hash_matches = false;
    bool substream_matches = false;               // substream re-derives from (seed, epoch, image, view)
    std::optional<bool> params_match;             // set when a run config was supplied
    Image source;
    ViewResult view;
};

/// Rebuilds a record's view from its source file and recorded parameters.
/// With the run's config, also redraws the parameters from the substream and
/// compares them with the recorded ones.
ReplayResult replay(const AugmentationRecord& record, const std::optional<RunConfig>& config = std::nullopt);

// ------------------------------------------------------------------ preview

inline constexpr int kPreviewTiles = 6;

/// Rows of (original, x_m, x_n, mask, blended, saliency) for the first n
/// records; n is clamped to the manifest size with a warning.
struct PreviewResult {
    Image montage;  // (n * tile) x (6 * tile)
    int rows = 0;
    std::vector<std::string> warnings;
};

PreviewResult preview(const std::vector<AugmentationRecord>& records, int n, int tile = 128);

// ------------------------------------------------------------------ bench

struct BenchOptions {
    int n_images = 20;
    int repetitions = 3;
    int workers = 4;
    int k = 10;
    ImageSize size;
    std::uint64_t seed = 0;
    FilterSampling filter;
    MaskSampling mask;
    KernelRule kernel;
};

struct TimingSummary {
    std::vector<double> seconds;
    double min = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double max = 0.0;
};

TimingSummary summarize_timings(std::vector<double> seconds);

struct BenchReport {
    BenchOptions options;
    TimingSummary single;
    TimingSummary multi;
    double images_per_sec_single = 0.0;
    double images_per_sec_multi = 0.0;
    double views_per_sec_single = 0.0;
    double views_per_sec_multi = 0.0;
    double per_image_ms = 0.0;  // single worker, median
    double scaling = 0.0;       // multi / single throughput
};

/// In-memory augmentation of synthetic sources, timed with one worker and
/// with effective_workers(options.workers); the two alternate.
BenchReport bench(const BenchOptions& options);
nlohmann::json to_json(const BenchReport& report);

/// Pool size for a requested worker count: at most one thread per hardware
/// thread (the request itself when the count is unknown).
int effective_workers(int requested);

/// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
/// exception is rethrown after all workers stop.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace freqaug
