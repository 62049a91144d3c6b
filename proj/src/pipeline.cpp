#include "freqaug/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "freqaug/error.hpp"
#include "freqaug/geometry.hpp"
#include "freqaug/hash.hpp"
#include "freqaug/image_io.hpp"
#include "freqaug/npy.hpp"
#include "freqaug/synthetic.hpp"

namespace freqaug {

namespace fs = std::filesystem;
using nlohmann::json;

int effective_workers(int requested) {
    const int hardware = static_cast<int>(std::thread::hardware_concurrency());
    const int wanted = std::max(1, requested);
    return hardware > 0 ? std::min(wanted, hardware) : wanted;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    const auto threads = static_cast<std::size_t>(std::max(1, workers));
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(threads, count); ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count || stop.load()) {
                        return;
                    }
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!first_error) {
                            first_error = std::current_exception();
                        }
                        stop.store(true);
                    }
                }
            });
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

// ------------------------------------------------------------------ ingest

namespace {

std::vector<fs::path> supported_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && is_supported_image(entry.path())) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        const auto sa = a.stem().string();
        const auto sb = b.stem().string();
        return sa != sb ? sa < sb : a.filename().string() < b.filename().string();
    });
    return files;
}

}  // namespace

IngestResult ingest(const fs::path& image_dir, const std::optional<fs::path>& label_dir) {
    if (!fs::is_directory(image_dir)) {
        throw IoError("image directory " + image_dir.string() + " does not exist");
    }
    if (label_dir && !fs::is_directory(*label_dir)) {
        throw IoError("label directory " + label_dir->string() + " does not exist");
    }
    IngestResult result;
    std::map<std::string, fs::path> labels;
    if (label_dir) {
        for (const auto& path : supported_files(*label_dir)) {
            labels.emplace(path.stem().string(), path);  // first by filename wins
        }
    }
    const auto images = supported_files(image_dir);
    if (images.empty()) {
        result.warnings.push_back("no supported images in " + image_dir.string());
    }
    for (const auto& path : images) {
        const std::string stem = path.stem().string();
        if (!result.pairs.empty() && result.pairs.back().id == stem) {
            result.warnings.push_back("skipping " + path.string() + ": duplicate stem '" + stem + "'");
            continue;
        }
        SourcePair pair;
        pair.id = stem;
        pair.image_path = path;
        try {
            pair.image = read_image(path);
        } catch (const Error& e) {
            result.warnings.push_back("skipping unreadable " + path.string() + ": " + e.what());
            continue;
        }
        if (label_dir) {
            const auto it = labels.find(stem);
            if (it == labels.end()) {
                result.warnings.push_back("no label for '" + stem + "'");
            } else {
                CategoryMap label;
                try {
                    label = read_label_map(it->second);
                } catch (const Error& e) {
                    result.warnings.push_back("skipping unreadable label " + it->second.string() + ": " + e.what());
                    continue;
                }
                if (label.height != pair.image.height() || label.width != pair.image.width()) {
                    std::ostringstream msg;
                    msg << "label " << it->second.string() << " is " << label.width << "x" << label.height
                        << " but image " << path.string() << " is " << pair.image.width() << "x"
                        << pair.image.height();
                    throw DataError(msg.str());
                }
                pair.label_path = it->second;
                pair.label = std::move(label);
            }
        }
        result.pairs.push_back(std::move(pair));
    }
    return result;
}

// ------------------------------------------------------------------ views

ViewParams sample_view_params(RngStream& rng, int channels, int height, int width, const FilterSampling& filter,
                              const MaskSampling& mask) {
    ViewParams params;
    params.filter_m = sample_filter_spec(rng, channels, filter);
    params.filter_n = sample_filter_spec(rng, channels, filter);
    params.mask = sample_mask_params(rng, height, width, mask);
    return params;
}

ViewResult render_view(const Spectrum& source_spectrum, const std::string& parent_id, const ViewParams& params) {
    ViewResult view;
    view.x_m = apply_filter(source_spectrum, params.filter_m, parent_id);
    view.x_n = apply_filter(source_spectrum, params.filter_n, parent_id);
    view.mask = make_mask(source_spectrum.height(), source_spectrum.width(), params.mask);
    view.blended = blend(view.x_m, view.x_n, view.mask);
    return view;
}

Image prepare_source(const Image& image, ImageSize size, ResizePolicy policy) {
    if (policy == ResizePolicy::none) {
        return image;
    }
    return resize_bilinear(image, size.height, size.width);
}

CategoryMap prepare_label(const CategoryMap& label, ImageSize size, ResizePolicy policy) {
    if (policy == ResizePolicy::none) {
        return label;
    }
    return resize_nearest(label, size.height, size.width);
}

std::uint64_t view_substream(std::uint64_t seed, int epoch, int image_index, int view_index) {
    return derive_seed(seed, {static_cast<std::uint64_t>(epoch), static_cast<std::uint64_t>(image_index),
                              static_cast<std::uint64_t>(view_index)});
}

// ------------------------------------------------------------------ augment

namespace {

std::string view_filename(const std::string& id, int epoch, int view, int k) {
    const int digits = std::max(2, static_cast<int>(std::to_string(std::max(0, k - 1)).size()));
    std::ostringstream name;
    name << id << "_e" << epoch << "_k";
    name.width(digits);
    name.fill('0');
    name << view << ".png";
    return name.str();
}

std::vector<AugmentationRecord> process_source(const SourcePair& pair, int index, const RunConfig& config, int epoch,
                                               const AugmentOptions& options) {
    const Image source = prepare_source(pair.image, config.size, config.resize);
    const Spectrum spectrum = dft2(source);
    const GaussianKernel kernel = default_kernel_for(source.height(), source.width(), config.kernel);
    const fs::path& out = config.output_dir;

    const std::string saliency_rel = "targets/" + pair.id + ".npy";
    std::optional<std::string> label_rel;
    if (pair.label) {
        label_rel = "labels/" + pair.id + ".png";
    }
    if (options.write_outputs) {
        write_npy(out / saliency_rel, structure_saliency(source, kernel));
        if (pair.label) {
            write_label_png(out / *label_rel, prepare_label(*pair.label, config.size, config.resize));
        }
    }

    std::vector<AugmentationRecord> records;
    records.reserve(config.k);
    for (int k = 0; k < config.k; ++k) {
        AugmentationRecord r;
        r.parent_id = pair.id;
        r.image_index = index;
        r.epoch = epoch;
        r.view_index = k;
        r.seed = config.seed;
        r.substream = view_substream(config.seed, epoch, index, k);
        r.source_path = fs::absolute(pair.image_path).lexically_normal().string();
        r.size = {source.width(), source.height()};
        r.resize = config.resize;

        RngStream rng(r.substream);
        const ViewParams params = sample_view_params(rng, source.channels(), source.height(), source.width(),
                                                     config.filter, config.mask);
        const ViewResult view = render_view(spectrum, pair.id, params);
        r.filter_m = params.filter_m;
        r.filter_n = params.filter_n;
        r.mask = params.mask;
        r.kernel_radius = kernel.radius;
        r.kernel_sigma = kernel.sigma;
        r.image_path = "images/" + view_filename(pair.id, epoch, k, config.k);
        r.saliency_path = saliency_rel;
        r.label_path = label_rel;
        r.output_sha256 = field_sha256(view.blended.image.field());
        if (options.write_outputs) {
            write_png(out / r.image_path, view.blended.image);
        }
        records.push_back(std::move(r));
    }
    return records;
}

void make_output_dirs(const fs::path& out) {
    std::error_code ec;
    for (const char* sub : {"images", "targets", "labels"}) {
        fs::create_directories(out / sub, ec);
        if (ec) {
            throw IoError("cannot create " + (out / sub).string() + ": " + ec.message());
        }
    }
}

struct EpochOutcome {
    std::vector<AugmentationRecord> records;  // completed prefix, in order
    std::exception_ptr error;
};

EpochOutcome run_epoch(const std::vector<SourcePair>& pairs, const RunConfig& config, int epoch,
                       const AugmentOptions& options) {
    config.validate();
    if (options.write_outputs) {
        make_output_dirs(config.output_dir);
    }
    std::vector<std::optional<std::vector<AugmentationRecord>>> slots(pairs.size());
    EpochOutcome outcome;
    try {
        parallel_for(pairs.size(), effective_workers(config.workers), [&](std::size_t i) {
            slots[i] = process_source(pairs[i], static_cast<int>(i), config, epoch, options);
        });
    } catch (...) {
        outcome.error = std::current_exception();
    }
    for (auto& slot : slots) {
        if (!slot) {
            break;
        }
        std::move(slot->begin(), slot->end(), std::back_inserter(outcome.records));
    }
    return outcome;
}

}  // namespace

std::vector<AugmentationRecord> augment_epoch(const std::vector<SourcePair>& pairs, const RunConfig& config, int epoch,
                                              AugmentOptions options) {
    EpochOutcome outcome = run_epoch(pairs, config, epoch, options);
    if (outcome.error) {
        std::rethrow_exception(outcome.error);
    }
    return std::move(outcome.records);
}

AugmentSummary run_augment(const RunConfig& config) {
    config.validate();
    IngestResult input = ingest(config.input_dir, config.label_dir);
    AugmentSummary summary;
    summary.sources = input.pairs.size();
    summary.warnings = std::move(input.warnings);

    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) {
        throw IoError("cannot create " + config.output_dir.string() + ": " + ec.message());
    }
    summary.manifest_path = config.output_dir / "manifest.jsonl";
    const fs::path partial_note = config.output_dir / "manifest.partial";
    fs::remove(partial_note, ec);

    {
        std::ofstream cfg(config.output_dir / "run_config.json", std::ios::trunc);
        if (!cfg) {
            throw IoError("cannot write run_config.json in " + config.output_dir.string());
        }
        cfg << to_json(config).dump(2) << '\n';
    }

    std::vector<AugmentationRecord> records;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        EpochOutcome outcome = run_epoch(input.pairs, config, epoch, {});
        std::move(outcome.records.begin(), outcome.records.end(), std::back_inserter(records));
        if (outcome.error) {
            write_manifest(summary.manifest_path, records);
            std::ofstream note(partial_note, std::ios::trunc);
            std::string reason = "unknown error";
            try {
                std::rethrow_exception(outcome.error);
            } catch (const std::exception& e) {
                reason = e.what();
            } catch (...) {
            }
            note << "manifest holds " << records.size() << " records; augmentation stopped in epoch " << epoch
                 << ": " << reason << '\n';
            std::rethrow_exception(outcome.error);
        }
    }
    write_manifest(summary.manifest_path, records);
    summary.records = records.size();
    return summary;
}

// ------------------------------------------------------------------ replay

ReplayResult replay(const AugmentationRecord& record, const std::optional<RunConfig>& config) {
    ReplayResult result;
    result.source = prepare_source(read_image(record.source_path), record.size, record.resize);
    if (result.source.width() != record.size.width || result.source.height() != record.size.height) {
        throw DataError("source " + record.source_path + " no longer matches the recorded extent");
    }
    const Spectrum spectrum = dft2(result.source);
    const ViewParams params{record.filter_m, record.filter_n, record.mask};
    result.view = render_view(spectrum, record.parent_id, params);
    result.sha256 = field_sha256(result.view.blended.image.field());
    result.hash_matches = result.sha256 == record.output_sha256;
    result.substream_matches =
        record.substream == view_substream(record.seed, record.epoch, record.image_index, record.view_index);
    if (config) {
        RngStream rng(record.substream);
        const ViewParams redrawn = sample_view_params(rng, result.source.channels(), result.source.height(),
                                                      result.source.width(), config->filter, config->mask);
        result.params_match = redrawn.filter_m == params.filter_m && redrawn.filter_n == params.filter_n &&
                              redrawn.mask == params.mask;
    }
    return result;
}

// ------------------------------------------------------------------ preview

namespace {

void paste_tile(Field& montage, const Image& tile_src, int row, int col, int tile) {
    const Image tile_img = resize_bilinear(tile_src, tile, tile);
    for (int c = 0; c < 3; ++c) {
        const int src_c = tile_img.channels() == 1 ? 0 : std::min(c, tile_img.channels() - 1);
        for (int r = 0; r < tile; ++r) {
            for (int q = 0; q < tile; ++q) {
                montage.at(c, row * tile + r, col * tile + q) = tile_img.at(src_c, r, q);
            }
        }
    }
}

Image mask_image(const BlendMask& mask) {
    Field f(mask.height, mask.width, 1);
    std::copy(mask.values.begin(), mask.values.end(), f.values().begin());
    return Image(std::move(f));
}

}  // namespace

PreviewResult preview(const std::vector<AugmentationRecord>& records, int n, int tile) {
    if (records.empty()) {
        throw DataError("preview needs a nonempty manifest");
    }
    if (n < 1 || tile < 2) {
        throw ConfigError("preview needs n >= 1 and tile >= 2");
    }
    PreviewResult result;
    result.rows = n;
    if (static_cast<std::size_t>(n) > records.size()) {
        result.rows = static_cast<int>(records.size());
        result.warnings.push_back("requested " + std::to_string(n) + " rows but the manifest has " +
                                  std::to_string(records.size()) + " records");
    }
    Field montage(result.rows * tile, kPreviewTiles * tile, 3);
    for (int i = 0; i < result.rows; ++i) {
        const AugmentationRecord& record = records[i];
        const ReplayResult rep = replay(record);
        if (!rep.hash_matches) {
            result.warnings.push_back("record " + std::to_string(i) + " no longer reproduces its hash");
        }
        const GaussianKernel kernel = make_gaussian_kernel(record.kernel_radius, record.kernel_sigma);
        paste_tile(montage, rep.source, i, 0, tile);
        paste_tile(montage, rep.view.x_m.image, i, 1, tile);
        paste_tile(montage, rep.view.x_n.image, i, 2, tile);
        paste_tile(montage, mask_image(rep.view.mask), i, 3, tile);
        paste_tile(montage, rep.view.blended.image, i, 4, tile);
        paste_tile(montage, saliency_preview(structure_saliency(rep.source, kernel)), i, 5, tile);
    }
    result.montage = Image(std::move(montage));
    return result;
}

// ------------------------------------------------------------------ bench

TimingSummary summarize_timings(std::vector<double> seconds) {
    TimingSummary s;
    s.seconds = seconds;
    if (seconds.empty()) {
        return s;
    }
    std::sort(seconds.begin(), seconds.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(seconds.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, seconds.size() - 1);
        return seconds[lo] + (pos - static_cast<double>(lo)) * (seconds[hi] - seconds[lo]);
    };
    s.min = seconds.front();
    s.max = seconds.back();
    s.p50 = quantile(0.5);
    s.p90 = quantile(0.9);
    return s;
}

namespace {

double augment_in_memory(const std::vector<Image>& sources, const BenchOptions& o, int workers) {
    std::vector<double> checksums(sources.size(), 0.0);
    const auto start = std::chrono::steady_clock::now();
    parallel_for(sources.size(), workers, [&](std::size_t i) {
        const Image& source = sources[i];
        const Spectrum spectrum = dft2(source);
        const GaussianKernel kernel = default_kernel_for(source.height(), source.width(), o.kernel);
        double acc = structure_saliency(source, kernel).values()[0];
        for (int k = 0; k < o.k; ++k) {
            RngStream rng(view_substream(o.seed, 0, static_cast<int>(i), k));
            const ViewParams params =
                sample_view_params(rng, source.channels(), source.height(), source.width(), o.filter, o.mask);
            acc += render_view(spectrum, "bench", params).blended.image.at(0, 0, 0);
        }
        checksums[i] = acc;
    });
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (std::any_of(checksums.begin(), checksums.end(), [](double v) { return std::isnan(v); })) {
        throw Error("bench produced NaN output");
    }
    return elapsed.count();
}

}  // namespace

BenchReport bench(const BenchOptions& options) {
    if (options.n_images < 1 || options.repetitions < 1 || options.k < 1 || options.workers < 1) {
        throw ConfigError("bench needs n_images, repetitions, k and workers >= 1");
    }
    if (options.size.width < 8 || options.size.height < 8) {
        throw ConfigError("bench size must be at least 8x8");
    }
    options.filter.ranges.validate();
    std::vector<Image> sources;
    for (int i = 0; i < options.n_images; ++i) {
        sources.push_back(synthetic_fundus(options.size.height, options.size.width,
                                           derive_seed(options.seed, {static_cast<std::uint64_t>(i)}))
                              .image);
    }
    BenchReport report;
    report.options = options;
    std::vector<double> single;
    std::vector<double> multi;
    for (int rep = 0; rep < options.repetitions; ++rep) {
        // Alternate which configuration runs first.
        if (rep % 2 == 0) {
            single.push_back(augment_in_memory(sources, options, 1));
            multi.push_back(augment_in_memory(sources, options, effective_workers(options.workers)));
        } else {
            multi.push_back(augment_in_memory(sources, options, effective_workers(options.workers)));
            single.push_back(augment_in_memory(sources, options, 1));
        }
    }
    report.single = summarize_timings(single);
    report.multi = summarize_timings(multi);
    const double n = options.n_images;
    report.images_per_sec_single = n / report.single.p50;
    report.images_per_sec_multi = n / report.multi.p50;
    report.views_per_sec_single = report.images_per_sec_single * options.k;
    report.views_per_sec_multi = report.images_per_sec_multi * options.k;
    report.per_image_ms = 1000.0 * report.single.p50 / n;
    report.scaling = report.images_per_sec_multi / report.images_per_sec_single;
    return report;
}

json to_json(const BenchReport& report) {
    const auto timing = [](const TimingSummary& t) {
        return json{{"seconds", t.seconds}, {"min", t.min}, {"p50", t.p50}, {"p90", t.p90}, {"max", t.max}};
    };
    const BenchOptions& o = report.options;
    return {
        {"n_images", o.n_images},
        {"repetitions", o.repetitions},
        {"k", o.k},
        {"size", to_string(o.size)},
        {"workers", o.workers},
        {"effective_workers", effective_workers(o.workers)},
        {"hardware_threads", std::thread::hardware_concurrency()},
        {"single_worker", timing(report.single)},
        {"multi_worker", timing(report.multi)},
        {"images_per_sec", {{"single", report.images_per_sec_single}, {"multi", report.images_per_sec_multi}}},
        {"views_per_sec", {{"single", report.views_per_sec_single}, {"multi", report.views_per_sec_multi}}},
        {"per_image_ms", report.per_image_ms},
        {"scaling", report.scaling},
    };
}

}  // namespace freqaug
