#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "freqaug/config.hpp"
#include "freqaug/error.hpp"
#include "freqaug/fft.hpp"
#include "freqaug/filters.hpp"
#include "freqaug/hash.hpp"
#include "freqaug/image_io.hpp"
#include "freqaug/losses.hpp"
#include "freqaug/manifest.hpp"
#include "freqaug/npy.hpp"
#include "freqaug/pipeline.hpp"
#include "freqaug/rng.hpp"
#include "freqaug/saliency.hpp"
#include "freqaug/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace freqaug;

namespace {

std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> orders;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            orders.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error&) {
            throw ConfigError("--orders expects a comma-separated list such as 1,2,3; got '" + text + "'");
        }
    }
    if (orders.empty()) {
        throw ConfigError("--orders must name at least one order");
    }
    return orders;
}

void ensure_parent(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
        }
    }
}

/// Sampling flags shared by augment, filter, blend and bench.
struct SamplingFlags {
    std::optional<double> d0_min;
    std::optional<double> d0_max;
    std::optional<std::string> orders;
    std::optional<std::string> filter;
    std::optional<std::string> mask;
    std::optional<int> grid_cell;

    void attach(CLI::App* app) {
        app->add_option("--d0-min", d0_min, "Lower cutoff bound as a fraction of the spectrum radius");
        app->add_option("--d0-max", d0_max, "Upper cutoff bound as a fraction of the spectrum radius");
        app->add_option("--orders", orders, "Butterworth orders to draw from, e.g. 1,2,3");
        app->add_option("--filter", filter, "channel-wise | shared | ideal");
        app->add_option("--mask", mask, "continuous | patch | grid");
        app->add_option("--grid-cell", grid_cell, "Grid mask cell size in pixels");
    }

    void overlay(json& j) const {
        if (d0_min) j["d0_min"] = *d0_min;
        if (d0_max) j["d0_max"] = *d0_max;
        if (orders) j["orders"] = parse_orders(*orders);
        if (filter) j["filter"] = *filter;
        if (mask) j["mask"] = *mask;
        if (grid_cell) j["grid_cell"] = *grid_cell;
    }

    RunConfig resolve() const {
        RunConfig config;
        json j = json::object();
        overlay(j);
        apply_config_json(config, j);
        config.filter.ranges.validate();
        return config;
    }
};

json report_json(const FilterReport& report) {
    json channels = json::array();
    for (const ChannelRange& c : report.channels) {
        channels.push_back({{"min", c.min}, {"max", c.max}, {"degenerate", c.degenerate}});
    }
    return {{"channels", channels}, {"max_imag_residue", report.max_imag_residue}};
}

// ------------------------------------------------------------------ augment

struct AugmentFlags {
    std::optional<std::string> config_file;
    std::optional<std::string> input;
    std::optional<std::string> labels;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> k;
    std::optional<int> epochs;
    std::optional<std::string> size;
    std::optional<std::string> resize;
    std::optional<int> workers;
    std::optional<double> alpha;
    SamplingFlags sampling;
};

int run_augment_command(const AugmentFlags& f) {
    RunConfig config;
    if (f.config_file) {
        config = load_config_file(*f.config_file);
    }
    json j = json::object();
    if (f.input) j["input"] = *f.input;
    if (f.labels) j["labels"] = *f.labels;
    if (f.out) j["out"] = *f.out;
    if (f.seed) j["seed"] = *f.seed;
    if (f.k) j["k"] = *f.k;
    if (f.epochs) j["epochs"] = *f.epochs;
    if (f.size) j["size"] = *f.size;
    if (f.resize) j["resize"] = *f.resize;
    if (f.workers) j["workers"] = *f.workers;
    if (f.alpha) j["alpha"] = *f.alpha;
    f.sampling.overlay(j);
    apply_config_json(config, j);
    if (config.input_dir.empty() || config.output_dir.empty()) {
        throw ConfigError("augment needs --input and --out (or both in --config)");
    }
    const AugmentSummary summary = run_augment(config);
    for (const auto& w : summary.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    std::cout << json{{"sources", summary.sources},
                      {"records", summary.records},
                      {"manifest", summary.manifest_path.string()},
                      {"warnings", summary.warnings}}
                     .dump(2)
              << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ filter

struct FilterFlags {
    std::string input;
    std::string out;
    std::string kind = "butterworth";
    std::vector<double> d0;
    std::vector<int> order;
    std::optional<std::uint64_t> seed;
    SamplingFlags sampling;
};

int run_filter_command(const FilterFlags& f) {
    const Image image = read_image(f.input);
    FilterSpec spec;
    if (!f.d0.empty()) {
        spec.kind = filter_kind_from_string(f.kind);
        std::vector<int> orders = f.order.empty() ? std::vector<int>(f.d0.size(), 1) : f.order;
        if (orders.size() == 1 && f.d0.size() > 1) {
            orders.assign(f.d0.size(), orders.front());
        }
        if (orders.size() != f.d0.size()) {
            throw ConfigError("--order needs one value or one per --d0 value");
        }
        for (std::size_t i = 0; i < f.d0.size(); ++i) {
            spec.per_channel.push_back({f.d0[i], orders[i]});
        }
    } else if (f.seed) {
        const RunConfig config = f.sampling.resolve();
        RngStream rng(*f.seed);
        spec = sample_filter_spec(rng, image.channels(), config.filter);
    } else {
        throw ConfigError("filter needs explicit --d0 values or a --seed to draw them");
    }
    const FilteredSample result = apply_filter(image, spec);
    ensure_parent(f.out);
    write_png(f.out, result.image);
    std::cout << json{{"filter", to_json(spec)}, {"report", report_json(result.report)}, {"output", f.out}}.dump(2)
              << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ blend

struct BlendFlags {
    std::string input;
    std::string out;
    std::optional<std::string> mask_out;
    std::uint64_t seed = 0;
    SamplingFlags sampling;
};

int run_blend_command(const BlendFlags& f) {
    const Image image = read_image(f.input);
    const RunConfig config = f.sampling.resolve();
    RngStream rng(f.seed);
    const ViewParams params =
        sample_view_params(rng, image.channels(), image.height(), image.width(), config.filter, config.mask);
    const ViewResult view = render_view(dft2(image), fs::path(f.input).stem().string(), params);
    ensure_parent(f.out);
    write_png(f.out, view.blended.image);
    if (f.mask_out) {
        Field mask(view.mask.height, view.mask.width, 1);
        std::copy(view.mask.values.begin(), view.mask.values.end(), mask.values().begin());
        ensure_parent(*f.mask_out);
        write_png(*f.mask_out, Image(std::move(mask)), 16);
    }
    std::cout << json{{"filter_m", to_json(params.filter_m)},
                      {"filter_n", to_json(params.filter_n)},
                      {"mask", to_json(params.mask)},
                      {"output_sha256", field_sha256(view.blended.image.field())},
                      {"output", f.out}}
                     .dump(2)
              << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ saliency

struct SaliencyFlags {
    std::string input;
    std::string out;
    std::optional<std::string> preview_out;
    std::optional<int> radius;
    std::optional<double> sigma;
    int divisor = KernelRule{}.divisor;
};

int run_saliency_command(const SaliencyFlags& f) {
    const Image image = read_image(f.input);
    KernelRule rule;
    rule.divisor = f.divisor;
    GaussianKernel kernel = default_kernel_for(image.height(), image.width(), rule);
    if (f.radius || f.sigma) {
        const int radius = f.radius.value_or(kernel.radius);
        kernel = make_gaussian_kernel(radius, f.sigma.value_or(radius * rule.sigma_ratio));
    }
    const SaliencyMap psi = structure_saliency(image, kernel);
    ensure_parent(f.out);
    write_npy(f.out, psi);
    if (f.preview_out) {
        ensure_parent(*f.preview_out);
        write_png(*f.preview_out, saliency_preview(psi));
    }
    std::cout << json{{"kernel", {{"radius", kernel.radius}, {"sigma", kernel.sigma}}},
                      {"shape", {psi.channels(), psi.height(), psi.width()}},
                      {"output", f.out}}
                     .dump(2)
              << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ preview

struct PreviewFlags {
    std::string manifest;
    std::string out;
    int n = 1;
    int tile = 128;
};

int run_preview_command(const PreviewFlags& f) {
    const PreviewResult result = preview(read_manifest(f.manifest), f.n, f.tile);
    for (const auto& w : result.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    ensure_parent(f.out);
    write_png(f.out, result.montage);
    std::cout << json{{"rows", result.rows},
                      {"tiles", {"original", "x_m", "x_n", "mask", "blended", "saliency"}},
                      {"width", result.montage.width()},
                      {"height", result.montage.height()},
                      {"output", f.out},
                      {"warnings", result.warnings}}
                     .dump(2)
              << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ bench

struct BenchFlags {
    BenchOptions options;
    std::string size = "512x512";
    std::optional<std::string> out;
    SamplingFlags sampling;
};

int run_bench_command(BenchFlags f) {
    const RunConfig config = f.sampling.resolve();
    f.options.size = parse_size(f.size);
    f.options.filter = config.filter;
    f.options.mask = config.mask;
    const json report = to_json(bench(f.options));
    if (f.out) {
        ensure_parent(*f.out);
        std::ofstream file(*f.out);
        if (!(file << report.dump(2) << '\n')) {
            throw IoError("cannot write " + *f.out);
        }
    }
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ losses

struct LossFlags {
    std::optional<std::string> sal_pred;
    std::optional<std::string> sal_target;
    std::optional<std::string> seg_pred;
    std::optional<std::string> labels;
    double alpha = 1.0;
};

/// (K, classes, H, W) probabilities; a single sigmoid channel p becomes (1-p, p).
std::vector<Field> load_segmentation(const fs::path& path) {
    std::vector<Field> fields = npy_to_fields(read_npy(path));
    for (Field& f : fields) {
        if (f.channels() != 1) {
            continue;
        }
        Field two(f.height(), f.width(), 2);
        for (int r = 0; r < f.height(); ++r) {
            for (int c = 0; c < f.width(); ++c) {
                two.at(0, r, c) = 1.0 - f.at(0, r, c);
                two.at(1, r, c) = f.at(0, r, c);
            }
        }
        f = std::move(two);
    }
    return fields;
}

/// Integer map (H, W) or (1, H, W), one-hot (classes, H, W), or a label PNG.
CategoryMap load_labels(const fs::path& path, int classes) {
    CategoryMap map;
    if (path.extension() != ".npy") {
        map = read_label_map(path);
    } else {
        const NpyArray array = read_npy(path);
        const auto& s = array.shape;
        if (s.size() == 3 && s[0] > 1) {
            map = category_map_from_one_hot(npy_to_fields(array).front());
        } else if (s.size() == 2 || (s.size() == 3 && s[0] == 1)) {
            map.height = static_cast<int>(s[s.size() - 2]);
            map.width = static_cast<int>(s[s.size() - 1]);
            map.labels.reserve(array.data.size());
            int max_label = 0;
            for (double v : array.data) {
                if (v < 0 || v != std::floor(v)) {
                    throw DataError(path.string() + ": labels must be non-negative integers");
                }
                map.labels.push_back(static_cast<int>(v));
                max_label = std::max(max_label, map.labels.back());
            }
            map.classes = std::max(2, max_label + 1);
        } else {
            throw DataError(path.string() + ": labels must be (H, W), (1, H, W) or one-hot (classes, H, W)");
        }
    }
    if (map.classes > classes) {
        throw DataError(path.string() + ": labels use " + std::to_string(map.classes) +
                        " classes but predictions have " + std::to_string(classes));
    }
    map.classes = classes;
    return map;
}

int run_losses_command(const LossFlags& f) {
    const bool self = f.sal_pred || f.sal_target;
    const bool seg = f.seg_pred || f.labels;
    if (self && !(f.sal_pred && f.sal_target)) {
        throw ConfigError("--sal-pred and --sal-target go together");
    }
    if (seg && !(f.seg_pred && f.labels)) {
        throw ConfigError("--seg-pred and --labels go together");
    }
    if (!self && !seg) {
        throw ConfigError("losses needs saliency and/or segmentation inputs");
    }
    json out = json::object();
    std::optional<double> l_sel;
    std::optional<double> l_seg;
    if (self) {
        const std::vector<Field> preds = npy_to_fields(read_npy(*f.sal_pred));
        const std::vector<Field> target = npy_to_fields(read_npy(*f.sal_target));
        if (target.size() != 1) {
            throw DataError("--sal-target must hold a single (C, H, W) or (H, W) array");
        }
        l_sel = loss_self(preds, target.front());
        out["loss_self"] = *l_sel;
        out["saliency_views"] = preds.size();
    }
    if (seg) {
        const std::vector<Field> probs = load_segmentation(*f.seg_pred);
        const CategoryMap labels = load_labels(*f.labels, probs.front().channels());
        l_seg = loss_seg(probs, labels);
        out["loss_seg"] = *l_seg;
        out["segmentation_views"] = probs.size();
        const BinaryMask truth = foreground_from_labels(labels);
        double dice = 0.0;
        double iou = 0.0;
        for (const Field& p : probs) {
            const OverlapScores s = dice_and_iou(foreground_from_probabilities(p), truth);
            dice += s.dice;
            iou += s.iou;
        }
        out["dice"] = dice / static_cast<double>(probs.size());
        out["iou"] = iou / static_cast<double>(probs.size());
    }
    out["alpha"] = f.alpha;
    if (l_sel && l_seg) {
        out["loss_total"] = loss_total(*l_sel, *l_seg, f.alpha);
    } else if (f.alpha < 0.0) {
        throw ConfigError("alpha must be non-negative");
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ replay

struct ReplayFlags {
    std::string manifest;
    std::optional<std::size_t> index;
    std::optional<std::string> config_file;
};

int run_replay_command(const ReplayFlags& f) {
    const std::vector<AugmentationRecord> records = read_manifest(f.manifest);
    std::optional<RunConfig> config;
    const fs::path sidecar = fs::path(f.manifest).parent_path() / "run_config.json";
    if (f.config_file) {
        config = load_config_file(*f.config_file);
    } else if (fs::exists(sidecar)) {
        config = load_config_file(sidecar);
    }
    std::size_t first = 0;
    std::size_t last = records.size();
    if (f.index) {
        if (*f.index >= records.size()) {
            throw ConfigError("--index " + std::to_string(*f.index) + " is past the manifest's " +
                              std::to_string(records.size()) + " records");
        }
        first = *f.index;
        last = first + 1;
    }
    std::size_t mismatches = 0;
    for (std::size_t i = first; i < last; ++i) {
        const ReplayResult r = replay(records[i], config);
        const bool ok = r.hash_matches && r.substream_matches && r.params_match.value_or(true);
        mismatches += ok ? 0 : 1;
        json line{{"index", i},
                  {"parent_image_id", records[i].parent_id},
                  {"view_index", records[i].view_index},
                  {"recorded_sha256", records[i].output_sha256},
                  {"replayed_sha256", r.sha256},
                  {"hash_matches", r.hash_matches},
                  {"substream_matches", r.substream_matches},
                  {"params_match", r.params_match ? json(*r.params_match) : json(nullptr)}};
        std::cout << line.dump() << '\n';
    }
    if (mismatches > 0) {
        throw DataError(std::to_string(mismatches) + " record(s) did not reproduce");
    }
    return kExitOk;
}

// ------------------------------------------------------------------ synth

struct SynthFlags {
    std::string out;
    int count = 4;
    std::string size = "64x64";
    std::uint64_t seed = 0;
};

int run_synth_command(const SynthFlags& f) {
    const ImageSize size = parse_size(f.size);
    if (f.count < 1) {
        throw ConfigError("--count must be at least 1");
    }
    const fs::path root(f.out);
    for (const char* sub : {"images", "labels"}) {
        ensure_parent(root / sub / "x");
    }
    json names = json::array();
    for (int i = 0; i < f.count; ++i) {
        std::ostringstream name;
        name << "fundus_";
        name.width(3);
        name.fill('0');
        name << i;
        const SyntheticSample s =
            synthetic_fundus(size.height, size.width, derive_seed(f.seed, {static_cast<std::uint64_t>(i)}));
        write_png(root / "images" / (name.str() + ".png"), s.image);
        write_label_png(root / "labels" / (name.str() + ".png"), s.label);
        names.push_back(name.str());
    }
    std::cout << json{{"images", (root / "images").string()}, {"labels", (root / "labels").string()}, {"ids", names}}
                     .dump(2)
              << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-domain augmentation for single-source domain generalization"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "freqaug 1.0.0");

    AugmentFlags augment_flags;
    auto* augment = app.add_subcommand("augment", "Augment a dataset: K blended views plus saliency targets per image");
    augment->add_option("--config", augment_flags.config_file, "JSON run config; flags override its values");
    augment->add_option("--input", augment_flags.input, "Image directory");
    augment->add_option("--labels", augment_flags.labels, "Label directory, paired by filename stem");
    augment->add_option("--out", augment_flags.out, "Output directory");
    augment->add_option("--seed", augment_flags.seed, "Master seed");
    augment->add_option("--k", augment_flags.k, "Views per source image (default 10)");
    augment->add_option("--epochs", augment_flags.epochs, "Epochs, each with fresh substreams (default 1)");
    augment->add_option("--size", augment_flags.size, "Target extent WxH (default 512x512)");
    augment->add_option("--resize", augment_flags.resize, "bilinear | none");
    augment->add_option("--workers", augment_flags.workers, "Worker threads (default 1)");
    augment->add_option("--alpha", augment_flags.alpha, "Segmentation loss weight stored with the run");
    augment_flags.sampling.attach(augment);

    FilterFlags filter_flags;
    auto* filter = app.add_subcommand("filter", "High-pass filter one image and min-max renormalize it");
    filter->add_option("--input", filter_flags.input)->required();
    filter->add_option("--out", filter_flags.out, "Output PNG")->required();
    filter->add_option("--kind", filter_flags.kind, "butterworth | ideal");
    filter->add_option("--d0", filter_flags.d0, "Cutoff fraction(s): one shared or one per channel")->delimiter(',');
    filter->add_option("--order", filter_flags.order, "Butterworth order(s)")->delimiter(',');
    filter->add_option("--seed", filter_flags.seed, "Draw parameters from this seed instead");
    filter_flags.sampling.attach(filter);

    BlendFlags blend_flags;
    auto* blend_cmd = app.add_subcommand("blend", "Render one blended view of an image");
    blend_cmd->add_option("--input", blend_flags.input)->required();
    blend_cmd->add_option("--out", blend_flags.out, "Output PNG")->required();
    blend_cmd->add_option("--mask-out", blend_flags.mask_out, "Also write the mask as a 16-bit PNG");
    blend_cmd->add_option("--seed", blend_flags.seed);
    blend_flags.sampling.attach(blend_cmd);

    SaliencyFlags saliency_flags;
    auto* saliency = app.add_subcommand("saliency", "Structure saliency of one image as an NPY target");
    saliency->add_option("--input", saliency_flags.input)->required();
    saliency->add_option("--out", saliency_flags.out, "Output NPY, shape (C, H, W)")->required();
    saliency->add_option("--preview", saliency_flags.preview_out, "Also write a min-max mapped PNG");
    saliency->add_option("--radius", saliency_flags.radius, "Kernel radius override");
    saliency->add_option("--sigma", saliency_flags.sigma, "Kernel sigma override");
    saliency->add_option("--kernel-divisor", saliency_flags.divisor, "radius = round(min(H, W) / divisor)");

    PreviewFlags preview_flags;
    auto* preview_cmd = app.add_subcommand("preview", "Montage of the first n manifest records");
    preview_cmd->add_option("--manifest", preview_flags.manifest)->required();
    preview_cmd->add_option("--out", preview_flags.out, "Output PNG")->required();
    preview_cmd->add_option("--n", preview_flags.n, "Rows");
    preview_cmd->add_option("--tile", preview_flags.tile, "Tile edge in pixels");

    BenchFlags bench_flags;
    auto* bench_cmd = app.add_subcommand("bench", "Throughput on synthetic images, one worker vs many");
    bench_cmd->add_option("--images", bench_flags.options.n_images);
    bench_cmd->add_option("--repetitions", bench_flags.options.repetitions);
    bench_cmd->add_option("--workers", bench_flags.options.workers);
    bench_cmd->add_option("--k", bench_flags.options.k);
    bench_cmd->add_option("--size", bench_flags.size, "WxH");
    bench_cmd->add_option("--seed", bench_flags.options.seed);
    bench_cmd->add_option("--out", bench_flags.out, "Also write the report to this JSON file");
    bench_flags.sampling.attach(bench_cmd);

    LossFlags loss_flags;
    auto* losses = app.add_subcommand("losses", "Evaluate the training losses on NPY tensors");
    losses->add_option("--sal-pred", loss_flags.sal_pred, "(K, C, H, W) saliency predictions");
    losses->add_option("--sal-target", loss_flags.sal_target, "(C, H, W) saliency target");
    losses->add_option("--seg-pred", loss_flags.seg_pred, "(K, classes, H, W) probabilities or (K, 1, H, W) sigmoid");
    losses->add_option("--labels", loss_flags.labels, "(H, W) class indices, one-hot (classes, H, W), or label PNG");
    losses->add_option("--alpha", loss_flags.alpha, "Weight of the segmentation loss");

    ReplayFlags replay_flags;
    auto* replay_cmd = app.add_subcommand("replay", "Rebuild manifest records and check their hashes");
    replay_cmd->add_option("--manifest", replay_flags.manifest)->required();
    replay_cmd->add_option("--index", replay_flags.index, "Only this record (default: all)");
    replay_cmd->add_option("--config", replay_flags.config_file,
                           "Run config for parameter re-derivation (default: run_config.json beside the manifest)");

    SynthFlags synth_flags;
    auto* synth = app.add_subcommand("synth", "Write synthetic fundus-like images and vessel labels");
    synth->add_option("--out", synth_flags.out)->required();
    synth->add_option("--count", synth_flags.count);
    synth->add_option("--size", synth_flags.size, "WxH");
    synth->add_option("--seed", synth_flags.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*augment) return run_augment_command(augment_flags);
        if (*filter) return run_filter_command(filter_flags);
        if (*blend_cmd) return run_blend_command(blend_flags);
        if (*saliency) return run_saliency_command(saliency_flags);
        if (*preview_cmd) return run_preview_command(preview_flags);
        if (*bench_cmd) return run_bench_command(bench_flags);
        if (*losses) return run_losses_command(loss_flags);
        if (*replay_cmd) return run_replay_command(replay_flags);
        if (*synth) return run_synth_command(synth_flags);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
