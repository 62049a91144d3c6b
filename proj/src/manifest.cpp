#include "freqaug/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "freqaug/error.hpp"

namespace freqaug {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used, 16);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw DataError("malformed substream id '" + s + "'");
    }
    return v;
}

}  // namespace

json to_json(const FilterSpec& spec) {
    json channels = json::array();
    for (const auto& p : spec.per_channel) {
        json entry{{"d0_fraction", p.d0_fraction}};
        if (spec.kind == FilterKind::butterworth) {
            entry["order"] = p.order;
        }
        channels.push_back(entry);
    }
    return {{"kind", to_string(spec.kind)}, {"channels", channels}};
}

FilterSpec filter_spec_from_json(const json& j) {
    FilterSpec spec;
    spec.kind = filter_kind_from_string(j.at("kind").get<std::string>());
    for (const auto& entry : j.at("channels")) {
        ButterworthParams p;
        p.d0_fraction = entry.at("d0_fraction").get<double>();
        p.order = entry.value("order", 1);
        spec.per_channel.push_back(p);
    }
    return spec;
}

json to_json(const MaskParams& params) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, MaskCenter>) {
                return {{"kind", "continuous"}, {"center", {p.col, p.row}}};
            } else if constexpr (std::is_same_v<T, PatchRect>) {
                return {{"kind", "patch"}, {"rect", {{"top", p.top}, {"left", p.left}, {"height", p.height}, {"width", p.width}}}};
            } else {
                return {{"kind", "grid"}, {"cell", p.size}};
            }
        },
        params);
}

MaskParams mask_params_from_json(const json& j) {
    switch (mask_kind_from_string(j.at("kind").get<std::string>())) {
        case MaskKind::continuous: {
            const auto& c = j.at("center");
            return MaskCenter{c.at(0).get<int>(), c.at(1).get<int>()};
        }
        case MaskKind::patch: {
            const auto& r = j.at("rect");
            return PatchRect{r.at("top").get<int>(), r.at("left").get<int>(), r.at("height").get<int>(),
                             r.at("width").get<int>()};
        }
        case MaskKind::grid:
            return GridCell{j.at("cell").get<int>()};
    }
    throw DataError("unknown mask kind");
}

json to_json(const AugmentationRecord& r) {
    json j;
    j["parent_image_id"] = r.parent_id;
    j["image_index"] = r.image_index;
    j["epoch"] = r.epoch;
    j["view_index"] = r.view_index;
    j["seed"] = r.seed;
    j["substream"] = hex64(r.substream);
    j["source_path"] = r.source_path;
    j["size"] = to_string(r.size);
    j["resize"] = to_string(r.resize);
    j["filter_m"] = to_json(r.filter_m);
    j["filter_n"] = to_json(r.filter_n);
    j["mask"] = to_json(r.mask);
    j["saliency_kernel"] = {{"radius", r.kernel_radius}, {"sigma", r.kernel_sigma}};
    j["outputs"] = {{"image", r.image_path},
                    {"saliency", r.saliency_path},
                    {"label", r.label_path ? json(*r.label_path) : json(nullptr)}};
    j["output_sha256"] = r.output_sha256;
    return j;
}

AugmentationRecord record_from_json(const json& j) {
    try {
        AugmentationRecord r;
        r.parent_id = j.at("parent_image_id").get<std::string>();
        r.image_index = j.at("image_index").get<int>();
        r.epoch = j.at("epoch").get<int>();
        r.view_index = j.at("view_index").get<int>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.substream = parse_hex64(j.at("substream").get<std::string>());
        r.source_path = j.at("source_path").get<std::string>();
        r.size = parse_size(j.at("size").get<std::string>());
        r.resize = resize_policy_from_string(j.at("resize").get<std::string>());
        r.filter_m = filter_spec_from_json(j.at("filter_m"));
        r.filter_n = filter_spec_from_json(j.at("filter_n"));
        r.mask = mask_params_from_json(j.at("mask"));
        r.kernel_radius = j.at("saliency_kernel").at("radius").get<int>();
        r.kernel_sigma = j.at("saliency_kernel").at("sigma").get<double>();
        const auto& out = j.at("outputs");
        r.image_path = out.at("image").get<std::string>();
        r.saliency_path = out.at("saliency").get<std::string>();
        if (out.contains("label") && !out["label"].is_null()) {
            r.label_path = out["label"].get<std::string>();
        }
        r.output_sha256 = j.at("output_sha256").get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed manifest record: ") + e.what());
    } catch (const ConfigError& e) {
        throw DataError(std::string("malformed manifest record: ") + e.what());
    }
}

std::string to_jsonl_line(const AugmentationRecord& record) { return to_json(record).dump(); }

void write_manifest(const fs::path& path, const std::vector<AugmentationRecord>& records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    for (const auto& r : records) {
        out << to_jsonl_line(r) << '\n';
    }
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

std::vector<AugmentationRecord> read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open manifest " + path.string());
    }
    std::vector<AugmentationRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            records.push_back(record_from_json(json::parse(line)));
        } catch (const json::parse_error& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

}  // namespace freqaug
