// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "freqaug/blending.hpp"
#include "freqaug/diversity.hpp"
#include "freqaug/error.hpp"
#include "freqaug/fft.hpp"
#include "freqaug/filters.hpp"
#include "freqaug/losses.hpp"
#include "freqaug/manifest.hpp"
#include "freqaug/rng.hpp"
#include "freqaug/saliency.hpp"
#include "freqaug/synthetic.hpp"
#include "oracles.hpp"

using namespace freqaug;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Collects failed checks for one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++count_;
        if (!ok && failures_.size() < 5) {
            failures_.push_back(what);
        }
        failed_ |= !ok;
    }
    void note(const std::string& text) { notes_.push_back(text); }
    bool passed() const { return !failed_; }
    std::string summary() const {
        std::ostringstream out;
        out << count_ << " checks";
        for (const auto& n : notes_) {
            out << "; " << n;
        }
        for (const auto& f : failures_) {
            out << "; failed: " << f;
        }
        return out.str();
    }

private:
    std::size_t count_ = 0;
    bool failed_ = false;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

std::string fmt(double v, int precision = 3) {
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = a.same_shape(b) ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    }
    return m;
}

// ------------------------------------------------------------------ criteria

void dft_suite(Check& check) {
    const auto start = std::chrono::steady_clock::now();
    double worst_forward = 0.0;
    double worst_round = 0.0;
    double worst_parseval = 0.0;
    std::uint64_t seed = 1;
    for (int h : {2, 3, 4, 8}) {
        for (int w : {2, 3, 4, 8}) {
            const Field x = oracle::random_field(h, w, 2, seed++);
            const Spectrum spec = dft2(x);
            for (int c = 0; c < 2; ++c) {
                const auto direct = oracle::dft2(x, c);
                double energy = 0.0;
                double spectral = 0.0;
                for (int u = 0; u < h; ++u) {
                    for (int v = 0; v < w; ++v) {
                        const Complex got = spec.at(c, centered_index(u, h), centered_index(v, w));
                        worst_forward = std::max(worst_forward, std::abs(got - direct[u * w + v]));
                        energy += x.at(c, u, v) * x.at(c, u, v);
                        spectral += std::norm(got);
                    }
                }
                worst_parseval = std::max(worst_parseval, std::abs(energy - spectral / (h * w)));

                double imag = 0.0;
                const auto back = oracle::idft2_real(direct, h, w, &imag);
                for (int i = 0; i < h * w; ++i) {
                    worst_round = std::max(worst_round, std::abs(back[i] - x.plane(c)[i]));
                }
            }
            worst_round = std::max(worst_round, max_abs_diff(idft2(spec).real, x));
            worst_round = std::max(worst_round, max_abs_diff(idft2(unshift_center(spec)).real, x));
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.expect(worst_forward <= 1e-9, "forward vs direct sum " + fmt(worst_forward));
    check.expect(worst_round <= 1e-9, "round trip " + fmt(worst_round));
    check.expect(worst_parseval <= 1e-9, "Parseval " + fmt(worst_parseval));
    check.expect(seconds < 10.0, "runtime " + fmt(seconds) + " s");
    check.note("max |dft2 - direct| " + fmt(worst_forward) + ", round trip " + fmt(worst_round) + ", Parseval " +
               fmt(worst_parseval) + ", " + fmt(seconds) + " s");
}

void butterworth_suite(Check& check) {
    for (int n : {1, 2, 3}) {
        for (double d0 : {0.25, 1.0, 2.5, 10.24}) {
            check.expect(std::abs(butterworth_response(d0, d0, n) - 0.5) <= 1e-12, "eta(D0) n=" + std::to_string(n));
        }
    }
    check.expect(butterworth_response(1.0, 2.0, 1) == 0.2, "eta(D0/2, n=1) == 0.2");
    check.expect(butterworth_response(5.12, 10.24, 1) == 0.2, "eta(D0/2, n=1) == 0.2 at D0 = 10.24");

    const double d0 = 5.0;
    for (int n : {1, 2, 3}) {
        double previous = butterworth_response(0.0, d0, n);
        check.expect(previous == 0.0, "eta(0) == 0");
        for (int i = 1; i <= 1000; ++i) {
            const double g = butterworth_response(i * 0.01 * 2 * d0, d0, n);
            check.expect(g > previous && g < 1.0, "monotone n=" + std::to_string(n) + " i=" + std::to_string(i));
            previous = g;
        }
    }
    for (int i = 1; i <= 1000; ++i) {
        const double d = i * 0.01 * 2 * d0;
        if (d == d0) {
            continue;
        }
        for (int n = 1; n < 3; ++n) {
            const double lo = butterworth_response(d, d0, n);
            const double hi = butterworth_response(d, d0, n + 1);
            check.expect(d < d0 ? hi < lo : hi > lo, "steeper at d=" + fmt(d));
        }
    }
}

void filtering_suite(Check& check) {
    const Image flat(Field(32, 32, 3, 0.6));
    double input_energy = 0.0;
    for (double v : flat.field().values()) {
        input_energy += v * v;
    }
    const FilterSpec spec_flat{FilterKind::butterworth, {{0.04, 1}, {0.01, 2}, {0.02, 3}}};
    const InverseResult raw_flat = filter_unnormalized(dft2(flat), spec_flat);
    double energy = 0.0;
    for (double v : raw_flat.real.values()) {
        energy += v * v;
    }
    check.expect(energy < 1e-6 * input_energy, "constant-image energy ratio " + fmt(energy / input_energy));

    const Image img(oracle::random_field(32, 32, 3, 3232));
    const FilterSpec spec{FilterKind::butterworth, {{0.04, 1}, {0.013, 2}, {0.027, 3}}};
    const Field expected = oracle::filter_raw(img.field(), {{false, 0.04, 1}, {false, 0.013, 2}, {false, 0.027, 3}});
    const double raw_err = max_abs_diff(filter_unnormalized(dft2(img), spec).real, expected);
    const double out_err = max_abs_diff(apply_filter(img, spec).image.field(), oracle::minmax(expected));
    check.expect(raw_err <= 1e-9, "composed oracle, raw " + fmt(raw_err));
    check.expect(out_err <= 1e-9, "composed oracle, renormalized " + fmt(out_err));

    const int s = 256;
    Field square(s, s, 1, 0.0);
    for (int r = s / 4; r < 3 * s / 4; ++r) {
        for (int c = s / 4; c < 3 * s / 4; ++c) {
            square.at(0, r, c) = 1.0;
        }
    }
    const Image white(square);
    const double ideal_tv =
        oracle::total_variation(apply_filter(white, FilterSpec{FilterKind::ideal, {{0.04, 1}}}).image.field());
    std::string tvs = "TV ideal " + fmt(ideal_tv, 6);
    for (int n : {1, 2, 3}) {
        const double bw_tv =
            oracle::total_variation(apply_filter(white, FilterSpec{FilterKind::butterworth, {{0.04, n}}}).image.field());
        check.expect(ideal_tv > bw_tv, "ringing n=" + std::to_string(n));
        tvs += ", butterworth n=" + std::to_string(n) + " " + fmt(bw_tv, 6);
    }
    check.note("energy ratio " + fmt(energy / input_energy) + ", oracle error " + fmt(std::max(raw_err, out_err)));
    check.note(tvs);
}

FilteredSample as_sample(const Field& f, const std::string& parent) { return {Image(f), {}, parent}; }

BlendMask filled_mask(int h, int w, double value) {
    return {h, w, MaskKind::continuous, MaskCenter{}, std::vector<double>(static_cast<std::size_t>(h) * w, value)};
}

void blend_suite(Check& check) {
    const int h = 13;
    const int w = 17;
    const auto a = as_sample(oracle::random_field(h, w, 3, 1), "p");
    const auto b = as_sample(oracle::random_field(h, w, 3, 2), "p");
    check.expect(blend(a, b, filled_mask(h, w, 1.0)).image == a.image, "M = 1 gives x_m");
    check.expect(blend(a, b, filled_mask(h, w, 0.0)).image == b.image, "M = 0 gives x_n");
    const BlendMask centered = continuous_mask(h, w, MaskCenter{5, 7});
    check.expect(blend(a, a, centered).image == a.image, "x_m = x_n is unchanged");

    RngStream rng(77);
    double worst_sym = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
        const int th = rng.uniform_int(2, 30);
        const int tw = rng.uniform_int(2, 30);
        const auto p = as_sample(oracle::random_field(th, tw, 3, 300 + trial), "q");
        const auto q = as_sample(oracle::random_field(th, tw, 3, 400 + trial), "q");
        MaskSampling sampling;
        sampling.kind = static_cast<MaskKind>(trial % 3);
        BlendMask m = make_mask(th, tw, sample_mask_params(rng, th, tw, sampling));
        const Image x = blend(p, q, m).image;
        for (double& v : m.values) {
            v = 1.0 - v;
        }
        worst_sym = std::max(worst_sym, max_abs_diff(x.field(), blend(q, p, m).image.field()));
    }
    check.expect(worst_sym <= 1e-12, "complement symmetry " + fmt(worst_sym));

    for (int trial = 0; trial < 20; ++trial) {
        const int th = rng.uniform_int(2, 40);
        const int tw = rng.uniform_int(2, 40);
        const MaskCenter c = sample_center(rng, th, tw);
        const BlendMask m = continuous_mask(th, tw, c);
        check.expect(m.at(c.row, c.col) == 0.0, "center is zero");
        const double corners[] = {m.at(0, 0), m.at(0, tw - 1), m.at(th - 1, 0), m.at(th - 1, tw - 1)};
        check.expect(*std::max_element(std::begin(corners), std::end(corners)) == 1.0, "farthest corner is one");
        check.expect(*std::max_element(m.values.begin(), m.values.end()) == 1.0, "mask max is one");
    }

    // Center at the top-left pixel; D_max = sqrt(8).
    const double r8 = std::sqrt(8.0);
    const double hand[3][3] = {{0.0, 1 / r8, 2 / r8}, {1 / r8, std::sqrt(2.0) / r8, std::sqrt(5.0) / r8},
                               {2 / r8, std::sqrt(5.0) / r8, 1.0}};
    const BlendMask m3 = continuous_mask(3, 3, MaskCenter{0, 0});
    // Center in the middle; every corner is sqrt(2) away.
    const double r2 = std::sqrt(2.0);
    const double hand_mid[3][3] = {{1.0, 1 / r2, 1.0}, {1 / r2, 0.0, 1 / r2}, {1.0, 1 / r2, 1.0}};
    const BlendMask m3c = continuous_mask(3, 3, MaskCenter{1, 1});
    double worst_hand = 0.0;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            worst_hand = std::max(worst_hand, std::abs(m3.at(r, c) - hand[r][c]));
            worst_hand = std::max(worst_hand, std::abs(m3c.at(r, c) - hand_mid[r][c]));
        }
    }
    check.expect(worst_hand <= 1e-12, "3x3 hand values " + fmt(worst_hand));
    check.note("complement symmetry " + fmt(worst_sym) + ", 3x3 hand error " + fmt(worst_hand));
}

void saliency_suite(Check& check) {
    double worst_recon = 0.0;
    double worst_dense = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        const Field x = oracle::random_field(16, 16, 3, 1600 + trial);
        const GaussianKernel kernel = trial == 0 ? default_kernel_for(16, 16) : make_gaussian_kernel(trial + 1, 0.4 * trial + 0.5);
        const Field blurred = gaussian_blur(x, kernel);
        const Field psi = structure_saliency(x, kernel);
        for (std::size_t i = 0; i < x.size(); ++i) {
            worst_recon = std::max(worst_recon, std::abs(psi.values()[i] + blurred.values()[i] - x.values()[i]));
        }
        worst_dense = std::max(worst_dense, max_abs_diff(blurred, oracle::dense_blur(x, kernel.radius, kernel.sigma)));
    }
    check.expect(worst_recon <= 1e-12, "reconstruction " + fmt(worst_recon));
    check.expect(worst_dense <= 1e-12, "dense oracle " + fmt(worst_dense));

    const Field flat(24, 20, 3, 0.37);
    double worst_flat = 0.0;
    for (double v : structure_saliency(flat, default_kernel_for(24, 20)).values()) {
        worst_flat = std::max(worst_flat, std::abs(v));
    }
    check.expect(worst_flat <= 1e-12, "constant image saliency " + fmt(worst_flat));
    check.note("reconstruction " + fmt(worst_recon) + ", dense oracle " + fmt(worst_dense) + ", constant " +
               fmt(worst_flat));
}

Field probabilities(int h, int w, const std::vector<double>& class0) {
    Field p(h, w, 2);
    for (int i = 0; i < h * w; ++i) {
        p.plane(0)[i] = class0[i];
        p.plane(1)[i] = 1.0 - class0[i];
    }
    return p;
}

void loss_suite(Check& check) {
    const Field target = oracle::random_field(4, 5, 3, 45);
    const std::vector<Field> perfect{target, target, target};
    check.expect(loss_self(perfect, target) == 0.0, "perfect reconstruction gives 0");

    const Field zero(4, 5, 3, 0.0);
    const std::vector<Field> constant{Field(4, 5, 3, 0.3), Field(4, 5, 3, 0.3)};
    check.expect(std::abs(loss_self(constant, zero) - 0.09) <= 1e-15, "constant c gives c^2");

    // K = 2 on 2x2: squared errors {1, 0, 4, 1} and {0.25, 0.25, 0, 9}; sum 15.5 over 8 elements.
    Field psi(2, 2, 1);
    std::copy_n(std::vector<double>{1.0, -1.0, 0.5, 2.0}.begin(), 4, psi.values().begin());
    Field v1(2, 2, 1);
    std::copy_n(std::vector<double>{0.0, -1.0, 2.5, 3.0}.begin(), 4, v1.values().begin());
    Field v2(2, 2, 1);
    std::copy_n(std::vector<double>{1.5, -0.5, 0.5, -1.0}.begin(), 4, v2.values().begin());
    const std::vector<Field> hand{v1, v2};
    check.expect(std::abs(loss_self(hand, psi) - 15.5 / 8) <= 1e-15, "K=2 2x2 hand oracle");

    const CategoryMap two{1, 2, 2, {0, 1}};
    const std::vector<Field> one_hot{probabilities(1, 2, {1.0, 0.0})};
    check.expect(loss_seg(one_hot, two) < 1e-12, "matching one-hot gives 0");
    const std::vector<Field> uniform{probabilities(1, 2, {0.5, 0.5})};
    check.expect(std::abs(loss_seg(uniform, two) - 0.6931) <= 1e-4, "uniform over 2 classes gives ln 2");
    const std::vector<Field> mixed{probabilities(1, 2, {0.9, 0.2})};
    const double mixed_loss = loss_seg(mixed, two);
    check.expect(std::abs(mixed_loss - (-std::log(0.9) - std::log(0.8)) / 2) <= 1e-12, "mixed 2-pixel case");
    check.expect(std::abs(mixed_loss - 0.1643) <= 1e-4, "mixed 2-pixel case rounds to 0.1643");
    bool rejected = false;
    try {
        loss_seg(std::vector<Field>{probabilities(1, 2, {1.1, 0.5})}, two);
    } catch (const InvalidInput&) {
        rejected = true;
    }
    check.expect(rejected, "probability outside [0,1] is rejected");

    check.expect(loss_total(0.7, 0.4, 0.0) == 0.7, "alpha 0 gives l_sel");
    check.expect(loss_total(0.0, 0.4, 1.0) == 0.4, "l_sel 0, alpha 1 gives l_seg");
    check.expect(loss_total(0.5, 0.25, 2.0) == 1.0, "0.5 + 2 * 0.25 = 1");
    rejected = false;
    try {
        loss_total(0.5, 0.25, -1.0);
    } catch (const ConfigError&) {
        rejected = true;
    }
    check.expect(rejected, "negative alpha is a configuration error");

    const auto mask = [](std::vector<std::uint8_t> v) { return BinaryMask{2, 4, std::move(v)}; };
    const OverlapScores same = dice_and_iou(mask({1, 1, 0, 0, 1, 0, 0, 0}), mask({1, 1, 0, 0, 1, 0, 0, 0}));
    check.expect(same.dice == 1.0 && same.iou == 1.0, "identical masks give (1, 1)");
    const OverlapScores apart = dice_and_iou(mask({1, 1, 0, 0, 0, 0, 0, 0}), mask({0, 0, 1, 1, 0, 0, 0, 0}));
    check.expect(apart.dice == 0.0 && apart.iou == 0.0, "disjoint masks give (0, 0)");
    const OverlapScores half = dice_and_iou(mask({1, 1, 1, 1, 0, 0, 0, 0}), mask({1, 1, 0, 0, 1, 1, 0, 0}));
    check.expect(half.dice == 0.5 && std::abs(half.iou - 1.0 / 3) <= 1e-15, "|A|=|B|=4, |A&B|=2");
    const OverlapScores empty = dice_and_iou(mask(std::vector<std::uint8_t>(8, 0)), mask(std::vector<std::uint8_t>(8, 0)));
    check.expect(empty.dice == 1.0 && empty.iou == 1.0, "both empty gives (1, 1)");

    std::mt19937 gen(2024);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 1000; ++trial) {
        BinaryMask p{6, 7, std::vector<std::uint8_t>(42)};
        BinaryMask t{6, 7, std::vector<std::uint8_t>(42)};
        for (int i = 0; i < 42; ++i) {
            p.values[i] = coin(gen);
            t.values[i] = coin(gen);
        }
        const OverlapScores s = dice_and_iou(p, t);
        check.expect(s.dice >= s.iou, "dice >= iou, trial " + std::to_string(trial));
        const bool extreme = s.iou == 0.0 || s.iou == 1.0;
        check.expect(extreme == (s.dice == s.iou), "equality only at 0 or 1, trial " + std::to_string(trial));
    }
    check.note("1000 random mask pairs");
}

// ------------------------------------------------------------------ CLI criteria

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
    const std::string command = std::string("'") + FREQAUG_CLI_PATH + "' " + args + " 2>/dev/null";
    CliRun run;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        return run;
    }
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
        run.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class ScratchDir {
public:
    ScratchDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("freqaug_acceptance_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

void determinism(Check& check) {
    ScratchDir dir;
    const fs::path& root = dir.path();
    check.expect(cli("synth --out " + q(root) + " --count 4 --size 128x128 --seed 11").code == 0, "synth fixture");

    std::vector<std::string> manifests;
    fs::path first_out;
    for (int workers : {1, 1, 4, 4}) {
        const fs::path out = root / ("run" + std::to_string(manifests.size()));
        const CliRun run = cli("augment --input " + q(root / "images") + " --labels " + q(root / "labels") +
                               " --out " + q(out) + " --seed 31337 --k 10 --size 128x128 --workers " +
                               std::to_string(workers));
        check.expect(run.code == 0, "augment with " + std::to_string(workers) + " workers");
        manifests.push_back(slurp(out / "manifest.jsonl"));
        if (first_out.empty()) {
            first_out = out;
        }
    }
    check.expect(!manifests[0].empty(), "manifest written");
    for (std::size_t i = 1; i < manifests.size(); ++i) {
        check.expect(manifests[i] == manifests[0], "manifest " + std::to_string(i) + " is byte-identical");
    }

    std::vector<AugmentationRecord> records;
    try {
        records = read_manifest(first_out / "manifest.jsonl");
    } catch (const Error& e) {
        check.expect(false, e.what());
    }
    check.expect(records.size() == 40, "40 records");
    for (int run = 1; run < 4; ++run) {
        const fs::path other = root / ("run" + std::to_string(run));
        for (const auto& r : records) {
            check.expect(slurp(first_out / r.image_path) == slurp(other / r.image_path),
                         r.image_path + " identical in run " + std::to_string(run));
        }
    }

    const CliRun replay = cli("replay --manifest " + q(first_out / "manifest.jsonl"));
    check.expect(replay.code == 0, "replay exits 0");
    std::size_t matched = 0;
    std::istringstream lines(replay.out);
    for (std::string line; std::getline(lines, line);) {
        try {
            const json j = json::parse(line);
            matched += j.at("hash_matches").get<bool>() && j.at("params_match").get<bool>() ? 1 : 0;
        } catch (const json::exception&) {
            check.expect(false, "replay line is JSON");
        }
    }
    check.expect(matched == records.size(), "every record replays to its hash");
    check.note("4 runs (workers 1, 1, 4, 4) of 40 records; " + std::to_string(matched) + " replayed hashes match");
}

void diversity_witness(Check& check) {
    std::string magnitudes;
    for (int i = 0; i < 4; ++i) {
        const Image source = synthetic_fundus(512, 512, 100 + i).image;
        const std::vector<Image> freq = frequency_views(source, 10, 900 + i);
        const std::vector<Image> geo = geometric_views(source, 10, 900 + i);
        const double d_freq = mean_pairwise_l2(freq);
        const double d_geo = mean_pairwise_l2(geo);
        check.expect(d_freq > d_geo, "image " + std::to_string(i) + ": frequency " + fmt(d_freq, 4) +
                                         " <= geometric " + fmt(d_geo, 4));
        magnitudes += (i ? ", " : "") + std::string("image ") + std::to_string(i) + " freq " + fmt(d_freq, 4) +
                      " vs geo " + fmt(d_geo, 4);
    }
    check.note(magnitudes);
}

void bench_smoke(Check& check) {
    ScratchDir dir;
    const fs::path report_path = dir.path() / "bench.json";
    const CliRun run = cli("bench --images 20 --size 512x512 --k 10 --workers 4 --repetitions 3 --seed 5 --out " +
                           q(report_path));
    check.expect(run.code == 0, "bench exits 0");
    json report;
    try {
        report = json::parse(slurp(report_path));
        check.expect(json::parse(run.out) == report, "stdout matches the report file");
    } catch (const json::exception& e) {
        check.expect(false, std::string("report is JSON: ") + e.what());
        return;
    }
    try {
        check.expect(report.at("n_images") == 20 && report.at("k") == 10 && report.at("size") == "512x512" &&
                         report.at("workers") == 4 && report.at("repetitions") == 3,
                     "report echoes its options");
        for (const char* side : {"single_worker", "multi_worker"}) {
            const json& t = report.at(side);
            const auto seconds = t.at("seconds").get<std::vector<double>>();
            check.expect(seconds.size() == 3, std::string(side) + " has one timing per repetition");
            const double lo = t.at("min").get<double>();
            const double mid = t.at("p50").get<double>();
            const double p90 = t.at("p90").get<double>();
            const double hi = t.at("max").get<double>();
            check.expect(lo > 0 && lo <= mid && mid <= p90 && p90 <= hi, std::string(side) + " percentiles ordered");
        }
        const double single = report.at("images_per_sec").at("single").get<double>();
        const double multi = report.at("images_per_sec").at("multi").get<double>();
        const double scaling = report.at("scaling").get<double>();
        check.expect(std::abs(single - 20 / report.at("single_worker").at("p50").get<double>()) <= 1e-9 * single,
                     "single throughput from the median");
        check.expect(std::abs(report.at("views_per_sec").at("multi").get<double>() - 10 * multi) <= 1e-9 * multi,
                     "views per second = K * images per second");
        check.expect(std::abs(scaling - multi / single) <= 1e-12, "scaling = multi / single");
        check.expect(report.at("per_image_ms").get<double>() > 0, "per-image time");
        check.expect(scaling >= 0.95, "multi-worker throughput " + fmt(scaling) + " x single");
        check.note("single " + fmt(single) + " img/s, multi " + fmt(multi) + " img/s, scaling " + fmt(scaling) +
                   ", " + report.at("effective_workers").dump() + " effective workers on " +
                   report.at("hardware_threads").dump() + " hardware threads");
    } catch (const json::exception& e) {
        check.expect(false, std::string("report field missing: ") + e.what());
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"dft-oracle", dft_suite},
        {"butterworth-analytic", butterworth_suite},
        {"filtering", filtering_suite},
        {"blend-mask", blend_suite},
        {"saliency", saliency_suite},
        {"losses", loss_suite},
        {"determinism", determinism},
        {"diversity-witness", diversity_witness},
        {"benchmark-smoke", bench_smoke},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("threw: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (check.passed() ? "PASS " : "FAIL ") << name << " (" << fmt(seconds) << " s): " << check.summary()
                  << std::endl;
        failed += check.passed() ? 0 : 1;
    }
    std::cout << (failed ? std::to_string(failed) + " of " : "all ") << criteria.size() << " criteria "
              << (failed ? "failed" : "passed") << std::endl;
    return failed ? 1 : 0;
}
