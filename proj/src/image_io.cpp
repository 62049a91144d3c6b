#include "freqaug/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include "freqaug/error.hpp"

namespace freqaug {

namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext;
}

std::vector<unsigned char> slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

[[noreturn]] void bad_data(const fs::path& path, const std::string& what) {
    throw DataError(path.string() + ": " + what);
}

// ---------------------------------------------------------------- PNG

struct MemoryReader {
    const std::vector<unsigned char>* bytes;
    std::size_t offset;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
    auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
    if (reader->offset + count > reader->bytes->size()) {
        png_error(png, "truncated PNG stream");
    }
    std::memcpy(out, reader->bytes->data() + reader->offset, count);
    reader->offset += count;
}

void png_warning_sink(png_structp, png_const_charp) {}

RawImage decode_png(const fs::path& path, const std::vector<unsigned char>& bytes, bool palette_indices) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
        bad_data(path, "not a PNG file");
    }
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_warning_sink);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("libpng initialisation failed");
    }
    RawImage raw;
    std::vector<png_bytep> rows;
    std::vector<unsigned char> pixels;
    MemoryReader reader{&bytes, 0};

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        bad_data(path, "corrupt PNG data");
    }
    png_set_read_fn(png, &reader, png_read_from_memory);
    png_read_info(png, info);

    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE) {
        if (palette_indices) {
            png_set_packing(png);
        } else {
            png_set_palette_to_rgb(png);
        }
    }
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
    }
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    raw.width = static_cast<int>(png_get_image_width(png, info));
    raw.height = static_cast<int>(png_get_image_height(png, info));
    raw.channels = png_get_channels(png, info);
    raw.bit_depth = png_get_bit_depth(png, info) == 16 ? 16 : 8;
    raw.max_value = raw.bit_depth == 16 ? 65535 : 255;

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    pixels.resize(row_bytes * raw.height);
    rows.resize(raw.height);
    for (int r = 0; r < raw.height; ++r) {
        rows[r] = pixels.data() + r * row_bytes;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    if (raw.channels != 1 && raw.channels != 3) {
        bad_data(path, "unsupported PNG channel layout");
    }
    const std::size_t count = static_cast<std::size_t>(raw.width) * raw.height * raw.channels;
    raw.samples.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        raw.samples[i] = raw.bit_depth == 16 ? static_cast<std::uint16_t>((pixels[2 * i] << 8) | pixels[2 * i + 1])
                                             : pixels[i];
    }
    return raw;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) {
            std::fclose(f);
        }
    }
};

// ---------------------------------------------------------------- BMP

std::uint32_t le32(const std::vector<unsigned char>& b, std::size_t at) {
    return b[at] | (b[at + 1] << 8) | (b[at + 2] << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}
std::uint16_t le16(const std::vector<unsigned char>& b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

RawImage decode_bmp(const fs::path& path, const std::vector<unsigned char>& b) {
    if (b.size() < 54 || b[0] != 'B' || b[1] != 'M') {
        bad_data(path, "not a BMP file");
    }
    const std::uint32_t data_offset = le32(b, 10);
    const std::uint32_t header_size = le32(b, 14);
    if (header_size < 40) {
        bad_data(path, "unsupported BMP header");
    }
    const auto width = static_cast<std::int32_t>(le32(b, 18));
    const auto signed_height = static_cast<std::int32_t>(le32(b, 22));
    const int bpp = le16(b, 28);
    const std::uint32_t compression = le32(b, 30);
    std::uint32_t palette_size = le32(b, 46);
    if (width <= 0 || signed_height == 0) {
        bad_data(path, "invalid BMP dimensions");
    }
    if (!(compression == 0 || (compression == 3 && bpp == 32))) {
        bad_data(path, "compressed BMP is not supported");
    }
    if (bpp != 8 && bpp != 24 && bpp != 32) {
        bad_data(path, "unsupported BMP bit depth " + std::to_string(bpp));
    }
    const bool top_down = signed_height < 0;
    const int height = top_down ? -signed_height : signed_height;

    std::vector<std::array<unsigned char, 3>> palette;
    bool gray_palette = true;
    if (bpp == 8) {
        if (palette_size == 0) {
            palette_size = 256;
        }
        const std::size_t at = 14 + header_size;
        if (at + 4 * palette_size > b.size()) {
            bad_data(path, "truncated BMP palette");
        }
        for (std::uint32_t i = 0; i < palette_size; ++i) {
            const std::array<unsigned char, 3> rgb{b[at + 4 * i + 2], b[at + 4 * i + 1], b[at + 4 * i]};
            gray_palette = gray_palette && rgb[0] == rgb[1] && rgb[1] == rgb[2];
            palette.push_back(rgb);
        }
    }

    RawImage raw;
    raw.width = width;
    raw.height = height;
    raw.channels = (bpp == 8 && gray_palette) ? 1 : 3;
    raw.bit_depth = 8;
    raw.max_value = 255;
    raw.samples.resize(static_cast<std::size_t>(width) * height * raw.channels);

    const std::size_t stride = ((static_cast<std::size_t>(width) * bpp + 31) / 32) * 4;
    if (data_offset + stride * height > b.size()) {
        bad_data(path, "truncated BMP pixel data");
    }
    for (int r = 0; r < height; ++r) {
        const int src_row = top_down ? r : height - 1 - r;
        const unsigned char* line = b.data() + data_offset + stride * src_row;
        for (int c = 0; c < width; ++c) {
            std::uint16_t* dst = &raw.samples[(static_cast<std::size_t>(r) * width + c) * raw.channels];
            if (bpp == 8) {
                if (line[c] >= palette.size()) {
                    bad_data(path, "BMP palette index out of range");
                }
                const auto& rgb = palette[line[c]];
                for (int ch = 0; ch < raw.channels; ++ch) {
                    dst[ch] = rgb[ch];
                }
            } else {
                const unsigned char* px = line + c * (bpp / 8);
                dst[0] = px[2];
                dst[1] = px[1];
                dst[2] = px[0];
            }
        }
    }
    return raw;
}

// ---------------------------------------------------------------- PNM

RawImage decode_pnm(const fs::path& path, const std::vector<unsigned char>& b) {
    if (b.size() < 3 || b[0] != 'P' || (b[1] != '2' && b[1] != '3' && b[1] != '5' && b[1] != '6')) {
        bad_data(path, "not a PGM/PPM file");
    }
    const bool ascii = b[1] == '2' || b[1] == '3';
    const int channels = (b[1] == '3' || b[1] == '6') ? 3 : 1;
    std::size_t pos = 2;

    const auto next_token = [&]() -> long {
        for (;;) {
            while (pos < b.size() && std::isspace(b[pos])) {
                ++pos;
            }
            if (pos < b.size() && b[pos] == '#') {
                while (pos < b.size() && b[pos] != '\n') {
                    ++pos;
                }
                continue;
            }
            break;
        }
        if (pos >= b.size() || !std::isdigit(b[pos])) {
            bad_data(path, "malformed PNM header");
        }
        long value = 0;
        while (pos < b.size() && std::isdigit(b[pos])) {
            value = value * 10 + (b[pos] - '0');
            if (value > 1'000'000'000L) {
                bad_data(path, "PNM value too large");
            }
            ++pos;
        }
        return value;
    };

    RawImage raw;
    raw.width = static_cast<int>(next_token());
    raw.height = static_cast<int>(next_token());
    const long maxval = next_token();
    if (raw.width <= 0 || raw.height <= 0 || maxval <= 0 || maxval > 65535) {
        bad_data(path, "invalid PNM header values");
    }
    raw.channels = channels;
    raw.max_value = static_cast<int>(maxval);
    raw.bit_depth = maxval > 255 ? 16 : 8;
    const std::size_t count = static_cast<std::size_t>(raw.width) * raw.height * channels;
    raw.samples.resize(count);

    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = next_token();
            if (v > maxval) {
                bad_data(path, "PNM sample exceeds maxval");
            }
            raw.samples[i] = static_cast<std::uint16_t>(v);
        }
        return raw;
    }
    ++pos;  // single whitespace after maxval
    const std::size_t bytes_per = raw.bit_depth == 16 ? 2 : 1;
    if (pos + count * bytes_per > b.size()) {
        bad_data(path, "truncated PNM pixel data");
    }
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint16_t v = bytes_per == 2 ? static_cast<std::uint16_t>((b[pos + 2 * i] << 8) | b[pos + 2 * i + 1])
                                               : b[pos + i];
        if (v > maxval) {
            bad_data(path, "PNM sample exceeds maxval");
        }
        raw.samples[i] = v;
    }
    return raw;
}

RawImage read_raw(const fs::path& path, bool palette_indices) {
    const auto bytes = slurp(path);
    const std::string ext = lower_extension(path);
    if (ext == ".png") {
        return decode_png(path, bytes, palette_indices);
    }
    if (ext == ".bmp") {
        return decode_bmp(path, bytes);
    }
    if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") {
        return decode_pnm(path, bytes);
    }
    bad_data(path, "unsupported image format");
}

}  // namespace

bool is_supported_image(const fs::path& path) {
    const std::string ext = lower_extension(path);
    return ext == ".png" || ext == ".bmp" || ext == ".ppm" || ext == ".pgm" || ext == ".pnm";
}

RawImage read_raw_image(const fs::path& path) { return read_raw(path, false); }

Image to_unit_image(const RawImage& raw) {
    Field field(raw.height, raw.width, raw.channels);
    const double scale = 1.0 / raw.max_value;
    for (int r = 0; r < raw.height; ++r) {
        for (int c = 0; c < raw.width; ++c) {
            for (int ch = 0; ch < raw.channels; ++ch) {
                const auto s = raw.samples[(static_cast<std::size_t>(r) * raw.width + c) * raw.channels + ch];
                field.at(ch, r, c) = std::min(1.0, s * scale);
            }
        }
    }
    return Image(std::move(field));
}

Image read_image(const fs::path& path) {
    const RawImage raw = read_raw_image(path);
    try {
        return to_unit_image(raw);
    } catch (const InvalidInput& e) {
        bad_data(path, e.what());
    }
}

CategoryMap read_label_map(const fs::path& path) {
    const RawImage raw = read_raw(path, true);
    CategoryMap map{raw.height, raw.width, 2, {}};
    map.labels.resize(static_cast<std::size_t>(raw.width) * raw.height);
    int max_label = 0;
    for (std::size_t i = 0; i < map.labels.size(); ++i) {
        map.labels[i] = raw.samples[i * raw.channels];
        max_label = std::max(max_label, map.labels[i]);
    }
    map.classes = std::max(2, max_label + 1);
    return map;
}

RawImage quantize(const Image& image, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16) {
        throw InvalidInput("PNG bit depth must be 8 or 16");
    }
    RawImage raw;
    raw.height = image.height();
    raw.width = image.width();
    raw.channels = image.channels();
    raw.bit_depth = bit_depth;
    raw.max_value = bit_depth == 16 ? 65535 : 255;
    raw.samples.resize(static_cast<std::size_t>(raw.width) * raw.height * raw.channels);
    for (int r = 0; r < raw.height; ++r) {
        for (int c = 0; c < raw.width; ++c) {
            for (int ch = 0; ch < raw.channels; ++ch) {
                raw.samples[(static_cast<std::size_t>(r) * raw.width + c) * raw.channels + ch] =
                    static_cast<std::uint16_t>(std::lround(image.at(ch, r, c) * raw.max_value));
            }
        }
    }
    return raw;
}

void write_png(const fs::path& path, const RawImage& raw) {
    if (raw.channels != 1 && raw.channels != 3 && raw.channels != 4) {
        throw InvalidInput("PNG output needs 1, 3 or 4 channels");
    }
    std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.string().c_str(), "wb"));
    if (!file) {
        throw IoError("cannot write " + path.string());
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_warning_sink);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng initialisation failed");
    }
    const std::size_t bytes_per = raw.bit_depth == 16 ? 2 : 1;
    const std::size_t row_bytes = static_cast<std::size_t>(raw.width) * raw.channels * bytes_per;
    std::vector<unsigned char> pixels(row_bytes * raw.height);
    for (std::size_t i = 0; i < raw.samples.size(); ++i) {
        if (bytes_per == 2) {
            pixels[2 * i] = static_cast<unsigned char>(raw.samples[i] >> 8);
            pixels[2 * i + 1] = static_cast<unsigned char>(raw.samples[i] & 0xff);
        } else {
            pixels[i] = static_cast<unsigned char>(raw.samples[i]);
        }
    }
    std::vector<png_bytep> rows(raw.height);
    for (int r = 0; r < raw.height; ++r) {
        rows[r] = pixels.data() + r * row_bytes;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed writing " + path.string());
    }
    png_init_io(png, file.get());
    const int color = raw.channels == 1   ? PNG_COLOR_TYPE_GRAY
                      : raw.channels == 3 ? PNG_COLOR_TYPE_RGB
                                          : PNG_COLOR_TYPE_RGBA;
    png_set_IHDR(png, info, raw.width, raw.height, raw.bit_depth, color, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fflush(file.get()) != 0) {
        throw IoError("failed writing " + path.string());
    }
}

void write_png(const fs::path& path, const Image& image, int bit_depth) {
    write_png(path, quantize(image, bit_depth));
}

void write_label_png(const fs::path& path, const CategoryMap& labels) {
    RawImage raw;
    raw.height = labels.height;
    raw.width = labels.width;
    raw.channels = 1;
    const int max_label = labels.labels.empty() ? 0 : *std::max_element(labels.labels.begin(), labels.labels.end());
    raw.bit_depth = max_label > 255 ? 16 : 8;
    raw.max_value = raw.bit_depth == 16 ? 65535 : 255;
    raw.samples.assign(labels.labels.begin(), labels.labels.end());
    write_png(path, raw);
}

}  // namespace freqaug
