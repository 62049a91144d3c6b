#include "freqaug/npy.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <regex>
#include <sstream>

#include "freqaug/error.hpp"

namespace freqaug {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[] = "\x93NUMPY";
constexpr std::size_t kMagicSize = 6;

template <typename T>
T load_le(const unsigned char* p) {
    using U = std::conditional_t<sizeof(T) == 1, std::uint8_t,
              std::conditional_t<sizeof(T) == 2, std::uint16_t,
              std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>>;
    U u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        u |= static_cast<U>(static_cast<U>(p[i]) << (8 * i));
    }
    return std::bit_cast<T>(u);
}

template <typename U>
void store_le(std::string& out, U u) {
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
    }
}

}  // namespace

std::size_t NpyArray::element_count() const {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

NpyArray read_npy(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    const auto fail = [&](const std::string& what) { throw DataError(path.string() + ": " + what); };

    if (bytes.size() < 10 || std::memcmp(bytes.data(), kMagic, kMagicSize) != 0) {
        fail("not an NPY file");
    }
    const int major = bytes[6];
    std::size_t header_len = 0;
    std::size_t offset = 0;
    if (major == 1) {
        header_len = load_le<std::uint16_t>(bytes.data() + 8);
        offset = 10;
    } else if (major == 2 || major == 3) {
        if (bytes.size() < 12) {
            fail("truncated NPY header");
        }
        header_len = load_le<std::uint32_t>(bytes.data() + 8);
        offset = 12;
    } else {
        fail("unsupported NPY version");
    }
    if (offset + header_len > bytes.size()) {
        fail("truncated NPY header");
    }
    const std::string header(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                             bytes.begin() + static_cast<std::ptrdiff_t>(offset + header_len));

    NpyArray array;
    std::smatch m;
    if (!std::regex_search(header, m, std::regex(R"('descr'\s*:\s*'([^']+)')"))) {
        fail("NPY header lacks descr");
    }
    array.descr = m[1];
    if (std::regex_search(header, m, std::regex(R"('fortran_order'\s*:\s*True)"))) {
        fail("Fortran-ordered arrays are not supported");
    }
    if (!std::regex_search(header, m, std::regex(R"('shape'\s*:\s*\(([^)]*)\))"))) {
        fail("NPY header lacks shape");
    }
    const std::string dims = m[1];
    const std::regex digits(R"(\d+)");
    for (std::sregex_iterator it(dims.begin(), dims.end(), digits), end; it != end; ++it) {
        array.shape.push_back(std::stoull(it->str()));
    }

    const std::string& d = array.descr;
    if (d.size() < 3 || (d[0] != '<' && d[0] != '|')) {
        fail("unsupported dtype '" + d + "'");
    }
    const char kind = d[1];
    const std::size_t width = std::stoul(d.substr(2));
    const std::size_t count = array.element_count();
    const std::size_t payload = offset + header_len;
    if (payload + count * width > bytes.size()) {
        fail("truncated NPY payload");
    }
    array.data.resize(count);
    const unsigned char* p = bytes.data() + payload;
    for (std::size_t i = 0; i < count; ++i, p += width) {
        double v = 0.0;
        if (kind == 'f' && width == 4) {
            v = load_le<float>(p);
        } else if (kind == 'f' && width == 8) {
            v = load_le<double>(p);
        } else if (kind == 'i' && width == 1) {
            v = load_le<std::int8_t>(p);
        } else if (kind == 'i' && width == 2) {
            v = load_le<std::int16_t>(p);
        } else if (kind == 'i' && width == 4) {
            v = load_le<std::int32_t>(p);
        } else if (kind == 'i' && width == 8) {
            v = static_cast<double>(load_le<std::int64_t>(p));
        } else if ((kind == 'u' || kind == 'b') && width == 1) {
            v = load_le<std::uint8_t>(p);
        } else if (kind == 'u' && width == 2) {
            v = load_le<std::uint16_t>(p);
        } else if (kind == 'u' && width == 4) {
            v = load_le<std::uint32_t>(p);
        } else if (kind == 'u' && width == 8) {
            v = static_cast<double>(load_le<std::uint64_t>(p));
        } else {
            fail("unsupported dtype '" + d + "'");
        }
        array.data[i] = v;
    }
    return array;
}

void write_npy(const fs::path& path, std::span<const std::size_t> shape, std::span<const double> data, NpyType type) {
    const std::size_t count = std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
    if (count != data.size()) {
        throw InvalidInput("NPY shape does not match the data length");
    }
    std::ostringstream dict;
    dict << "{'descr': '" << (type == NpyType::float32 ? "<f4" : "<f8") << "', 'fortran_order': False, 'shape': (";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        dict << shape[i] << (shape.size() == 1 ? "," : i + 1 < shape.size() ? ", " : "");
    }
    dict << "), }";
    std::string header = dict.str();
    const std::size_t unpadded = kMagicSize + 4 + header.size() + 1;
    header.append((64 - unpadded % 64) % 64, ' ');
    header.push_back('\n');

    std::string out(kMagic, kMagicSize);
    out.push_back('\x01');
    out.push_back('\x00');
    store_le<std::uint16_t>(out, static_cast<std::uint16_t>(header.size()));
    out += header;
    out.reserve(out.size() + data.size() * (type == NpyType::float32 ? 4 : 8));
    for (double v : data) {
        if (type == NpyType::float32) {
            store_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
        } else {
            store_le(out, std::bit_cast<std::uint64_t>(v));
        }
    }

    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot write " + path.string());
    }
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) {
        throw IoError("failed writing " + path.string());
    }
}

void write_npy(const fs::path& path, const Field& field, NpyType type) {
    const std::size_t shape[] = {static_cast<std::size_t>(field.channels()), static_cast<std::size_t>(field.height()),
                                 static_cast<std::size_t>(field.width())};
    write_npy(path, shape, field.values(), type);
}

std::vector<Field> npy_to_fields(const NpyArray& array) {
    const auto& s = array.shape;
    std::size_t batch = 1;
    std::size_t channels = 1;
    std::size_t height = 0;
    std::size_t width = 0;
    if (s.size() == 2) {
        height = s[0];
        width = s[1];
    } else if (s.size() == 3) {
        channels = s[0];
        height = s[1];
        width = s[2];
    } else if (s.size() == 4) {
        batch = s[0];
        channels = s[1];
        height = s[2];
        width = s[3];
    } else {
        throw InvalidInput("expected a rank 2, 3 or 4 array");
    }
    std::vector<Field> fields;
    const std::size_t per = channels * height * width;
    for (std::size_t b = 0; b < batch; ++b) {
        Field f(static_cast<int>(height), static_cast<int>(width), static_cast<int>(channels));
        std::copy_n(array.data.begin() + static_cast<std::ptrdiff_t>(b * per), per, f.values().begin());
        fields.push_back(std::move(f));
    }
    return fields;
}

}  // namespace freqaug
