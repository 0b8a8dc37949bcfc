#include "ldsal/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "ldsal/errors.hpp"

namespace ldsal {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in) throw IoError("read failed: " + path);
    return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path);
}

[[noreturn]] void format_fail(const std::string& path, std::size_t offset, const std::string& what) {
    throw FormatError(path + ": " + what + " at byte " + std::to_string(offset));
}

// PNM headers are ASCII tokens separated by whitespace; '#' starts a
// comment running to end of line.
struct PnmHeaderParser {
    const std::string& bytes;
    const std::string& path;
    std::size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            const char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    }

    unsigned read_uint(const char* name) {
        skip_space_and_comments();
        if (pos >= bytes.size()) format_fail(path, pos, std::string("missing ") + name);
        if (!std::isdigit(static_cast<unsigned char>(bytes[pos])))
            format_fail(path, pos, std::string("malformed ") + name);
        unsigned long v = 0;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            v = v * 10 + static_cast<unsigned long>(bytes[pos] - '0');
            if (v > 1000000000UL) format_fail(path, pos, std::string(name) + " out of range");
            ++pos;
        }
        return static_cast<unsigned>(v);
    }
};

struct PnmRaw {
    bool color = false;
    int width = 0, height = 0;
    unsigned maxval = 0;
    std::vector<unsigned> samples;  // interleaved for color
};

PnmRaw read_pnm_raw(const std::string& path) {
    const std::string bytes = read_file(path);
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        format_fail(path, 0, "unsupported magic (want P5 or P6)");

    PnmRaw raw;
    raw.color = bytes[1] == '6';
    PnmHeaderParser parser{bytes, path, 2};
    raw.width = static_cast<int>(parser.read_uint("width"));
    raw.height = static_cast<int>(parser.read_uint("height"));
    raw.maxval = parser.read_uint("maxval");
    if (raw.width < 1 || raw.height < 1) format_fail(path, parser.pos, "non-positive dimensions");
    if (raw.maxval != 255 && raw.maxval != 65535)
        format_fail(path, parser.pos, "unsupported maxval (want 255 or 65535)");

    // exactly one whitespace byte separates the header from the payload
    if (parser.pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[parser.pos])))
        format_fail(path, parser.pos, "missing whitespace before payload");
    std::size_t data_pos = parser.pos + 1;

    const std::size_t channels = raw.color ? 3 : 1;
    const std::size_t n = static_cast<std::size_t>(raw.width) * raw.height * channels;
    const std::size_t bytes_per = raw.maxval == 255 ? 1 : 2;
    if (bytes.size() - data_pos < n * bytes_per)
        format_fail(path, bytes.size(), "payload truncated");

    raw.samples.resize(n);
    if (bytes_per == 1) {
        for (std::size_t i = 0; i < n; ++i)
            raw.samples[i] = static_cast<unsigned char>(bytes[data_pos + i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) {  // big-endian 16-bit
            const unsigned hi = static_cast<unsigned char>(bytes[data_pos + 2 * i]);
            const unsigned lo = static_cast<unsigned char>(bytes[data_pos + 2 * i + 1]);
            raw.samples[i] = (hi << 8) | lo;
        }
    }
    return raw;
}

}  // namespace

PnmImage read_pnm(const std::string& path) {
    const PnmRaw raw = read_pnm_raw(path);
    const double scale = 1.0 / raw.maxval;
    if (!raw.color) {
        GrayImage img(raw.width, raw.height);
        for (std::size_t i = 0; i < raw.samples.size(); ++i)
            img.data()[i] = raw.samples[i] * scale;
        return img;
    }
    ColorImage img(raw.width, raw.height);
    for (std::size_t i = 0; i < raw.samples.size() / 3; ++i) {
        img.r.data()[i] = raw.samples[3 * i] * scale;
        img.g.data()[i] = raw.samples[3 * i + 1] * scale;
        img.b.data()[i] = raw.samples[3 * i + 2] * scale;
    }
    return img;
}

namespace {

unsigned char quantize8(double v, const std::string& path) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("write_pnm: value outside [0,1] writing " + path);
    return static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));  // round half up
}

}  // namespace

void write_pnm(const FloatMap& map, const std::string& path) {
    std::string bytes = "P5\n" + std::to_string(map.width()) + " " + std::to_string(map.height()) + "\n255\n";
    bytes.reserve(bytes.size() + map.size());
    for (const double v : map.data()) bytes.push_back(static_cast<char>(quantize8(v, path)));
    write_file(path, bytes);
}

void write_pnm(const ColorImage& image, const std::string& path) {
    std::string bytes = "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
    bytes.reserve(bytes.size() + image.r.size() * 3);
    for (std::size_t i = 0; i < image.r.size(); ++i) {
        bytes.push_back(static_cast<char>(quantize8(image.r.data()[i], path)));
        bytes.push_back(static_cast<char>(quantize8(image.g.data()[i], path)));
        bytes.push_back(static_cast<char>(quantize8(image.b.data()[i], path)));
    }
    write_file(path, bytes);
}

namespace {

void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t get_u32le(const std::string& bytes, std::size_t pos) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + 3])) << 24);
}

}  // namespace

FloatMap read_fmap(const std::string& path) {
    const std::string bytes = read_file(path);
    if (bytes.size() < 12 || bytes.compare(0, 4, "FMAP") != 0)
        format_fail(path, 0, "bad magic (want FMAP)");
    const std::uint32_t w = get_u32le(bytes, 4);
    const std::uint32_t h = get_u32le(bytes, 8);
    if (w < 1 || h < 1) format_fail(path, 4, "non-positive dimensions");
    const std::size_t n = static_cast<std::size_t>(w) * h;
    if (bytes.size() - 12 < n * 4) format_fail(path, bytes.size(), "payload truncated");
    FloatMap map(static_cast<int>(w), static_cast<int>(h));
    static_assert(sizeof(float) == 4);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t u = get_u32le(bytes, 12 + 4 * i);
        float f;
        std::memcpy(&f, &u, 4);
        map.data()[i] = f;
    }
    return map;
}

void write_fmap(const FloatMap& map, const std::string& path) {
    std::string bytes = "FMAP";
    bytes.reserve(12 + map.size() * 4);
    put_u32le(bytes, static_cast<std::uint32_t>(map.width()));
    put_u32le(bytes, static_cast<std::uint32_t>(map.height()));
    for (const double v : map.data()) {
        const float f = static_cast<float>(v);  // FMAP payload is binary32
        std::uint32_t u;
        std::memcpy(&u, &f, 4);
        put_u32le(bytes, u);
    }
    write_file(path, bytes);
}

ContourMask read_contour_mask(const std::string& path) {
    const PnmRaw raw = read_pnm_raw(path);
    if (raw.color) throw FormatError(path + ": contour masks must be P5, got P6");
    ContourMask mask(raw.width, raw.height);
    for (std::size_t i = 0; i < raw.samples.size(); ++i)
        mask.data()[i] = raw.samples[i] > 0 ? 1 : 0;
    return mask;
}

LabelMap read_label_map(const std::string& path) {
    const PnmRaw raw = read_pnm_raw(path);
    if (raw.color) throw FormatError(path + ": label maps must be P5, got P6");
    std::map<unsigned, std::int32_t> dense;
    for (const unsigned s : raw.samples) dense.emplace(s, 0);
    std::int32_t next = 0;
    for (auto& [value, label] : dense) label = next++;
    LabelMap labels(raw.width, raw.height);
    for (std::size_t i = 0; i < raw.samples.size(); ++i)
        labels.data()[i] = dense[raw.samples[i]];
    return labels;
}

int label_count(const LabelMap& labels) {
    std::int32_t mx = 0;
    for (const std::int32_t v : labels.data()) mx = std::max(mx, v);
    return mx + 1;
}

}  // namespace ldsal
