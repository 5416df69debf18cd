#include "flowband/flow_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace flowband {

namespace {

float read_le_float(const std::uint8_t* p) {
    std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                      (static_cast<std::uint32_t>(p[2]) << 16) |
                      (static_cast<std::uint32_t>(p[3]) << 24);
    return std::bit_cast<float>(u);
}

std::int32_t read_le_i32(const std::uint8_t* p) {
    std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                      (static_cast<std::uint32_t>(p[2]) << 16) |
                      (static_cast<std::uint32_t>(p[3]) << 24);
    return std::bit_cast<std::int32_t>(u);
}

void append_le_u32(std::vector<std::uint8_t>& out, std::uint32_t u) {
    out.push_back(static_cast<std::uint8_t>(u & 0xFF));
    out.push_back(static_cast<std::uint8_t>((u >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((u >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((u >> 24) & 0xFF));
}

void append_le_float(std::vector<std::uint8_t>& out, float v) {
    append_le_u32(out, std::bit_cast<std::uint32_t>(v));
}

void append_le_i32(std::vector<std::uint8_t>& out, std::int32_t v) {
    append_le_u32(out, std::bit_cast<std::uint32_t>(v));
}

// Hue in [0,1), s/v in [0,1] -> RGB bytes.
void hsv_to_rgb(double h, double s, double v, std::uint8_t rgb[3]) {
    const double hh = 6.0 * (h - std::floor(h));
    const int sector = std::min(5, static_cast<int>(hh));
    const double f = hh - sector;
    const double p = v * (1.0 - s);
    const double q = v * (1.0 - s * f);
    const double t = v * (1.0 - s * (1.0 - f));
    double r, g, b;
    switch (sector) {
        case 0: r = v; g = t; b = p; break;
        case 1: r = q; g = v; b = p; break;
        case 2: r = p; g = v; b = t; break;
        case 3: r = p; g = q; b = v; break;
        case 4: r = t; g = p; b = v; break;
        default: r = v; g = p; b = q; break;
    }
    rgb[0] = static_cast<std::uint8_t>(std::lround(255.0 * r));
    rgb[1] = static_cast<std::uint8_t>(std::lround(255.0 * g));
    rgb[2] = static_cast<std::uint8_t>(std::lround(255.0 * b));
}

std::string pnm_header(const char* tag, int width, int height) {
    return std::string(tag) + "\n" + std::to_string(width) + " " + std::to_string(height) +
           "\n255\n";
}

} // namespace

FlowField read_flo(const std::vector<std::uint8_t>& bytes, std::int64_t pixel_cap) {
    if (bytes.size() < 12)
        throw FormatError("flo: stream has " + std::to_string(bytes.size()) +
                          " bytes, header needs 12");
    const float magic = read_le_float(bytes.data());
    if (!(magic == FloHeader::kMagic))
        throw FormatError("flo: bad magic at byte offset 0 (got " + std::to_string(magic) +
                          ", want 202021.25)");
    const std::int32_t width = read_le_i32(bytes.data() + 4);
    const std::int32_t height = read_le_i32(bytes.data() + 8);
    if (width <= 0) throw FormatError("flo: non-positive width at byte offset 4");
    if (height <= 0) throw FormatError("flo: non-positive height at byte offset 8");
    const std::int64_t pixels = static_cast<std::int64_t>(width) * height;
    if (pixels > pixel_cap)
        throw FormatError("flo: " + std::to_string(pixels) + " pixels exceeds cap of " +
                          std::to_string(pixel_cap));
    const std::size_t need = 12 + static_cast<std::size_t>(pixels) * 8;
    if (bytes.size() < need)
        throw FormatError("flo: payload truncated at byte offset " + std::to_string(bytes.size()) +
                          ", need " + std::to_string(need) + " bytes");

    std::vector<Vec2> values;
    values.reserve(static_cast<std::size_t>(pixels));
    for (std::int64_t i = 0; i < pixels; ++i) {
        const std::uint8_t* p = bytes.data() + 12 + i * 8;
        const double x = read_le_float(p);
        const double y = read_le_float(p + 4);
        if (!std::isfinite(x) || !std::isfinite(y))
            throw std::invalid_argument(
                "flo: non-finite flow value at pixel " +
                detail::coord_str(static_cast<int>(i / width), static_cast<int>(i % width)));
        values.push_back({x, y});
    }
    return FlowField(height, width, std::move(values));
}

std::vector<std::uint8_t> write_flo(const FlowField& field) {
    std::vector<std::uint8_t> out;
    out.reserve(12 + static_cast<std::size_t>(field.shape().pixel_count()) * 8);
    append_le_float(out, FloHeader::kMagic);
    append_le_i32(out, field.width());
    append_le_i32(out, field.height());
    for (const Vec2& v : field.values()) {
        append_le_float(out, static_cast<float>(v.x));
        append_le_float(out, static_cast<float>(v.y));
    }
    return out;
}

std::vector<std::uint8_t> write_scalar_flo(const ScalarField& field) {
    std::vector<std::uint8_t> out;
    out.reserve(12 + static_cast<std::size_t>(field.shape().pixel_count()) * 8);
    append_le_float(out, FloHeader::kMagic);
    append_le_i32(out, field.width());
    append_le_i32(out, field.height());
    for (double v : field.values()) {
        append_le_float(out, static_cast<float>(v));
        append_le_float(out, 0.0f);
    }
    return out;
}

std::vector<std::uint8_t> write_mask_pgm(const BinaryMask& mask) {
    const std::string header = pnm_header("P5", mask.width(), mask.height());
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + mask.bits().size());
    for (auto b : mask.bits()) out.push_back(b ? 255 : 0);
    return out;
}

std::vector<std::uint8_t> write_labels_ppm(const LabelGrid& labels, int k) {
    if (k < 2) throw std::invalid_argument("write_labels_ppm: k must be >= 2");
    if (labels.max_label() >= k)
        throw std::domain_error("write_labels_ppm: label exceeds k-1");
    const std::string header = pnm_header("P6", labels.width(), labels.height());
    std::vector<std::uint8_t> out(header.begin(), header.end());
    std::vector<std::uint8_t> palette(static_cast<std::size_t>(k) * 3, 0);
    for (int label = 1; label < k; ++label) {
        const double hue = static_cast<double>(label - 1) / (k - 1);
        hsv_to_rgb(hue, 1.0, 1.0, &palette[static_cast<std::size_t>(label) * 3]);
    }
    out.reserve(out.size() + labels.labels().size() * 3);
    for (auto l : labels.labels()) {
        const std::uint8_t* rgb = &palette[static_cast<std::size_t>(l) * 3];
        out.push_back(rgb[0]);
        out.push_back(rgb[1]);
        out.push_back(rgb[2]);
    }
    return out;
}

std::vector<std::uint8_t> write_flow_ppm(const FlowField& field) {
    double max_mag = 0.0;
    for (const Vec2& v : field.values()) max_mag = std::max(max_mag, v.norm());
    const std::string header = pnm_header("P6", field.width(), field.height());
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + field.values().size() * 3);
    for (const Vec2& v : field.values()) {
        std::uint8_t rgb[3];
        const double mag = v.norm();
        if (max_mag == 0.0 || mag == 0.0) {
            rgb[0] = rgb[1] = rgb[2] = 255;
        } else {
            double angle = std::atan2(v.y, v.x); // (-pi, pi]
            double hue = angle / (2.0 * 3.14159265358979323846);
            if (hue < 0.0) hue += 1.0;
            hsv_to_rgb(hue, mag / max_mag, 1.0, rgb);
        }
        out.push_back(rgb[0]);
        out.push_back(rgb[1]);
        out.push_back(rgb[2]);
    }
    return out;
}

namespace {

// Minimal PNM header scanner: single whitespace tokens, '#' comments.
struct PnmCursor {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < bytes.size()) {
            const char c = static_cast<char>(bytes[pos]);
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int() {
        skip_space();
        const std::size_t start = pos;
        long v = 0;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1000000000L) throw FormatError("pgm: oversized number at byte offset " +
                                                   std::to_string(start));
            ++pos;
        }
        if (pos == start)
            throw FormatError("pgm: expected integer at byte offset " + std::to_string(pos));
        return v;
    }
};

} // namespace

BinaryMask read_mask_pgm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw FormatError("pgm: bad magic at byte offset 0 (want P5)");
    PnmCursor cur{bytes, 2};
    const long width = cur.next_int();
    const long height = cur.next_int();
    const long maxval = cur.next_int();
    if (width < 1 || height < 1)
        throw FormatError("pgm: non-positive dimensions in header");
    if (maxval < 1 || maxval > 255)
        throw FormatError("pgm: unsupported maxval " + std::to_string(maxval));
    if (cur.pos >= bytes.size())
        throw FormatError("pgm: missing payload at byte offset " + std::to_string(cur.pos));
    ++cur.pos; // single whitespace byte after maxval
    const std::size_t need = cur.pos + static_cast<std::size_t>(width) * height;
    if (bytes.size() < need)
        throw FormatError("pgm: payload truncated at byte offset " + std::to_string(bytes.size()) +
                          ", need " + std::to_string(need) + " bytes");
    BinaryMask mask(static_cast<int>(height), static_cast<int>(width));
    for (long r = 0; r < height; ++r)
        for (long c = 0; c < width; ++c)
            mask.set(static_cast<int>(r), static_cast<int>(c),
                     bytes[cur.pos + static_cast<std::size_t>(r) * width + c] != 0);
    return mask;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

FlowField read_flo_file(const std::filesystem::path& path) {
    try {
        return read_flo(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_flo_file(const std::filesystem::path& path, const FlowField& field) {
    write_file_atomic(path, write_flo(field));
}

} // namespace flowband
