#ifndef FLOWBAND_FLOW_IO_HPP
#define FLOWBAND_FLOW_IO_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowband/grid.hpp"

namespace flowband {

/// Malformed byte stream (bad magic, truncation, oversize header). Thrown
/// with the offending byte offset in the message.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Middlebury .flo header: little-endian float32 magic 202021.25, then
/// width and height as little-endian int32.
struct FloHeader {
    std::int32_t width = 0;
    std::int32_t height = 0;

    static constexpr float kMagic = 202021.25f;
    /// Default cap on width*height accepted by read_flo.
    static constexpr std::int64_t kDefaultPixelCap = 100000000;
};

/// Parses a .flo byte stream: 12-byte header then width*height interleaved
/// (x, y) little-endian float32 pairs in row-major order. Structural
/// problems raise FormatError; non-finite payload values raise
/// std::invalid_argument naming the pixel.
FlowField read_flo(const std::vector<std::uint8_t>& bytes,
                   std::int64_t pixel_cap = FloHeader::kDefaultPixelCap);

/// Serializes a field to .flo bytes; read_flo(write_flo(f)) == f bit-exactly
/// whenever every component is float32-representable.
std::vector<std::uint8_t> write_flo(const FlowField& field);

/// Scalar field as .flo-style bytes with (value, 0) pairs, for inspection
/// dumps of delta fields and loss maps.
std::vector<std::uint8_t> write_scalar_flo(const ScalarField& field);

/// Binary mask as a P5 portable graymap, 0 -> 0 and 1 -> 255.
std::vector<std::uint8_t> write_mask_pgm(const BinaryMask& mask);

/// Label grid as a P6 portable pixmap. Label 0 is black; labels 1..K-1 get
/// hues evenly spaced over the color circle at full saturation/value.
std::vector<std::uint8_t> write_labels_ppm(const LabelGrid& labels, int k);

/// Flow field as a P6 portable pixmap: hue encodes direction, saturation
/// encodes magnitude relative to the field's max magnitude (value stays at
/// full), so zero-motion pixels render white. Deterministic per field.
std::vector<std::uint8_t> write_flow_ppm(const FlowField& field);

/// Parses a P5 graymap back to a binary mask (nonzero byte -> 1).
BinaryMask read_mask_pgm(const std::vector<std::uint8_t>& bytes);

// File-level helpers. Writes go to a temporary sibling first and are
// renamed into place, so failed runs leave no partial outputs.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

FlowField read_flo_file(const std::filesystem::path& path);
void write_flo_file(const std::filesystem::path& path, const FlowField& field);

} // namespace flowband

#endif
