#ifndef FLOWBAND_GRID_HPP
#define FLOWBAND_GRID_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowband {

/// 2D motion vector, units pixels/frame. x is the horizontal component
/// (column displacement), y the vertical component (row displacement).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Vec2 a, Vec2 b) { return !(a == b); }

    double squared_norm() const { return x * x + y * y; }
    double norm() const { return std::sqrt(squared_norm()); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

/// Pixel address, (row, col) with row indexing height.
struct PixelCoord {
    int row = 0;
    int col = 0;

    friend bool operator==(PixelCoord a, PixelCoord b) { return a.row == b.row && a.col == b.col; }
    friend bool operator!=(PixelCoord a, PixelCoord b) { return !(a == b); }
    friend bool operator<(PixelCoord a, PixelCoord b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    }
};

struct GridShape {
    int height = 0;
    int width = 0;

    bool contains(PixelCoord p) const {
        return p.row >= 0 && p.row < height && p.col >= 0 && p.col < width;
    }
    std::int64_t pixel_count() const {
        return static_cast<std::int64_t>(height) * static_cast<std::int64_t>(width);
    }
    friend bool operator==(GridShape a, GridShape b) {
        return a.height == b.height && a.width == b.width;
    }
    friend bool operator!=(GridShape a, GridShape b) { return !(a == b); }
};

namespace detail {
void check_shape(int height, int width);
std::string coord_str(int row, int col);
} // namespace detail

/// Dense H x W grid of motion vectors, row-major. Values must be finite.
class FlowField {
public:
    FlowField(int height, int width)
        : height_(height), width_(width) {
        detail::check_shape(height, width);
        values_.assign(static_cast<std::size_t>(height) * width, Vec2{});
    }

    FlowField(int height, int width, std::vector<Vec2> values)
        : height_(height), width_(width), values_(std::move(values)) {
        detail::check_shape(height, width);
        if (values_.size() != static_cast<std::size_t>(height) * width)
            throw std::invalid_argument("FlowField: value count does not match shape");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!values_[i].finite())
                throw std::invalid_argument("FlowField: non-finite vector at pixel " +
                                            detail::coord_str(static_cast<int>(i) / width_,
                                                              static_cast<int>(i) % width_));
        }
    }

    static FlowField uniform(int height, int width, Vec2 v) {
        FlowField f(height, width);
        for (auto& value : f.values_) value = v;
        if (!v.finite()) throw std::invalid_argument("FlowField: non-finite uniform value");
        return f;
    }

    int height() const { return height_; }
    int width() const { return width_; }
    GridShape shape() const { return {height_, width_}; }

    Vec2 at(int row, int col) const { return values_[index(row, col)]; }
    Vec2 at(PixelCoord p) const { return at(p.row, p.col); }

    void set(int row, int col, Vec2 v) {
        if (!v.finite())
            throw std::invalid_argument("FlowField: non-finite vector at pixel " +
                                        detail::coord_str(row, col));
        values_[index(row, col)] = v;
    }

    const std::vector<Vec2>& values() const { return values_; }

    friend bool operator==(const FlowField& a, const FlowField& b) {
        return a.height_ == b.height_ && a.width_ == b.width_ && a.values_ == b.values_;
    }

private:
    std::size_t index(int row, int col) const {
        if (row < 0 || row >= height_ || col < 0 || col >= width_)
            throw std::domain_error("FlowField: pixel " + detail::coord_str(row, col) +
                                    " out of bounds");
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int height_;
    int width_;
    std::vector<Vec2> values_;
};

/// Dense H x W grid of reals, row-major. Carries angle fields (radians in
/// (-pi, pi]) and directional-difference fields ([0, pi] wrapped, [0, 2pi)
/// literal); those range guarantees are established by the producing
/// operations, the type itself only enforces finiteness.
class ScalarField {
public:
    ScalarField(int height, int width, double fill = 0.0)
        : height_(height), width_(width) {
        detail::check_shape(height, width);
        if (!std::isfinite(fill)) throw std::invalid_argument("ScalarField: non-finite fill");
        values_.assign(static_cast<std::size_t>(height) * width, fill);
    }

    ScalarField(int height, int width, std::vector<double> values)
        : height_(height), width_(width), values_(std::move(values)) {
        detail::check_shape(height, width);
        if (values_.size() != static_cast<std::size_t>(height) * width)
            throw std::invalid_argument("ScalarField: value count does not match shape");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]))
                throw std::invalid_argument("ScalarField: non-finite value at pixel " +
                                            detail::coord_str(static_cast<int>(i) / width_,
                                                              static_cast<int>(i) % width_));
        }
    }

    int height() const { return height_; }
    int width() const { return width_; }
    GridShape shape() const { return {height_, width_}; }

    double at(int row, int col) const { return values_[index(row, col)]; }
    double at(PixelCoord p) const { return at(p.row, p.col); }

    void set(int row, int col, double v) {
        if (!std::isfinite(v))
            throw std::invalid_argument("ScalarField: non-finite value at pixel " +
                                        detail::coord_str(row, col));
        values_[index(row, col)] = v;
    }

    const std::vector<double>& values() const { return values_; }

private:
    std::size_t index(int row, int col) const {
        if (row < 0 || row >= height_ || col < 0 || col >= width_)
            throw std::domain_error("ScalarField: pixel " + detail::coord_str(row, col) +
                                    " out of bounds");
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int height_;
    int width_;
    std::vector<double> values_;
};

/// Dense H x W grid of bits. Used for boundary masks, ground-truth object
/// masks and zero-motion sets.
class BinaryMask {
public:
    BinaryMask(int height, int width, bool fill = false)
        : height_(height), width_(width) {
        detail::check_shape(height, width);
        bits_.assign(static_cast<std::size_t>(height) * width, fill ? 1 : 0);
    }

    static BinaryMask ones(int height, int width) { return BinaryMask(height, width, true); }

    int height() const { return height_; }
    int width() const { return width_; }
    GridShape shape() const { return {height_, width_}; }

    bool at(int row, int col) const { return bits_[index(row, col)] != 0; }
    bool at(PixelCoord p) const { return at(p.row, p.col); }

    void set(int row, int col, bool v) { bits_[index(row, col)] = v ? 1 : 0; }
    void set(PixelCoord p, bool v) { set(p.row, p.col, v); }

    std::int64_t count_set() const {
        std::int64_t n = 0;
        for (auto b : bits_) n += b;
        return n;
    }
    bool any() const { return count_set() > 0; }
    bool empty() const { return !any(); }

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    friend bool operator==(const BinaryMask& a, const BinaryMask& b) {
        return a.height_ == b.height_ && a.width_ == b.width_ && a.bits_ == b.bits_;
    }
    friend bool operator!=(const BinaryMask& a, const BinaryMask& b) { return !(a == b); }

private:
    std::size_t index(int row, int col) const {
        if (row < 0 || row >= height_ || col < 0 || col >= width_)
            throw std::domain_error("BinaryMask: pixel " + detail::coord_str(row, col) +
                                    " out of bounds");
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int height_;
    int width_;
    std::vector<std::uint8_t> bits_;
};

/// Dense H x W grid of segment labels in {0..K-1}; label 0 is background.
class LabelGrid {
public:
    LabelGrid(int height, int width)
        : height_(height), width_(width) {
        detail::check_shape(height, width);
        labels_.assign(static_cast<std::size_t>(height) * width, 0);
    }

    int height() const { return height_; }
    int width() const { return width_; }
    GridShape shape() const { return {height_, width_}; }

    int at(int row, int col) const { return labels_[index(row, col)]; }
    int at(PixelCoord p) const { return at(p.row, p.col); }

    void set(int row, int col, int label) {
        if (label < 0 || label > 255)
            throw std::domain_error("LabelGrid: label out of range at pixel " +
                                    detail::coord_str(row, col));
        labels_[index(row, col)] = static_cast<std::uint8_t>(label);
    }

    int max_label() const {
        int m = 0;
        for (auto l : labels_) m = std::max(m, static_cast<int>(l));
        return m;
    }

    const std::vector<std::uint8_t>& labels() const { return labels_; }

    friend bool operator==(const LabelGrid& a, const LabelGrid& b) {
        return a.height_ == b.height_ && a.width_ == b.width_ && a.labels_ == b.labels_;
    }

private:
    std::size_t index(int row, int col) const {
        if (row < 0 || row >= height_ || col < 0 || col >= width_)
            throw std::domain_error("LabelGrid: pixel " + detail::coord_str(row, col) +
                                    " out of bounds");
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int height_;
    int width_;
    std::vector<std::uint8_t> labels_;
};

/// In-bounds 4-neighbourhood of p, in row-major order.
std::vector<PixelCoord> neighbors4(PixelCoord p, GridShape shape);

/// All in-bounds pixels q with max(|dr|, |dc|) <= radius, including p,
/// in row-major order.
std::vector<PixelCoord> chebyshev_neighborhood(PixelCoord p, int radius, GridShape shape);

} // namespace flowband

#endif
