#include "flowband/grid.hpp"

#include <algorithm>

namespace flowband {

namespace detail {

void check_shape(int height, int width) {
    if (height < 1 || width < 1)
        throw std::invalid_argument("grid shape must be at least 1x1, got " +
                                    std::to_string(height) + "x" + std::to_string(width));
}

std::string coord_str(int row, int col) {
    return "(" + std::to_string(row) + "," + std::to_string(col) + ")";
}

} // namespace detail

std::vector<PixelCoord> neighbors4(PixelCoord p, GridShape shape) {
    if (!shape.contains(p))
        throw std::domain_error("neighbors4: pixel " + detail::coord_str(p.row, p.col) +
                                " out of bounds");
    std::vector<PixelCoord> out;
    out.reserve(4);
    const PixelCoord candidates[4] = {
        {p.row - 1, p.col}, {p.row, p.col - 1}, {p.row, p.col + 1}, {p.row + 1, p.col}};
    for (auto q : candidates)
        if (shape.contains(q)) out.push_back(q);
    return out;
}

std::vector<PixelCoord> chebyshev_neighborhood(PixelCoord p, int radius, GridShape shape) {
    if (!shape.contains(p))
        throw std::domain_error("chebyshev_neighborhood: pixel " +
                                detail::coord_str(p.row, p.col) + " out of bounds");
    if (radius < 0) throw std::invalid_argument("chebyshev_neighborhood: negative radius");
    std::vector<PixelCoord> out;
    const int r0 = std::max(0, p.row - radius);
    const int r1 = std::min(shape.height - 1, p.row + radius);
    const int c0 = std::max(0, p.col - radius);
    const int c1 = std::min(shape.width - 1, p.col + radius);
    out.reserve(static_cast<std::size_t>(r1 - r0 + 1) * (c1 - c0 + 1));
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) out.push_back({r, c});
    return out;
}

} // namespace flowband
