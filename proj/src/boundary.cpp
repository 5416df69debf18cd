#include "flowband/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace flowband {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double angle_diff(double a, double b, AngleMetric metric) {
    const double raw = std::abs(a - b); // < 2pi for angles in (-pi, pi]
    if (metric == AngleMetric::literal) return raw;
    return std::min(raw, kTwoPi - raw);
}

} // namespace

void BoundaryConfig::validate() const {
    if (!(alpha > 0.0) || !(alpha <= kPi))
        throw std::invalid_argument("BoundaryConfig: alpha must be in (0, pi]");
    if (kernel_size < 1 || kernel_size % 2 == 0)
        throw std::invalid_argument("BoundaryConfig: kernel_size must be odd and positive, got " +
                                    std::to_string(kernel_size));
}

AngleResult flow_to_angles(const FlowField& field) {
    ScalarField angles(field.height(), field.width());
    BinaryMask zero_motion(field.height(), field.width());
    for (int r = 0; r < field.height(); ++r) {
        for (int c = 0; c < field.width(); ++c) {
            const Vec2 v = field.at(r, c);
            if (v.x == 0.0 && v.y == 0.0) {
                zero_motion.set(r, c, true);
                angles.set(r, c, 0.0);
                continue;
            }
            double theta = std::atan2(v.x, v.y); // horizontal component first
            if (theta == -kPi) theta = kPi;      // keep the (-pi, pi] convention
            angles.set(r, c, theta);
        }
    }
    return {std::move(angles), std::move(zero_motion)};
}

ScalarField directional_difference(const ScalarField& angles, AngleMetric metric) {
    const GridShape shape = angles.shape();
    ScalarField diff(shape.height, shape.width);
    for (int r = 0; r < shape.height; ++r) {
        for (int c = 0; c < shape.width; ++c) {
            const double theta = angles.at(r, c);
            double best = 0.0;
            if (r > 0) best = std::max(best, angle_diff(theta, angles.at(r - 1, c), metric));
            if (c > 0) best = std::max(best, angle_diff(theta, angles.at(r, c - 1), metric));
            if (c + 1 < shape.width)
                best = std::max(best, angle_diff(theta, angles.at(r, c + 1), metric));
            if (r + 1 < shape.height)
                best = std::max(best, angle_diff(theta, angles.at(r + 1, c), metric));
            diff.set(r, c, best);
        }
    }
    return diff;
}

BinaryMask threshold_mask(const ScalarField& diff, double alpha) {
    BinaryMask mask(diff.height(), diff.width());
    for (int r = 0; r < diff.height(); ++r)
        for (int c = 0; c < diff.width(); ++c)
            mask.set(r, c, diff.at(r, c) > alpha);
    return mask;
}

BinaryMask dilate(const BinaryMask& mask, int kernel_size) {
    if (kernel_size < 1 || kernel_size % 2 == 0)
        throw std::invalid_argument("dilate: kernel_size must be odd and positive, got " +
                                    std::to_string(kernel_size));
    if (kernel_size == 1) return mask;
    const int radius = (kernel_size - 1) / 2;
    const int height = mask.height();
    const int width = mask.width();

    // Square element separates into a horizontal then a vertical 1D pass.
    BinaryMask rows(height, width);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            bool set = false;
            const int c0 = std::max(0, c - radius);
            const int c1 = std::min(width - 1, c + radius);
            for (int cc = c0; cc <= c1 && !set; ++cc) set = mask.at(r, cc);
            rows.set(r, c, set);
        }
    }
    BinaryMask out(height, width);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            bool set = false;
            const int r0 = std::max(0, r - radius);
            const int r1 = std::min(height - 1, r + radius);
            for (int rr = r0; rr <= r1 && !set; ++rr) set = rows.at(rr, c);
            out.set(r, c, set);
        }
    }
    return out;
}

BinaryMask extract_boundary_mask(const FlowField& field, const BoundaryConfig& cfg) {
    cfg.validate();
    const AngleResult angles = flow_to_angles(field);
    const ScalarField diff = directional_difference(angles.angles, cfg.metric);
    return dilate(threshold_mask(diff, cfg.alpha), cfg.kernel_size);
}

} // namespace flowband
