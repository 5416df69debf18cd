#ifndef FLOWBAND_BOUNDARY_HPP
#define FLOWBAND_BOUNDARY_HPP

#include "flowband/grid.hpp"

namespace flowband {

/// Metric for comparing two flow directions. Wrapped treats angles as
/// circular, min(|d|, 2pi-|d|) in [0, pi]; literal is the raw absolute
/// difference in [0, 2pi), kept for fidelity experiments.
enum class AngleMetric { wrapped, literal };

struct BoundaryConfig {
    /// Difference threshold in radians, (0, pi].
    double alpha = kDefaultAlpha;
    /// Side length of the square dilation element; odd, >= 1.
    int kernel_size = 7;
    AngleMetric metric = AngleMetric::wrapped;

    static constexpr double kDefaultAlpha = 0.26179938779914943654; // pi/12
    static constexpr double kRecommendedAlpha = 1.04719755119659774615; // pi/3

    /// Threshold from the method description: alpha = pi/12, kernel 7.
    static BoundaryConfig method_defaults() { return {}; }
    /// Best-performing sweep point: alpha = pi/3, kernel 7.
    static BoundaryConfig recommended() { return {kRecommendedAlpha, 7, AngleMetric::wrapped}; }

    void validate() const;
};

struct AngleResult {
    /// Per-pixel direction atan2(x, y) in (-pi, pi]; horizontal component
    /// is the first argument.
    ScalarField angles;
    /// Pixels whose flow vector is exactly zero. Their angle is reported as
    /// 0, which is indistinguishable from a genuine 0-direction without
    /// this set.
    BinaryMask zero_motion;
};

AngleResult flow_to_angles(const FlowField& field);

/// Per-pixel maximum angular difference to the in-bounds 4-neighbourhood.
/// Border pixels use only their in-bounds neighbours; a 1x1 field is all
/// zeros.
ScalarField directional_difference(const ScalarField& angles,
                                   AngleMetric metric = AngleMetric::wrapped);

/// 1 where diff > alpha strictly, else 0.
BinaryMask threshold_mask(const ScalarField& diff, double alpha);

/// Morphological dilation by a square element of side kernel_size
/// (radius (kernel_size-1)/2), clipped at the borders. kernel_size must be
/// odd; 1 is the identity.
BinaryMask dilate(const BinaryMask& mask, int kernel_size);

/// The full extraction: dilate(threshold(diff(angles(field)), alpha), kernel).
BinaryMask extract_boundary_mask(const FlowField& field,
                                 const BoundaryConfig& cfg = BoundaryConfig{});

} // namespace flowband

#endif
