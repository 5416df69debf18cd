#ifndef FLOWBAND_SUPERVISION_HPP
#define FLOWBAND_SUPERVISION_HPP

#include "flowband/grid.hpp"

namespace flowband {

/// Per-pixel squared reconstruction error gated by the boundary mask;
/// exactly 0 wherever the mask is 0. Units (pixels/frame)^2.
using LossMap = ScalarField;

enum class LossReduction { mean_masked, sum };

/// Per-frame loss summary used to rank frames within a batch.
struct FrameLoss {
    int frame_index = 0;
    double total = 0.0;
    std::int64_t masked_pixel_count = 0;
    double mean_masked = 0.0;

    /// True when the boundary mask selected nothing; such frames carried no
    /// usable supervision and curation auto-drops them.
    bool empty_mask() const { return masked_pixel_count == 0; }

    double value(LossReduction reduction) const {
        return reduction == LossReduction::sum ? total : mean_masked;
    }
};

/// L(p) = M(p) * ||target(p) - predicted(p)||^2.
LossMap masked_loss_map(const FlowField& target, const FlowField& predicted,
                        const BinaryMask& mask);

/// Aggregates a loss map. mean_masked divides the total by the count of
/// mask-1 pixels; an empty mask yields total 0, count 0, mean 0.
FrameLoss frame_loss(const LossMap& map, const BinaryMask& mask, int frame_index = 0);

} // namespace flowband

#endif
