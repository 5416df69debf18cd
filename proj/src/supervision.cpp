#include "flowband/supervision.hpp"

namespace flowband {

LossMap masked_loss_map(const FlowField& target, const FlowField& predicted,
                        const BinaryMask& mask) {
    if (target.shape() != predicted.shape() || target.shape() != mask.shape())
        throw std::domain_error("masked_loss_map: grid shapes differ");
    LossMap map(target.height(), target.width());
    for (int r = 0; r < target.height(); ++r) {
        for (int c = 0; c < target.width(); ++c) {
            if (!mask.at(r, c)) continue; // exact 0 outside the mask
            map.set(r, c, (target.at(r, c) - predicted.at(r, c)).squared_norm());
        }
    }
    return map;
}

FrameLoss frame_loss(const LossMap& map, const BinaryMask& mask, int frame_index) {
    if (map.shape() != mask.shape())
        throw std::domain_error("frame_loss: grid shapes differ");
    FrameLoss out;
    out.frame_index = frame_index;
    for (int r = 0; r < map.height(); ++r) {
        for (int c = 0; c < map.width(); ++c) {
            if (!mask.at(r, c)) continue;
            out.total += map.at(r, c);
            ++out.masked_pixel_count;
        }
    }
    out.mean_masked = out.total / static_cast<double>(std::max<std::int64_t>(out.masked_pixel_count, 1));
    return out;
}

} // namespace flowband
