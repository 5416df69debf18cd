#ifndef FLOWBAND_CURATION_HPP
#define FLOWBAND_CURATION_HPP

#include <set>
#include <vector>

#include "flowband/supervision.hpp"

namespace flowband {

/// Outcome of dropping the hard cases from one batch. dropped and kept
/// partition the batch's frame indices; kept preserves batch order.
struct BatchReport {
    std::vector<FrameLoss> batch;
    std::set<int> dropped;
    std::vector<int> kept;
};

/// Drops the h frames with the largest loss under the chosen reduction.
/// Ties prefer dropping the larger frame_index. Empty-mask frames are
/// dropped unconditionally: they count toward h when h allows, and push the
/// dropped set beyond h when there are more than h of them.
BatchReport drop_hard_cases(const std::vector<FrameLoss>& losses, int h,
                            LossReduction reduction = LossReduction::mean_masked);

} // namespace flowband

#endif
