#ifndef FLOWBAND_METRICS_HPP
#define FLOWBAND_METRICS_HPP

#include <vector>

#include "flowband/grid.hpp"

namespace flowband {

/// What a frame scores when both prediction and ground truth are empty:
/// count it as perfect agreement (1.0) or leave it out of the mean.
enum class EmptyFramePolicy { count_as_one, skip };

struct IoUReport {
    /// One entry per evaluated frame; under skip, both-empty frames are not
    /// evaluated and contribute no entry.
    std::vector<double> per_frame;
    double mean = 0.0;
    EmptyFramePolicy policy = EmptyFramePolicy::count_as_one;
};

/// |pred AND gt| / |pred OR gt|; 1.0 when both are empty.
double iou(const BinaryMask& pred, const BinaryMask& gt);

IoUReport miou(const std::vector<BinaryMask>& preds, const std::vector<BinaryMask>& gts,
               EmptyFramePolicy policy = EmptyFramePolicy::count_as_one);

/// Folds a K-way labeling into the foreground mask that best matches gt:
/// exhaustive search over the 2^(K-1) subsets of the non-background labels
/// {1..K-1}. Ties prefer fewer labels, then the smaller subset bitmask.
/// K must be <= 8.
BinaryMask match_labels(const LabelGrid& pred, const BinaryMask& gt, int k);

/// Convenience: IoU of the matched foreground against gt.
double matched_iou(const LabelGrid& pred, const BinaryMask& gt, int k);

} // namespace flowband

#endif
