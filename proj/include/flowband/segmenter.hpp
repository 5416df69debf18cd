#ifndef FLOWBAND_SEGMENTER_HPP
#define FLOWBAND_SEGMENTER_HPP

#include <optional>
#include <vector>

#include "flowband/boundary.hpp"
#include "flowband/curation.hpp"
#include "flowband/grid.hpp"
#include "flowband/metrics.hpp"
#include "flowband/sampler.hpp"
#include "flowband/supervision.hpp"
#include "flowband/synth.hpp"

namespace flowband {

/// One constant flow vector per segment label.
struct MotionModel {
    std::vector<Vec2> centroids;

    int k() const { return static_cast<int>(centroids.size()); }
};

struct TrainConfig {
    int k = 2;
    int max_iters = 60;
    /// Stop when the masked mean loss improves by less than this.
    double tolerance = 1e-12;
    int batch_size = 8; // B
    int drop_count = 6; // h
    BoundaryConfig boundary{};
    SamplerConfig sampler{};
    bool use_boundary_mask = true;
    bool use_dropping = true;
    /// Fraction of batches sampled at the fixed base rate before variable
    /// rates kick in; 0 applies the configured mode from the start.
    double warmup_fraction = 0.0;
    /// Number of batches; 0 sizes the run so each frame is kept ~4 times.
    int batches = 0;
    std::uint64_t init_seed = 0;
    LossReduction reduction = LossReduction::mean_masked;

    void validate() const;
};

/// Predicted flow: ohat(p) = centroid[label(p)].
FlowField reconstruct_flow(const LabelGrid& labels, const MotionModel& model);

struct FitResult {
    LabelGrid labels;
    MotionModel model;
    /// Masked mean loss at convergence.
    double final_loss = 0.0;
    int iterations = 0;
    FrameLoss frame;
};

/// Alternating minimization of the masked reconstruction loss: assign each
/// pixel to its nearest centroid, then refit each centroid as the mean flow
/// of its mask-selected pixels (all of its pixels when none are masked;
/// empty segments keep their previous centroid). Seeding is
/// farthest-point from a seeded random first pick. The masked loss is
/// non-increasing across iterations. Output labels are renumbered by
/// descending segment size, so label 0 is the (background) majority
/// segment.
FitResult fit_segmentation(const FlowField& flow, const BinaryMask& mask, const TrainConfig& cfg,
                           std::uint64_t fit_seed);

/// Supervising-flow source for training pairs (i, i+r).
class FlowProvider {
public:
    virtual ~FlowProvider() = default;
    virtual int frame_count() const = 0;
    virtual FlowField pair_flow(int i, int r) const = 0;
};

/// Stored consecutive step flows. Pairs at r > 1 are approximated by the
/// per-pixel sum over the window, which is exact wherever region membership
/// is stable across the window.
class StoredFlowProvider : public FlowProvider {
public:
    explicit StoredFlowProvider(std::vector<FlowField> step_flows);

    int frame_count() const override { return static_cast<int>(flows_.size()) + 1; }
    FlowField pair_flow(int i, int r) const override;

private:
    std::vector<FlowField> flows_;
};

/// Analytic flows from a synthetic scene; exact at every rate.
class SceneFlowProvider : public FlowProvider {
public:
    explicit SceneFlowProvider(const SceneSequence& seq) : seq_(seq) {}

    int frame_count() const override { return seq_.frame_count(); }
    FlowField pair_flow(int i, int r) const override { return seq_.pair_flow(i, r); }

private:
    const SceneSequence& seq_;
};

struct BatchRecord {
    int batch_id = 0;
    std::vector<FramePair> pairs;
    /// Per slot: loss under the configured reduction, and masked pixel count.
    std::vector<double> losses;
    std::vector<std::int64_t> masked_counts;
    std::vector<int> dropped_slots;
    std::vector<int> kept_slots;
    /// Per slot matched IoU against ground truth; empty when no GT given.
    std::vector<double> ious;
};

struct TrainResult {
    /// Latest kept fit per frame; frames never fit-and-kept stay empty.
    std::vector<std::optional<LabelGrid>> frame_labels;
    std::vector<BatchRecord> log;
    int batches_run = 0;
};

/// Batch training loop: sample B pairs, fit each pair's segmentation
/// against its (boundary-masked) supervising flow, score the per-slot
/// losses, drop the hard cases when enabled, and retain the fits of the
/// kept slots. Dropping ranks slots within the batch, so duplicate frame
/// draws stay distinct.
TrainResult train_sequence(const FlowProvider& flows, const TrainConfig& cfg,
                           const std::vector<BinaryMask>* gt_masks = nullptr);

/// Matched-label IoU report over the frames that have a prediction.
IoUReport score_frame_predictions(const std::vector<std::optional<LabelGrid>>& preds,
                                  const std::vector<BinaryMask>& gts, int k,
                                  EmptyFramePolicy policy = EmptyFramePolicy::count_as_one);

} // namespace flowband

#endif
