#include "flowband/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace flowband {

void TrainConfig::validate() const {
    if (k < 2) throw std::invalid_argument("TrainConfig: k must be >= 2");
    if (max_iters < 1) throw std::invalid_argument("TrainConfig: max_iters must be >= 1");
    if (!(tolerance >= 0.0)) throw std::invalid_argument("TrainConfig: tolerance must be >= 0");
    if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
    if (drop_count < 0 || drop_count >= batch_size)
        throw std::invalid_argument("TrainConfig: need 0 <= h < B, got h = " +
                                    std::to_string(drop_count) + ", B = " +
                                    std::to_string(batch_size));
    if (warmup_fraction < 0.0 || warmup_fraction > 1.0)
        throw std::invalid_argument("TrainConfig: warmup_fraction must be in [0, 1]");
    if (batches < 0) throw std::invalid_argument("TrainConfig: batches must be >= 0");
    boundary.validate();
    sampler.validate();
}

FlowField reconstruct_flow(const LabelGrid& labels, const MotionModel& model) {
    if (model.k() < 1) throw std::invalid_argument("reconstruct_flow: empty motion model");
    for (Vec2 c : model.centroids)
        if (!c.finite()) throw std::invalid_argument("reconstruct_flow: non-finite centroid");
    FlowField out(labels.height(), labels.width());
    for (int r = 0; r < labels.height(); ++r) {
        for (int c = 0; c < labels.width(); ++c) {
            const int label = labels.at(r, c);
            if (label >= model.k())
                throw std::domain_error("reconstruct_flow: label " + std::to_string(label) +
                                        " has no centroid (k = " + std::to_string(model.k()) + ")");
            out.set(r, c, model.centroids[static_cast<std::size_t>(label)]);
        }
    }
    return out;
}

namespace {

// Farthest-point seeding: seeded random first centroid, then repeatedly the
// flow vector farthest from the chosen set (first pixel wins ties).
std::vector<Vec2> seed_centroids(const FlowField& flow, int k, std::uint64_t fit_seed) {
    const auto& values = flow.values();
    Rng rng(fit_seed);
    std::vector<Vec2> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    centroids.push_back(values[rng.next_below(values.size())]);
    std::vector<double> dist(values.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i)
        dist[i] = (values[i] - centroids[0]).squared_norm();
    while (static_cast<int>(centroids.size()) < k) {
        std::size_t far = 0;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (dist[i] > dist[far]) far = i;
        centroids.push_back(values[far]);
        for (std::size_t i = 0; i < values.size(); ++i)
            dist[i] = std::min(dist[i], (values[i] - centroids.back()).squared_norm());
    }
    return centroids;
}

} // namespace

FitResult fit_segmentation(const FlowField& flow, const BinaryMask& mask, const TrainConfig& cfg,
                           std::uint64_t fit_seed) {
    cfg.validate();
    if (flow.shape() != mask.shape())
        throw std::domain_error("fit_segmentation: flow and mask shapes differ");

    const auto& values = flow.values();
    const auto& mask_bits = mask.bits();
    const std::size_t n = values.size();
    const int k = cfg.k;

    std::vector<Vec2> centroids = seed_centroids(flow, k, fit_seed);
    std::vector<int> assignment(n, 0);

    double prev_loss = std::numeric_limits<double>::infinity();
    double loss = prev_loss;
    int iterations = 0;

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        ++iterations;

        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (values[i] - centroids[0]).squared_norm();
            for (int c = 1; c < k; ++c) {
                const double d = (values[i] - centroids[static_cast<std::size_t>(c)]).squared_norm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assignment[i] = best;
        }

        std::vector<Vec2> masked_sum(static_cast<std::size_t>(k));
        std::vector<std::int64_t> masked_n(static_cast<std::size_t>(k), 0);
        std::vector<Vec2> all_sum(static_cast<std::size_t>(k));
        std::vector<std::int64_t> all_n(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = static_cast<std::size_t>(assignment[i]);
            all_sum[a] = all_sum[a] + values[i];
            ++all_n[a];
            if (mask_bits[i]) {
                masked_sum[a] = masked_sum[a] + values[i];
                ++masked_n[a];
            }
        }
        for (int c = 0; c < k; ++c) {
            const auto ci = static_cast<std::size_t>(c);
            if (masked_n[ci] > 0)
                centroids[ci] = (1.0 / static_cast<double>(masked_n[ci])) * masked_sum[ci];
            else if (all_n[ci] > 0)
                centroids[ci] = (1.0 / static_cast<double>(all_n[ci])) * all_sum[ci];
            // segments with no pixels at all keep their previous centroid
        }

        double total = 0.0;
        std::int64_t masked_count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!mask_bits[i]) continue;
            total += (values[i] - centroids[static_cast<std::size_t>(assignment[i])]).squared_norm();
            ++masked_count;
        }
        loss = total / static_cast<double>(std::max<std::int64_t>(masked_count, 1));

        if (loss > prev_loss + 1e-9 * std::max(1.0, prev_loss))
            throw std::logic_error("fit_segmentation: masked loss increased across iterations");
        const double improvement = prev_loss - loss;
        prev_loss = loss;
        if (improvement < cfg.tolerance) break;
    }

    // Renumber by descending segment size so label 0 is the majority
    // (background) segment; ties keep the original centroid order.
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) ++sizes[static_cast<std::size_t>(assignment[i])];
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&sizes](int a, int b) {
        return sizes[static_cast<std::size_t>(a)] > sizes[static_cast<std::size_t>(b)];
    });
    std::vector<int> relabel(static_cast<std::size_t>(k), 0);
    for (int pos = 0; pos < k; ++pos) relabel[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;

    FitResult result{LabelGrid(flow.height(), flow.width()), MotionModel{}, loss, iterations,
                     FrameLoss{}};
    result.model.centroids.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c)
        result.model.centroids[static_cast<std::size_t>(relabel[static_cast<std::size_t>(c)])] =
            centroids[static_cast<std::size_t>(c)];
    for (int r = 0; r < flow.height(); ++r)
        for (int c = 0; c < flow.width(); ++c)
            result.labels.set(r, c,
                              relabel[static_cast<std::size_t>(
                                  assignment[static_cast<std::size_t>(r) *
                                                 static_cast<std::size_t>(flow.width()) +
                                             static_cast<std::size_t>(c)])]);

    const LossMap map = masked_loss_map(flow, reconstruct_flow(result.labels, result.model), mask);
    result.frame = frame_loss(map, mask);
    result.final_loss = result.frame.mean_masked;
    return result;
}

StoredFlowProvider::StoredFlowProvider(std::vector<FlowField> step_flows)
    : flows_(std::move(step_flows)) {
    if (flows_.empty()) throw std::invalid_argument("StoredFlowProvider: no flows");
    for (std::size_t t = 1; t < flows_.size(); ++t)
        if (flows_[t].shape() != flows_[0].shape())
            throw std::invalid_argument("StoredFlowProvider: flow shapes differ at step " +
                                        std::to_string(t));
}

FlowField StoredFlowProvider::pair_flow(int i, int r) const {
    if (r < 1) throw std::invalid_argument("pair_flow: interval must be >= 1");
    if (i < 0 || i + r > static_cast<int>(flows_.size()))
        throw std::domain_error("pair_flow: pair (" + std::to_string(i) + ", " +
                                std::to_string(i + r) + ") outside the sequence");
    FlowField out = flows_[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < i + r; ++t) {
        const FlowField& step = flows_[static_cast<std::size_t>(t)];
        for (int rr = 0; rr < out.height(); ++rr)
            for (int cc = 0; cc < out.width(); ++cc)
                out.set(rr, cc, out.at(rr, cc) + step.at(rr, cc));
    }
    return out;
}

TrainResult train_sequence(const FlowProvider& flows, const TrainConfig& cfg,
                           const std::vector<BinaryMask>* gt_masks) {
    cfg.validate();
    const int frame_count = flows.frame_count();
    if (gt_masks && static_cast<int>(gt_masks->size()) != frame_count)
        throw std::domain_error("train_sequence: ground-truth count does not match frames");

    PairSampler sampler(frame_count, cfg.sampler);
    const int kept_per_batch = cfg.use_dropping ? cfg.batch_size - cfg.drop_count : cfg.batch_size;
    const int batches = cfg.batches > 0
                            ? cfg.batches
                            : std::max(4, (4 * frame_count + kept_per_batch - 1) / kept_per_batch);
    const int warmup_batches = static_cast<int>(std::floor(cfg.warmup_fraction * batches));

    TrainResult result;
    result.frame_labels.assign(static_cast<std::size_t>(frame_count), std::nullopt);
    result.batches_run = batches;

    for (int b = 0; b < batches; ++b) {
        BatchRecord record;
        record.batch_id = b;

        std::vector<FitResult> fits;
        fits.reserve(static_cast<std::size_t>(cfg.batch_size));
        std::vector<FrameLoss> slot_losses;
        slot_losses.reserve(static_cast<std::size_t>(cfg.batch_size));

        for (int slot = 0; slot < cfg.batch_size; ++slot) {
            const FramePair pair = b < warmup_batches ? sampler.next_fixed() : sampler.next();
            record.pairs.push_back(pair);
            const FlowField flow = flows.pair_flow(pair.i, pair.r);
            const BinaryMask mask = cfg.use_boundary_mask
                                        ? extract_boundary_mask(flow, cfg.boundary)
                                        : BinaryMask::ones(flow.height(), flow.width());
            FitResult fit = fit_segmentation(
                flow, mask, cfg,
                derive_seed(cfg.init_seed, "fit", static_cast<std::uint64_t>(pair.i)));
            FrameLoss fl = fit.frame;
            fl.frame_index = slot; // rank within the batch; duplicates stay distinct
            record.losses.push_back(fl.value(cfg.reduction));
            record.masked_counts.push_back(fl.masked_pixel_count);
            if (gt_masks)
                record.ious.push_back(
                    matched_iou(fit.labels, (*gt_masks)[static_cast<std::size_t>(pair.i)], cfg.k));
            slot_losses.push_back(fl);
            fits.push_back(std::move(fit));
        }

        if (cfg.use_dropping) {
            const BatchReport report = drop_hard_cases(slot_losses, cfg.drop_count, cfg.reduction);
            record.dropped_slots.assign(report.dropped.begin(), report.dropped.end());
            record.kept_slots = report.kept;
        } else {
            for (int slot = 0; slot < cfg.batch_size; ++slot) record.kept_slots.push_back(slot);
        }

        for (int slot : record.kept_slots) {
            const auto si = static_cast<std::size_t>(slot);
            result.frame_labels[static_cast<std::size_t>(record.pairs[si].i)] =
                std::move(fits[si].labels);
        }
        result.log.push_back(std::move(record));
    }
    return result;
}

IoUReport score_frame_predictions(const std::vector<std::optional<LabelGrid>>& preds,
                                  const std::vector<BinaryMask>& gts, int k,
                                  EmptyFramePolicy policy) {
    if (preds.size() != gts.size())
        throw std::domain_error("score_frame_predictions: prediction/GT counts differ");
    std::vector<BinaryMask> matched;
    std::vector<BinaryMask> gt_used;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (!preds[i]) continue; // no prediction emitted for this frame
        matched.push_back(match_labels(*preds[i], gts[i], k));
        gt_used.push_back(gts[i]);
    }
    return miou(matched, gt_used, policy);
}

} // namespace flowband
