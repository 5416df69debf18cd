#include "flowband/metrics.hpp"

#include <array>

namespace flowband {

double iou(const BinaryMask& pred, const BinaryMask& gt) {
    if (pred.shape() != gt.shape()) throw std::domain_error("iou: mask shapes differ");
    std::int64_t inter = 0, uni = 0;
    const auto& a = pred.bits();
    const auto& b = gt.bits();
    for (std::size_t i = 0; i < a.size(); ++i) {
        inter += (a[i] & b[i]);
        uni += (a[i] | b[i]);
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

IoUReport miou(const std::vector<BinaryMask>& preds, const std::vector<BinaryMask>& gts,
               EmptyFramePolicy policy) {
    if (preds.size() != gts.size())
        throw std::domain_error("miou: " + std::to_string(preds.size()) + " predictions vs " +
                                std::to_string(gts.size()) + " ground-truth frames");
    IoUReport report;
    report.policy = policy;
    double sum = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const bool both_empty = preds[i].empty() && gts[i].empty();
        if (both_empty && policy == EmptyFramePolicy::skip) continue;
        const double v = iou(preds[i], gts[i]);
        report.per_frame.push_back(v);
        sum += v;
    }
    report.mean = report.per_frame.empty() ? 0.0 : sum / static_cast<double>(report.per_frame.size());
    return report;
}

BinaryMask match_labels(const LabelGrid& pred, const BinaryMask& gt, int k) {
    if (k < 2 || k > 8)
        throw std::invalid_argument("match_labels: k must be in [2, 8], got " + std::to_string(k));
    if (pred.shape() != gt.shape()) throw std::domain_error("match_labels: grid shapes differ");
    if (pred.max_label() >= k) throw std::domain_error("match_labels: label exceeds k-1");

    // Per-label overlap tallies make each subset's IoU O(K).
    std::array<std::int64_t, 8> label_count{};
    std::array<std::int64_t, 8> label_hits{};
    std::int64_t gt_count = 0;
    for (int r = 0; r < pred.height(); ++r) {
        for (int c = 0; c < pred.width(); ++c) {
            const int label = pred.at(r, c);
            const bool fg = gt.at(r, c);
            ++label_count[static_cast<std::size_t>(label)];
            if (fg) {
                ++gt_count;
                ++label_hits[static_cast<std::size_t>(label)];
            }
        }
    }

    const unsigned subsets = 1u << (k - 1); // over labels 1..k-1
    unsigned best_subset = 0;
    double best_iou = -1.0;
    int best_size = 0;
    for (unsigned s = 0; s < subsets; ++s) {
        std::int64_t inter = 0, pred_count = 0;
        int size = 0;
        for (int label = 1; label < k; ++label) {
            if (!(s & (1u << (label - 1)))) continue;
            ++size;
            inter += label_hits[static_cast<std::size_t>(label)];
            pred_count += label_count[static_cast<std::size_t>(label)];
        }
        const std::int64_t uni = pred_count + gt_count - inter;
        const double v = uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
        if (v > best_iou || (v == best_iou && size < best_size)) {
            best_iou = v;
            best_subset = s;
            best_size = size;
        }
    }

    BinaryMask out(pred.height(), pred.width());
    for (int r = 0; r < pred.height(); ++r)
        for (int c = 0; c < pred.width(); ++c) {
            const int label = pred.at(r, c);
            if (label > 0 && (best_subset & (1u << (label - 1)))) out.set(r, c, true);
        }
    return out;
}

double matched_iou(const LabelGrid& pred, const BinaryMask& gt, int k) {
    return iou(match_labels(pred, gt, k), gt);
}

} // namespace flowband
