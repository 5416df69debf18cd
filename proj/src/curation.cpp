#include "flowband/curation.hpp"

#include <algorithm>
#include <cmath>

namespace flowband {

BatchReport drop_hard_cases(const std::vector<FrameLoss>& losses, int h,
                            LossReduction reduction) {
    if (h < 0) throw std::invalid_argument("drop_hard_cases: negative h");
    if (static_cast<std::size_t>(h) >= losses.size())
        throw std::invalid_argument("drop_hard_cases: h = " + std::to_string(h) +
                                    " must be smaller than the batch size " +
                                    std::to_string(losses.size()));
    for (const FrameLoss& fl : losses)
        if (!std::isfinite(fl.total) || !std::isfinite(fl.mean_masked))
            throw std::invalid_argument("drop_hard_cases: non-finite loss for frame " +
                                        std::to_string(fl.frame_index));

    BatchReport report;
    report.batch = losses;

    std::vector<const FrameLoss*> scored;
    scored.reserve(losses.size());
    for (const FrameLoss& fl : losses) {
        if (fl.empty_mask())
            report.dropped.insert(fl.frame_index); // auto-drop, no usable supervision
        else
            scored.push_back(&fl);
    }

    const int remaining = h - static_cast<int>(report.dropped.size());
    if (remaining > 0) {
        std::sort(scored.begin(), scored.end(),
                  [reduction](const FrameLoss* a, const FrameLoss* b) {
                      const double va = a->value(reduction);
                      const double vb = b->value(reduction);
                      if (va != vb) return va > vb;
                      return a->frame_index > b->frame_index;
                  });
        const int take = std::min<int>(remaining, static_cast<int>(scored.size()));
        for (int i = 0; i < take; ++i) report.dropped.insert(scored[i]->frame_index);
    }

    for (const FrameLoss& fl : losses)
        if (!report.dropped.count(fl.frame_index)) report.kept.push_back(fl.frame_index);
    return report;
}

} // namespace flowband
