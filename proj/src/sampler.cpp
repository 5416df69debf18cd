#include "flowband/sampler.hpp"

#include <stdexcept>
#include <string>

namespace flowband {

void SamplerConfig::validate() const {
    if (r_min < 1 || r_min > r_max)
        throw std::invalid_argument("SamplerConfig: need 1 <= r_min <= r_max, got [" +
                                    std::to_string(r_min) + ", " + std::to_string(r_max) + "]");
}

PairSampler::PairSampler(int frame_count, const SamplerConfig& cfg)
    : frame_count_(frame_count), cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    if (frame_count_ < cfg_.max_interval() + 1)
        throw std::invalid_argument("PairSampler: sequence of " + std::to_string(frame_count_) +
                                    " frames is too short for interval " +
                                    std::to_string(cfg_.max_interval()));
}

FramePair PairSampler::draw(int r_lo, int r_hi) {
    const int r = r_lo + static_cast<int>(rng_.next_below(static_cast<std::uint64_t>(r_hi - r_lo + 1)));
    int i = static_cast<int>(rng_.next_below(static_cast<std::uint64_t>(frame_count_)));
    while (i + r > frame_count_ - 1)
        i = static_cast<int>(rng_.next_below(static_cast<std::uint64_t>(frame_count_)));
    return {i, r};
}

FramePair PairSampler::next() {
    if (cfg_.mode == RateMode::fixed) return draw(cfg_.r_min, cfg_.r_min);
    return draw(cfg_.r_min, cfg_.r_max);
}

FramePair PairSampler::next_fixed() { return draw(cfg_.r_min, cfg_.r_min); }

std::vector<FramePair> sample_pairs(int frame_count, int n, const SamplerConfig& cfg) {
    if (n < 1) throw std::invalid_argument("sample_pairs: n must be >= 1");
    PairSampler sampler(frame_count, cfg);
    std::vector<FramePair> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out.push_back(sampler.next());
    return out;
}

} // namespace flowband
