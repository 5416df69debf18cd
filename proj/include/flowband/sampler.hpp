#ifndef FLOWBAND_SAMPLER_HPP
#define FLOWBAND_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "flowband/rng.hpp"

namespace flowband {

/// Training pair (i, i+r): frame i supervised by the flow spanning r steps.
struct FramePair {
    int i = 0;
    int r = 1;
    int partner() const { return i + r; }

    friend bool operator==(FramePair a, FramePair b) { return a.i == b.i && a.r == b.r; }
};

enum class RateMode { variable, fixed };

struct SamplerConfig {
    int r_min = 1;
    int r_max = 3;
    std::uint64_t seed = 0;
    RateMode mode = RateMode::variable;

    /// Largest interval a draw can produce; fixed mode always emits r_min.
    int max_interval() const { return mode == RateMode::fixed ? r_min : r_max; }
    void validate() const;
};

/// Seeded pair stream over a frame_count-frame sequence. Each draw picks r
/// uniformly from {r_min..r_max} (or r_min when fixed), then picks i
/// uniformly over all frames and resamples i until i + r fits; r's marginal
/// stays exactly uniform. The stream is a pure function of the config seed.
class PairSampler {
public:
    PairSampler(int frame_count, const SamplerConfig& cfg);

    FramePair next();
    /// Draw with the interval pinned to r_min regardless of mode (warmup).
    FramePair next_fixed();

    int frame_count() const { return frame_count_; }
    const SamplerConfig& config() const { return cfg_; }

private:
    FramePair draw(int r_lo, int r_hi);

    int frame_count_;
    SamplerConfig cfg_;
    Rng rng_;
};

/// n pairs from a fresh PairSampler.
std::vector<FramePair> sample_pairs(int frame_count, int n, const SamplerConfig& cfg);

} // namespace flowband

#endif
