#ifndef FLOWBAND_HARNESS_HPP
#define FLOWBAND_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "flowband/kv.hpp"
#include "flowband/segmenter.hpp"
#include "flowband/synth.hpp"

namespace flowband {

/// Family of seeded corrupted scenes used by the ordering experiments. Each
/// scene gets one randomly placed stop-and-go object and the configured
/// corruption counts.
struct SuiteSpec {
    int count = 50;
    int height = 64;
    int width = 64;
    int frames = 12;
    std::uint64_t seed = 1;

    int object_min_size = 12;
    int object_max_size = 22;
    int velocity_min = 2;
    int velocity_max = 3;
    double stationary_fraction = 0.3;
    Vec2 background_velocity{1.0, 1.0};

    int dark_patch_frames = 1;
    int dark_patch_size = 24;
    int abrupt_frames = 1;
    double abrupt_sigma = 0.6;
    int static_frames = 0;

    void validate() const;
    static SuiteSpec from_kv(const KvFile& kv);
    static SuiteSpec load(const std::filesystem::path& path);
};

struct SuiteCase {
    SceneSpec scene;
    std::vector<Corruption> corruptions;
};

std::vector<SuiteCase> build_suite(const SuiteSpec& spec);

/// The three method toggles of the ablation table.
struct Strategy {
    bool drop = false;
    bool boundary = false;
    bool variable = false;

    static Strategy none() { return {false, false, false}; }
    static Strategy full() { return {true, true, true}; }
};

/// Applies a strategy row onto a base training config.
TrainConfig apply_strategy(TrainConfig base, Strategy s);

/// Trains on one corrupted scene and scores matched mIoU over the frames
/// that received predictions. Per-case seeds derive from the scene seed so
/// every case replays exactly.
double run_case_miou(const SuiteCase& suite_case, const TrainConfig& cfg);

/// Mean of run_case_miou over the suite.
double run_suite_miou(const std::vector<SuiteCase>& cases, const TrainConfig& cfg);

struct StrategyRow {
    Strategy strategy;
    double mean_miou = 0.0;
};

/// The four toggle rows: none, drop, drop+boundary, drop+boundary+variable.
std::vector<StrategyRow> ablate_strategies(const std::vector<SuiteCase>& cases,
                                           const TrainConfig& base);

struct GridRow {
    double alpha = 0.0;
    int kernel_size = 0;
    double mean_miou = 0.0;
};

/// Full-strategy runs over the alpha x kernel grid.
std::vector<GridRow> ablate_grid(const std::vector<SuiteCase>& cases, const TrainConfig& base,
                                 const std::vector<double>& alphas,
                                 const std::vector<int>& kernels);

} // namespace flowband

#endif
