#ifndef FLOWBAND_SYNTH_HPP
#define FLOWBAND_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "flowband/grid.hpp"
#include "flowband/kv.hpp"

namespace flowband {

enum class ObjectShape { rectangle, ellipse };
enum class MotionKind { constant, stop_and_go };

/// One moving object. position/size are in (row, col) pixel units:
/// top-left corner and full extent for rectangles, center and semi-axes for
/// ellipses. velocity is (x, y) pixels/frame, x horizontal.
struct SceneObject {
    ObjectShape shape = ObjectShape::rectangle;
    double row = 0.0;
    double col = 0.0;
    double size_rows = 0.0;
    double size_cols = 0.0;
    Vec2 velocity{};
    MotionKind motion = MotionKind::constant;
    /// stop_and_go only: fraction of the T-1 flow steps on which the object
    /// moves with the background instead of its own velocity.
    double stationary_fraction = 0.0;
};

struct SceneSpec {
    int height = 0;
    int width = 0;
    int frames = 0; // T
    Vec2 background_velocity{};
    std::vector<SceneObject> objects;
    std::uint64_t seed = 0;

    void validate() const;
    static SceneSpec from_kv(const KvFile& kv);
    static SceneSpec load(const std::filesystem::path& path);
};

/// One injected flow-quality failure. dark_patch zeroes a seeded random
/// rectangle; abrupt_motion rotates every vector by N(0, sigma^2) angle
/// noise; static_frame overwrites the frame with fill_velocity (the
/// background motion), erasing the object's motion cue.
struct Corruption {
    enum class Kind { dark_patch, abrupt_motion, static_frame };

    Kind kind = Kind::dark_patch;
    std::vector<int> affected_frames; // flow-step indices, within [0, T-2]
    std::uint64_t seed = 0;

    int patch_height = 0; // dark_patch
    int patch_width = 0;
    double sigma = 0.0;      // abrupt_motion, radians
    Vec2 fill_velocity{};    // static_frame, per single step

    static Corruption dark_patch(std::vector<int> frames, int height, int width,
                                 std::uint64_t seed);
    static Corruption abrupt_motion(std::vector<int> frames, double sigma, std::uint64_t seed);
    static Corruption static_frame(std::vector<int> frames, Vec2 fill_velocity);
};

struct RenderedScene {
    std::vector<FlowField> flows;     // length T-1, step t maps frame t -> t+1
    std::vector<BinaryMask> gt_masks; // length T, union of object silhouettes
};

/// Analytic, uncorrupted render: object pixels carry the object's step
/// velocity, background pixels the background velocity, and the ground
/// truth marks object pixels per frame. Deterministic under spec.seed.
RenderedScene render_sequence(const SceneSpec& spec);

/// Applies every corruption to its affected frames, deterministically under
/// each corruption's seed. Shapes and frame counts never change.
std::vector<FlowField> corrupt(const std::vector<FlowField>& flows,
                               const std::vector<Corruption>& corruptions);

/// A scene plus its corruptions, exposed as supervising flow for arbitrary
/// (i, i+r) training pairs: objects displace by their summed step
/// velocities over the window, the background by r times its velocity, and
/// the corruptions anchored at step i apply on top (static fills scale by
/// r). This is what a flow estimator would see at a wider frame baseline.
class SceneSequence {
public:
    explicit SceneSequence(SceneSpec spec, std::vector<Corruption> corruptions = {});

    int frame_count() const { return spec_.frames; }
    const SceneSpec& spec() const { return spec_; }
    const std::vector<Corruption>& corruptions() const { return corruptions_; }
    const std::vector<BinaryMask>& gt_masks() const { return gt_masks_; }

    /// Supervising flow for the pair (i, i+r), geometry anchored at frame i.
    FlowField pair_flow(int i, int r) const;

    /// True when step t is a moving step for at least one object.
    bool object_moves_at(int step) const;

private:
    SceneSpec spec_;
    std::vector<Corruption> corruptions_;
    std::vector<std::vector<bool>> moving_;      // per object, per step
    std::vector<std::vector<Vec2>> frame_offset_; // per object, cumulative at each frame
    std::vector<BinaryMask> gt_masks_;
};

} // namespace flowband

#endif
