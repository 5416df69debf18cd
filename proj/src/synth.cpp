#include "flowband/synth.hpp"

#include <algorithm>
#include <cmath>

#include "flowband/rng.hpp"

namespace flowband {

namespace {

// Inclusive row/col extent of an object silhouette at a given offset, using
// rounded positions so integer velocities translate masks exactly.
struct Extent {
    long top, bottom, left, right;
};

Extent object_extent(const SceneObject& obj, Vec2 offset) {
    if (obj.shape == ObjectShape::rectangle) {
        const long top = std::lround(obj.row + offset.y);
        const long left = std::lround(obj.col + offset.x);
        return {top, top + std::lround(obj.size_rows) - 1, left,
                left + std::lround(obj.size_cols) - 1};
    }
    const long cr = std::lround(obj.row + offset.y);
    const long cc = std::lround(obj.col + offset.x);
    return {cr - std::lround(obj.size_rows), cr + std::lround(obj.size_rows),
            cc - std::lround(obj.size_cols), cc + std::lround(obj.size_cols)};
}

bool inside_object(const SceneObject& obj, Vec2 offset, int row, int col) {
    if (obj.shape == ObjectShape::rectangle) {
        const Extent e = object_extent(obj, offset);
        return row >= e.top && row <= e.bottom && col >= e.left && col <= e.right;
    }
    const double cr = static_cast<double>(std::lround(obj.row + offset.y));
    const double cc = static_cast<double>(std::lround(obj.col + offset.x));
    const double dr = (row - cr) / obj.size_rows;
    const double dc = (col - cc) / obj.size_cols;
    return dr * dr + dc * dc <= 1.0;
}

std::vector<bool> motion_schedule(const SceneObject& obj, int steps, std::uint64_t scene_seed,
                                  std::size_t object_index) {
    std::vector<bool> moving(static_cast<std::size_t>(steps), true);
    if (obj.motion != MotionKind::stop_and_go) return moving;
    const long stationary =
        std::lround(std::floor(obj.stationary_fraction * steps + 0.5));
    const long clamped = std::clamp<long>(stationary, 0, steps);
    // Partial Fisher-Yates over the step indices picks the stationary set.
    std::vector<int> order(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) order[static_cast<std::size_t>(i)] = i;
    Rng rng(derive_seed(scene_seed, "stop_and_go", static_cast<std::uint64_t>(object_index)));
    for (long i = 0; i < clamped; ++i) {
        const auto j = i + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(steps - i)));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
        moving[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = false;
    }
    return moving;
}

void apply_corruption(FlowField& flow, const Corruption& corr, int step, int span) {
    const int height = flow.height();
    const int width = flow.width();
    switch (corr.kind) {
        case Corruption::Kind::dark_patch: {
            const int ph = std::min(corr.patch_height, height);
            const int pw = std::min(corr.patch_width, width);
            Rng rng(derive_seed(corr.seed, "dark_patch", static_cast<std::uint64_t>(step)));
            const int top = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(height - ph + 1)));
            const int left = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(width - pw + 1)));
            for (int r = top; r < top + ph; ++r)
                for (int c = left; c < left + pw; ++c) flow.set(r, c, {0.0, 0.0});
            break;
        }
        case Corruption::Kind::abrupt_motion: {
            Rng rng(derive_seed(corr.seed, "abrupt_motion", static_cast<std::uint64_t>(step)));
            for (int r = 0; r < height; ++r) {
                for (int c = 0; c < width; ++c) {
                    const double angle = corr.sigma * rng.next_gaussian();
                    const Vec2 v = flow.at(r, c);
                    const double cs = std::cos(angle);
                    const double sn = std::sin(angle);
                    flow.set(r, c, {v.x * cs - v.y * sn, v.x * sn + v.y * cs});
                }
            }
            break;
        }
        case Corruption::Kind::static_frame: {
            const Vec2 fill = static_cast<double>(span) * corr.fill_velocity;
            for (int r = 0; r < height; ++r)
                for (int c = 0; c < width; ++c) flow.set(r, c, fill);
            break;
        }
    }
}

} // namespace

void SceneSpec::validate() const {
    detail::check_shape(height, width);
    if (frames < 2) throw std::invalid_argument("SceneSpec: frames must be >= 2");
    if (objects.empty()) throw std::invalid_argument("SceneSpec: needs at least one object");
    if (!background_velocity.finite())
        throw std::invalid_argument("SceneSpec: background_velocity must be finite");
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const SceneObject& obj = objects[i];
        const std::string tag = "SceneSpec: object " + std::to_string(i + 1);
        if (!obj.velocity.finite()) throw std::invalid_argument(tag + ": velocity must be finite");
        if (obj.size_rows < 0.5 || obj.size_cols < 0.5)
            throw std::invalid_argument(tag + ": size too small");
        if (obj.motion == MotionKind::stop_and_go &&
            (obj.stationary_fraction < 0.0 || obj.stationary_fraction > 1.0))
            throw std::invalid_argument(tag + ": stationary fraction must be in [0, 1]");
    }
}

SceneSpec SceneSpec::from_kv(const KvFile& kv) {
    SceneSpec spec;
    spec.height = static_cast<int>(kv.require_int("height"));
    spec.width = static_cast<int>(kv.require_int("width"));
    spec.frames = static_cast<int>(kv.require_int("frames"));
    spec.seed = static_cast<std::uint64_t>(kv.get_int("seed", 0));
    if (kv.has("background_velocity")) {
        const auto [x, y] = kv.require_pair("background_velocity");
        spec.background_velocity = {x, y};
    }
    for (int id : kv.numbered_groups("object")) {
        const std::string p = "object." + std::to_string(id) + ".";
        SceneObject obj;
        const std::string shape = kv.get_string(p + "shape", "rectangle");
        if (shape == "rectangle")
            obj.shape = ObjectShape::rectangle;
        else if (shape == "ellipse")
            obj.shape = ObjectShape::ellipse;
        else
            throw std::invalid_argument("scene: object " + std::to_string(id) +
                                        ": unknown shape '" + shape + "'");
        const auto [row, col] = kv.require_pair(p + "position");
        obj.row = row;
        obj.col = col;
        const auto [sr, sc] = kv.require_pair(p + "size");
        obj.size_rows = sr;
        obj.size_cols = sc;
        const auto [vx, vy] = kv.require_pair(p + "velocity");
        obj.velocity = {vx, vy};
        const std::string motion = kv.get_string(p + "motion", "constant");
        if (motion == "constant") {
            obj.motion = MotionKind::constant;
        } else if (motion.rfind("stop_and_go:", 0) == 0) {
            obj.motion = MotionKind::stop_and_go;
            obj.stationary_fraction = std::stod(motion.substr(12));
        } else {
            throw std::invalid_argument("scene: object " + std::to_string(id) +
                                        ": unknown motion '" + motion +
                                        "' (want constant or stop_and_go:FRACTION)");
        }
        spec.objects.push_back(obj);
    }
    spec.validate();
    return spec;
}

SceneSpec SceneSpec::load(const std::filesystem::path& path) {
    return from_kv(KvFile::parse_file(path));
}

Corruption Corruption::dark_patch(std::vector<int> frames, int height, int width,
                                  std::uint64_t seed) {
    if (height < 1 || width < 1)
        throw std::invalid_argument("Corruption: dark patch needs positive size");
    Corruption c;
    c.kind = Kind::dark_patch;
    c.affected_frames = std::move(frames);
    c.patch_height = height;
    c.patch_width = width;
    c.seed = seed;
    return c;
}

Corruption Corruption::abrupt_motion(std::vector<int> frames, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("Corruption: sigma must be >= 0");
    Corruption c;
    c.kind = Kind::abrupt_motion;
    c.affected_frames = std::move(frames);
    c.sigma = sigma;
    c.seed = seed;
    return c;
}

Corruption Corruption::static_frame(std::vector<int> frames, Vec2 fill_velocity) {
    Corruption c;
    c.kind = Kind::static_frame;
    c.affected_frames = std::move(frames);
    c.fill_velocity = fill_velocity;
    return c;
}

SceneSequence::SceneSequence(SceneSpec spec, std::vector<Corruption> corruptions)
    : spec_(std::move(spec)), corruptions_(std::move(corruptions)) {
    spec_.validate();
    const int steps = spec_.frames - 1;
    for (const Corruption& corr : corruptions_)
        for (int t : corr.affected_frames)
            if (t < 0 || t >= steps)
                throw std::invalid_argument("Corruption: affected frame " + std::to_string(t) +
                                            " outside [0, " + std::to_string(steps - 1) + "]");

    moving_.reserve(spec_.objects.size());
    frame_offset_.reserve(spec_.objects.size());
    for (std::size_t oi = 0; oi < spec_.objects.size(); ++oi) {
        const SceneObject& obj = spec_.objects[oi];
        moving_.push_back(motion_schedule(obj, steps, spec_.seed, oi));
        std::vector<Vec2> offsets(static_cast<std::size_t>(spec_.frames));
        Vec2 acc{};
        offsets[0] = acc;
        for (int t = 0; t < steps; ++t) {
            acc = acc + (moving_.back()[static_cast<std::size_t>(t)] ? obj.velocity
                                                                     : spec_.background_velocity);
            offsets[static_cast<std::size_t>(t + 1)] = acc;
        }
        frame_offset_.push_back(std::move(offsets));

        for (int t = 0; t < spec_.frames; ++t) {
            const Extent e = object_extent(obj, frame_offset_.back()[static_cast<std::size_t>(t)]);
            if (e.top < 0 || e.left < 0 || e.bottom >= spec_.height || e.right >= spec_.width)
                throw std::invalid_argument("SceneSpec: object " + std::to_string(oi + 1) +
                                            " leaves the grid at frame " + std::to_string(t));
        }
    }

    gt_masks_.reserve(static_cast<std::size_t>(spec_.frames));
    for (int t = 0; t < spec_.frames; ++t) {
        BinaryMask mask(spec_.height, spec_.width);
        for (std::size_t oi = 0; oi < spec_.objects.size(); ++oi) {
            const Extent e =
                object_extent(spec_.objects[oi], frame_offset_[oi][static_cast<std::size_t>(t)]);
            for (long r = e.top; r <= e.bottom; ++r)
                for (long c = e.left; c <= e.right; ++c)
                    if (inside_object(spec_.objects[oi],
                                      frame_offset_[oi][static_cast<std::size_t>(t)],
                                      static_cast<int>(r), static_cast<int>(c)))
                        mask.set(static_cast<int>(r), static_cast<int>(c), true);
        }
        gt_masks_.push_back(std::move(mask));
    }
}

FlowField SceneSequence::pair_flow(int i, int r) const {
    if (r < 1) throw std::invalid_argument("pair_flow: interval must be >= 1");
    if (i < 0 || i + r > spec_.frames - 1)
        throw std::domain_error("pair_flow: pair (" + std::to_string(i) + ", " +
                                std::to_string(i + r) + ") outside the sequence");
    FlowField flow =
        FlowField::uniform(spec_.height, spec_.width, static_cast<double>(r) * spec_.background_velocity);
    for (std::size_t oi = 0; oi < spec_.objects.size(); ++oi) {
        const SceneObject& obj = spec_.objects[oi];
        Vec2 displacement{};
        for (int t = i; t < i + r; ++t)
            displacement = displacement + (moving_[oi][static_cast<std::size_t>(t)]
                                               ? obj.velocity
                                               : spec_.background_velocity);
        const Vec2 offset = frame_offset_[oi][static_cast<std::size_t>(i)];
        const Extent e = object_extent(obj, offset);
        for (long rr = e.top; rr <= e.bottom; ++rr)
            for (long cc = e.left; cc <= e.right; ++cc)
                if (inside_object(obj, offset, static_cast<int>(rr), static_cast<int>(cc)))
                    flow.set(static_cast<int>(rr), static_cast<int>(cc), displacement);
    }
    for (const Corruption& corr : corruptions_)
        if (std::find(corr.affected_frames.begin(), corr.affected_frames.end(), i) !=
            corr.affected_frames.end())
            apply_corruption(flow, corr, i, r);
    return flow;
}

bool SceneSequence::object_moves_at(int step) const {
    for (std::size_t oi = 0; oi < spec_.objects.size(); ++oi)
        if (moving_[oi][static_cast<std::size_t>(step)] &&
            spec_.objects[oi].velocity != spec_.background_velocity)
            return true;
    return false;
}

RenderedScene render_sequence(const SceneSpec& spec) {
    SceneSequence seq(spec); // no corruptions
    RenderedScene out;
    out.flows.reserve(static_cast<std::size_t>(spec.frames - 1));
    for (int t = 0; t + 1 < spec.frames; ++t) out.flows.push_back(seq.pair_flow(t, 1));
    out.gt_masks = seq.gt_masks();
    return out;
}

std::vector<FlowField> corrupt(const std::vector<FlowField>& flows,
                               const std::vector<Corruption>& corruptions) {
    for (const Corruption& corr : corruptions)
        for (int t : corr.affected_frames)
            if (t < 0 || t >= static_cast<int>(flows.size()))
                throw std::invalid_argument("corrupt: affected frame " + std::to_string(t) +
                                            " outside the sequence");
    std::vector<FlowField> out = flows;
    for (const Corruption& corr : corruptions)
        for (int t : corr.affected_frames)
            apply_corruption(out[static_cast<std::size_t>(t)], corr, t, 1);
    return out;
}

} // namespace flowband
