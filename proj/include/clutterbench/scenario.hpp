#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "clutterbench/catalog.hpp"
#include "clutterbench/clutter.hpp"
#include "clutterbench/rng.hpp"
#include "clutterbench/scene.hpp"

namespace clutterbench {

enum class Skill { Pick, Move, Stack, Put };

inline const char* to_string(Skill s) {
    switch (s) {
        case Skill::Pick: return "pick";
        case Skill::Move: return "move";
        case Skill::Stack: return "stack";
        case Skill::Put: return "put";
    }
    return "?";
}

inline Skill skill_from_string(const std::string& s) {
    if (s == "pick") return Skill::Pick;
    if (s == "move") return Skill::Move;
    if (s == "stack") return Skill::Stack;
    if (s == "put") return Skill::Put;
    throw invalid_input("unknown skill tag: " + s);
}

inline const std::vector<Skill>& all_skills() {
    static const std::vector<Skill> v{Skill::Pick, Skill::Move, Skill::Stack, Skill::Put};
    return v;
}

struct GeneratorConfig {
    int n_distractors_min = 1;
    int n_distractors_max = 12;
    double delta_gap = 0.01;        // minimum footprint gap, meters
    double max_occlusion = 0.5;     // robot-view occlusion ceiling
    double clearance = 0.04;        // grasp clearance, meters
    int max_placement_attempts = 100;
    std::uint64_t seed = 0;
    int n_bins = 8;
    int per_bin = 10;
    ClutterConfig clutter;

    std::vector<std::string> validate() const {
        std::vector<std::string> errs;
        if (n_distractors_min < 0) errs.push_back("n_distractors_min must be >= 0");
        if (n_distractors_max < n_distractors_min)
            errs.push_back("n_distractors_max must be >= n_distractors_min");
        if (!(delta_gap >= 0.0)) errs.push_back("delta_gap must be >= 0");
        if (!(max_occlusion >= 0.0 && max_occlusion < 1.0))
            errs.push_back("max_occlusion must be in [0, 1)");
        if (!(clearance >= 0.0)) errs.push_back("clearance must be >= 0");
        if (max_placement_attempts < 1) errs.push_back("max_placement_attempts must be >= 1");
        if (n_bins < 1) errs.push_back("n_bins must be >= 1");
        if (per_bin < 1) errs.push_back("per_bin must be >= 1");
        for (const auto& e : clutter.validate()) errs.push_back("clutter." + e);
        return errs;
    }

    void require_valid() const {
        const auto errs = validate();
        if (!errs.empty()) {
            std::string msg = "GeneratorConfig:";
            for (const auto& e : errs) msg += " " + e + ";";
            throw invalid_input(msg);
        }
    }
};

struct ScenarioRecord {
    std::string id;
    Skill skill = Skill::Pick;
    std::string instruction;
    SceneSpec scene;
    int n_distractors = 0;
    double occlusion = 0.0;
    double dvfc = 0.0;
    int bin = -1;  // -1 = unassigned

    friend bool operator==(const ScenarioRecord&, const ScenarioRecord&) = default;
};

enum class RejectReason { None, PlacementFailed, OcclusionExceeded, NoAffordance };

inline const char* to_string(RejectReason r) {
    switch (r) {
        case RejectReason::None: return "none";
        case RejectReason::PlacementFailed: return "placement_failed";
        case RejectReason::OcclusionExceeded: return "occlusion_exceeded";
        case RejectReason::NoAffordance: return "no_affordance";
    }
    return "?";
}

// Rejection is a normal outcome of constraint sampling, not an error.
struct GenerationResult {
    std::optional<ScenarioRecord> record;
    RejectReason reason = RejectReason::None;

    bool accepted() const { return record.has_value(); }
};

// A task instance: scene with the task objects only, plus the instruction and
// the object names a distractor may not duplicate without making the
// instruction ambiguous.
struct BaseTask {
    Skill skill = Skill::Pick;
    SceneSpec scene;
    std::string instruction;
    std::vector<std::string> protected_names;
};

// Default cameras over the default table.
inline CameraSpec default_robot_camera() {
    CameraSpec cam;
    cam.position = {0.0, -0.62, 0.42};
    cam.look_at = {0.0, 0.0, 0.0};
    cam.vertical_fov = M_PI / 3.0;
    cam.width = 256;
    cam.height = 256;
    cam.light_dir = normalized(Vec3{0.25, -0.35, 0.9});
    return cam;
}

inline CameraSpec default_top_camera() {
    CameraSpec cam;
    cam.position = {0.0, 0.0, 0.95};
    cam.look_at = {0.0, 0.0, 0.0};
    cam.vertical_fov = 0.9;
    cam.width = 256;
    cam.height = 256;
    cam.light_dir = normalized(Vec3{0.25, -0.35, 0.9});
    return cam;
}

namespace detail {

inline SceneSpec empty_table_scene() {
    SceneSpec s;
    s.table_half_x = 0.40;
    s.table_half_y = 0.30;
    s.robot_cam = default_robot_camera();
    s.top_cam = default_top_camera();
    return s;
}

inline ObjectSpec make_object(std::string id, Shape shape, double d0, double d1, double d2,
                              Rgb color, double x, double y, double yaw = 0.0) {
    ObjectSpec o;
    o.id = std::move(id);
    o.shape = shape;
    o.dims[0] = d0;
    o.dims[1] = d1;
    o.dims[2] = d2;
    o.color = color;
    o.x = x;
    o.y = y;
    o.yaw = yaw;
    o.z = o.support_height();
    return o;
}

}  // namespace detail

// Built-in task instances for the four core skills.
inline BaseTask base_task(Skill skill) {
    using detail::make_object;
    BaseTask t;
    t.skill = skill;
    t.scene = detail::empty_table_scene();
    switch (skill) {
        case Skill::Pick:
            t.scene.objects.push_back(make_object("coke_can", Shape::Cylinder, 0.033, 0.122, 0.0,
                                                  {0.85, 0.08, 0.10}, 0.05, 0.02));
            t.scene.target_id = "coke_can";
            t.instruction = "pick up the coke can";
            t.protected_names = {"coke_can", "cola_can"};
            break;
        case Skill::Move:
            t.scene.objects.push_back(make_object("apple", Shape::Sphere, 0.040, 0.0, 0.0,
                                                  {0.85, 0.15, 0.12}, -0.08, 0.03));
            t.scene.objects.push_back(make_object("orange", Shape::Sphere, 0.038, 0.0, 0.0,
                                                  {0.95, 0.55, 0.10}, 0.10, -0.02));
            t.scene.target_id = "apple";
            t.instruction = "move the apple near the orange";
            t.protected_names = {"apple", "orange"};
            break;
        case Skill::Stack:
            t.scene.objects.push_back(make_object("red_cube", Shape::Box, 0.035, 0.035, 0.035,
                                                  {0.88, 0.10, 0.10}, -0.06, 0.0));
            t.scene.objects.push_back(make_object("green_cube", Shape::Box, 0.045, 0.045, 0.045,
                                                  {0.10, 0.70, 0.15}, 0.08, 0.04));
            t.scene.target_id = "red_cube";
            t.instruction = "stack the red cube on the green cube";
            t.protected_names = {"red_cube", "green_cube"};
            break;
        case Skill::Put:
            t.scene.objects.push_back(make_object("spoon", Shape::Box, 0.17, 0.03, 0.015,
                                                  {0.78, 0.78, 0.80}, -0.12, -0.05));
            t.scene.objects.push_back(make_object("plate", Shape::Cylinder, 0.10, 0.02, 0.0,
                                                  {0.85, 0.35, 0.30}, 0.12, 0.05));
            t.scene.target_id = "spoon";
            t.instruction = "put the spoon on the plate";
            t.protected_names = {"spoon", "plate"};
            break;
    }
    return t;
}

namespace detail {

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return s;
}

}  // namespace detail

// Draws a distractor count, rejection-samples poses against the gap and
// containment constraints, then applies the occlusion and affordance filters.
// The placement budget is per distractor; exhausting it rejects the scene.
inline GenerationResult generate(const BaseTask& base, const DistractorCatalog& catalog,
                                 const GeneratorConfig& cfg, std::uint64_t seed) {
    cfg.require_valid();
    catalog.require_valid();
    if (!base.scene.find(base.scene.target_id))
        throw invalid_input("generate: base scene lacks its target");

    std::vector<const CatalogEntry*> allowed;
    for (const auto& e : catalog.entries)
        if (std::find(base.protected_names.begin(), base.protected_names.end(), e.name) ==
            base.protected_names.end())
            allowed.push_back(&e);
    if (allowed.empty()) throw invalid_input("generate: no catalog entries allowed");

    Rng rng(seed);
    const int n = static_cast<int>(
        rng.uniform_int(static_cast<std::int64_t>(cfg.n_distractors_min),
                        static_cast<std::int64_t>(cfg.n_distractors_max)));

    SceneSpec scene = base.scene;
    for (int i = 0; i < n; ++i) {
        const CatalogEntry& entry = *allowed[rng.uniform_int(allowed.size())];
        ObjectSpec obj;
        obj.id = entry.name + "#" + std::to_string(i);
        obj.shape = entry.shape;
        obj.dims[0] = entry.dims[0];
        obj.dims[1] = entry.dims[1];
        obj.dims[2] = entry.dims[2];
        obj.color = entry.color;
        obj.z = obj.support_height();

        const double r = obj.footprint_radius();
        const double lo_x = -scene.table_half_x + r, hi_x = scene.table_half_x - r;
        const double lo_y = -scene.table_half_y + r, hi_y = scene.table_half_y - r;
        if (lo_x > hi_x || lo_y > hi_y)
            return {std::nullopt, RejectReason::PlacementFailed};

        bool placed = false;
        for (int attempt = 0; attempt < cfg.max_placement_attempts; ++attempt) {
            obj.x = rng.uniform(lo_x, hi_x);
            obj.y = rng.uniform(lo_y, hi_y);
            obj.yaw = rng.uniform(0.0, 2.0 * M_PI);
            bool ok = true;
            for (const ObjectSpec& other : scene.objects) {
                if (footprint_gap(obj, other) < cfg.delta_gap) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                placed = true;
                break;
            }
        }
        if (!placed) return {std::nullopt, RejectReason::PlacementFailed};
        scene.objects.push_back(obj);
    }

    const double occlusion = occlusion_ratio(scene, scene.robot_cam, scene.target_id);
    if (occlusion > cfg.max_occlusion)
        return {std::nullopt, RejectReason::OcclusionExceeded};
    if (!has_grasp_affordance(scene, scene.target_id, cfg.clearance))
        return {std::nullopt, RejectReason::NoAffordance};

    const Image robot_view = render(scene, scene.robot_cam).color;
    const Image top_view = render(scene, scene.top_cam).color;
    const DvfcScore score = dvfc(robot_view, top_view, cfg.clutter);

    ScenarioRecord rec;
    rec.id = std::string(to_string(base.skill)) + "-" + detail::hex64(seed);
    rec.skill = base.skill;
    rec.instruction = base.instruction;
    rec.scene = std::move(scene);
    rec.n_distractors = n;
    rec.occlusion = occlusion;
    rec.dvfc = score.value;
    return {std::move(rec), RejectReason::None};
}

enum class BinningMode { EqualWidth, EqualPopulation };

struct BinSampleResult {
    std::vector<ScenarioRecord> sampled;     // bin field assigned
    std::vector<int> shortfall;              // per bin: per_bin - population when short
    std::vector<double> edges;               // n_bins+1 edges (EqualWidth only)
};

// Equal-width bin index over [lo, hi]; the degenerate hi == lo case puts
// everything in bin 0.
inline int dvfc_bin_index(double v, double lo, double hi, int n_bins) {
    if (!(hi > lo)) return 0;
    int b = static_cast<int>(std::floor((v - lo) / (hi - lo) * n_bins));
    return std::clamp(b, 0, n_bins - 1);
}

// Groups records by DvFC into n_bins bins and uniformly samples per_bin from
// each without replacement. Bins short of per_bin contribute everything they
// have; the shortfall is reported, never silently padded.
inline BinSampleResult bin_and_sample(const std::vector<ScenarioRecord>& records, int n_bins,
                                      int per_bin, std::uint64_t seed,
                                      BinningMode mode = BinningMode::EqualWidth) {
    if (records.empty()) throw invalid_input("bin_and_sample: no records");
    if (n_bins < 1 || per_bin < 1)
        throw invalid_input("bin_and_sample: n_bins and per_bin must be >= 1");

    std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(n_bins));
    BinSampleResult result;
    result.shortfall.assign(static_cast<std::size_t>(n_bins), 0);

    if (mode == BinningMode::EqualWidth) {
        double lo = records[0].dvfc, hi = records[0].dvfc;
        for (const auto& r : records) {
            lo = std::min(lo, r.dvfc);
            hi = std::max(hi, r.dvfc);
        }
        result.edges.resize(static_cast<std::size_t>(n_bins) + 1);
        for (int b = 0; b <= n_bins; ++b)
            result.edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / n_bins;
        for (std::size_t i = 0; i < records.size(); ++i)
            groups[static_cast<std::size_t>(dvfc_bin_index(records[i].dvfc, lo, hi, n_bins))]
                .push_back(i);
    } else {
        std::vector<std::size_t> order(records.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return records[a].dvfc < records[b].dvfc;
        });
        const std::size_t n = order.size();
        for (std::size_t rank = 0; rank < n; ++rank) {
            const std::size_t b = std::min<std::size_t>(
                static_cast<std::size_t>(n_bins) - 1,
                rank * static_cast<std::size_t>(n_bins) / n);
            groups[b].push_back(order[rank]);
        }
    }

    Rng rng(seed);
    for (int b = 0; b < n_bins; ++b) {
        auto& g = groups[static_cast<std::size_t>(b)];
        const int take = std::min<int>(per_bin, static_cast<int>(g.size()));
        result.shortfall[static_cast<std::size_t>(b)] =
            per_bin - take;
        // partial Fisher-Yates: the first `take` slots become the sample
        for (int i = 0; i < take; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) +
                rng.uniform_int(g.size() - static_cast<std::size_t>(i));
            std::swap(g[static_cast<std::size_t>(i)], g[j]);
        }
        for (int i = 0; i < take; ++i) {
            ScenarioRecord rec = records[g[static_cast<std::size_t>(i)]];
            rec.bin = b;
            result.sampled.push_back(std::move(rec));
        }
    }
    return result;
}

// Distractor counts of the sparse real-world protocol.
inline const std::vector<int>& real_world_counts() {
    static const std::vector<int> v{0, 1, 2, 4, 8, 16};
    return v;
}
inline constexpr int kRealWorldVariations = 9;

// 4 skills x 6 distractor counts x 9 seeded arrangements = 216 scenarios.
// Each cell retries derived seeds until a scenario passes the constraints.
inline std::vector<ScenarioRecord> preset_real_world(const GeneratorConfig& cfg,
                                                     const DistractorCatalog& catalog) {
    cfg.require_valid();
    std::vector<ScenarioRecord> out;
    constexpr int kMaxRetries = 4096;
    for (std::size_t s = 0; s < all_skills().size(); ++s) {
        const BaseTask base = base_task(all_skills()[s]);
        for (std::size_t c = 0; c < real_world_counts().size(); ++c) {
            const int count = real_world_counts()[c];
            GeneratorConfig cell_cfg = cfg;
            cell_cfg.n_distractors_min = count;
            cell_cfg.n_distractors_max = count;
            for (int v = 0; v < kRealWorldVariations; ++v) {
                const std::uint64_t cell_index =
                    (s * real_world_counts().size() + c) * kRealWorldVariations +
                    static_cast<std::uint64_t>(v);
                const std::uint64_t cell_seed = substream_seed(cfg.seed, cell_index);
                GenerationResult res;
                int attempt = 0;
                for (; attempt < kMaxRetries; ++attempt) {
                    res = generate(base, catalog, cell_cfg,
                                   substream_seed(cell_seed, static_cast<std::uint64_t>(attempt)));
                    if (res.accepted()) break;
                }
                if (!res.accepted())
                    throw degenerate_scene("preset_real_world: no accepted arrangement after " +
                                           std::to_string(kMaxRetries) + " attempts");
                res.record->id = "real-" + std::string(to_string(base.skill)) + "-n" +
                                 std::to_string(count) + "-v" + std::to_string(v);
                out.push_back(std::move(*res.record));
            }
        }
    }
    return out;
}

}  // namespace clutterbench
