#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "clutterbench/errors.hpp"
#include "clutterbench/scenario.hpp"
#include "clutterbench/scene.hpp"

namespace clutterbench {

// ordered_json keeps insertion order, so dumps are byte-stable.
using Json = nlohmann::ordered_json;

inline Json to_json(const Rgb& c) { return Json::array({c.r, c.g, c.b}); }
inline Rgb rgb_from_json(const Json& j) { return {j.at(0), j.at(1), j.at(2)}; }

inline Json to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }
inline Vec3 vec3_from_json(const Json& j) { return {j.at(0), j.at(1), j.at(2)}; }

inline Json to_json(const ObjectSpec& o) {
    Json j;
    j["id"] = o.id;
    j["shape"] = to_string(o.shape);
    const int nd = o.shape == Shape::Box ? 3 : (o.shape == Shape::Cylinder ? 2 : 1);
    j["dims"] = Json::array();
    for (int i = 0; i < nd; ++i) j["dims"].push_back(o.dims[i]);
    j["color"] = to_json(o.color);
    j["pose"] = Json::array({o.x, o.y, o.z, o.yaw});
    return j;
}

inline ObjectSpec object_from_json(const Json& j) {
    ObjectSpec o;
    o.id = j.at("id");
    o.shape = shape_from_string(j.at("shape"));
    const auto& dims = j.at("dims");
    for (std::size_t i = 0; i < dims.size() && i < 3; ++i) o.dims[i] = dims.at(i);
    o.color = rgb_from_json(j.at("color"));
    const auto& pose = j.at("pose");
    o.x = pose.at(0);
    o.y = pose.at(1);
    o.z = pose.at(2);
    o.yaw = pose.at(3);
    return o;
}

inline Json to_json(const CameraSpec& c) {
    Json j;
    j["position"] = to_json(c.position);
    j["look_at"] = to_json(c.look_at);
    j["vertical_fov"] = c.vertical_fov;
    j["resolution"] = Json::array({c.width, c.height});
    j["light_dir"] = to_json(c.light_dir);
    return j;
}

inline CameraSpec camera_from_json(const Json& j) {
    CameraSpec c;
    c.position = vec3_from_json(j.at("position"));
    c.look_at = vec3_from_json(j.at("look_at"));
    c.vertical_fov = j.at("vertical_fov");
    c.width = j.at("resolution").at(0);
    c.height = j.at("resolution").at(1);
    c.light_dir = vec3_from_json(j.at("light_dir"));
    return c;
}

inline Json to_json(const SceneSpec& s) {
    Json j;
    j["table"] = {{"half_x", s.table_half_x},
                  {"half_y", s.table_half_y},
                  {"color", to_json(s.table_color)}};
    j["background"] = to_json(s.background_color);
    j["target"] = s.target_id;
    j["robot_cam"] = to_json(s.robot_cam);
    j["top_cam"] = to_json(s.top_cam);
    j["objects"] = Json::array();
    for (const auto& o : s.objects) j["objects"].push_back(to_json(o));
    return j;
}

inline SceneSpec scene_from_json(const Json& j) {
    SceneSpec s;
    s.table_half_x = j.at("table").at("half_x");
    s.table_half_y = j.at("table").at("half_y");
    s.table_color = rgb_from_json(j.at("table").at("color"));
    s.background_color = rgb_from_json(j.at("background"));
    s.target_id = j.at("target");
    s.robot_cam = camera_from_json(j.at("robot_cam"));
    s.top_cam = camera_from_json(j.at("top_cam"));
    for (const auto& o : j.at("objects")) s.objects.push_back(object_from_json(o));
    if (!s.target_id.empty() && !s.find(s.target_id))
        throw invalid_input("scene: target_id not among objects: " + s.target_id);
    return s;
}

inline Json to_json(const ScenarioRecord& r) {
    Json j;
    j["id"] = r.id;
    j["skill"] = to_string(r.skill);
    j["instruction"] = r.instruction;
    j["n_distractors"] = r.n_distractors;
    j["occlusion"] = r.occlusion;
    j["dvfc"] = r.dvfc;
    if (r.bin >= 0)
        j["bin"] = r.bin;
    else
        j["bin"] = nullptr;
    j["scene"] = to_json(r.scene);
    return j;
}

inline ScenarioRecord scenario_from_json(const Json& j) {
    ScenarioRecord r;
    r.id = j.at("id");
    r.skill = skill_from_string(j.at("skill"));
    r.instruction = j.at("instruction");
    r.n_distractors = j.at("n_distractors");
    r.occlusion = j.at("occlusion");
    r.dvfc = j.at("dvfc");
    r.bin = j.at("bin").is_null() ? -1 : j.at("bin").get<int>();
    r.scene = scene_from_json(j.at("scene"));
    return r;
}

// --- scene files (one scene per file) ---------------------------------------

inline constexpr const char* kSceneFormat = "clutterbench-scene";
inline constexpr const char* kScenarioFormat = "clutterbench-scenarios";
inline constexpr int kFormatVersion = 1;

inline void save_scene(const SceneSpec& scene, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("save_scene: cannot open " + path);
    Json j;
    j["format"] = kSceneFormat;
    j["version"] = kFormatVersion;
    j["scene"] = to_json(scene);
    out << j.dump(2) << "\n";
}

inline SceneSpec load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("load_scene: cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("load_scene: ") + e.what(), 1);
    }
    try {
        if (j.at("format") != kSceneFormat)
            throw invalid_input("load_scene: not a scene file: " + path);
        if (j.at("version").get<int>() != kFormatVersion)
            throw invalid_input("load_scene: unsupported version");
        return scene_from_json(j.at("scene"));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("load_scene: ") + e.what(), 1);
    }
}

// --- scenario files: versioned header line + one JSON record per line -------

inline void persist_scenarios(const std::vector<ScenarioRecord>& records,
                              const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("persist_scenarios: cannot open " + path);
    Json header;
    header["format"] = kScenarioFormat;
    header["version"] = kFormatVersion;
    header["count"] = records.size();
    out << header.dump() << "\n";
    for (const auto& r : records) out << to_json(r).dump() << "\n";
}

inline std::vector<ScenarioRecord> load_scenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("load_scenarios: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::vector<ScenarioRecord> records;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("load_scenarios: ") + e.what(), lineno);
        }
        try {
            if (!header_seen) {
                if (j.at("format") != kScenarioFormat)
                    throw parse_error("load_scenarios: bad format tag", lineno);
                if (j.at("version").get<int>() != kFormatVersion)
                    throw parse_error("load_scenarios: unsupported version", lineno);
                header_seen = true;
                continue;
            }
            records.push_back(scenario_from_json(j));
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("load_scenarios: ") + e.what(), lineno);
        } catch (const invalid_input& e) {
            throw parse_error(std::string("load_scenarios: ") + e.what(), lineno);
        }
    }
    if (!header_seen) throw parse_error("load_scenarios: missing header", 1);
    return records;
}

}  // namespace clutterbench
