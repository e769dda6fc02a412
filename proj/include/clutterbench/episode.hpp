#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "clutterbench/errors.hpp"
#include "clutterbench/vec.hpp"

namespace clutterbench {

struct EpisodeStep {
    int index = 0;
    Vec3 ee;                            // end-effector position, meters
    std::optional<std::string> grasped; // object id currently grasped
    std::vector<std::string> contacts;  // object ids in contact this step

    friend bool operator==(const EpisodeStep&, const EpisodeStep&) = default;
};

struct EpisodeLog {
    std::string scenario_id;
    std::string policy_id;
    int max_steps = 0;
    bool success = false;
    std::vector<EpisodeStep> steps;

    void require_valid() const {
        if (static_cast<int>(steps.size()) > max_steps)
            throw invalid_input("episode " + scenario_id + ": more steps than max_steps");
        for (std::size_t i = 1; i < steps.size(); ++i)
            if (steps[i].index <= steps[i - 1].index)
                throw invalid_input("episode " + scenario_id +
                                    ": step indices not strictly increasing");
    }

    friend bool operator==(const EpisodeLog&, const EpisodeLog&) = default;
};

// Line format, one step per line under a per-episode header:
//
//   episode <scenario_id> <policy_id> <max_steps> <success 0|1>
//   step <index> <ee_x> <ee_y> <ee_z> <grasped_id|-> <contact,contact|->
//
// '#' starts a comment. IDs must be whitespace-free.
inline std::vector<EpisodeLog> parse_episode_logs(std::istream& in) {
    std::vector<EpisodeLog> logs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string kind;
        ss >> kind;
        if (kind == "episode") {
            EpisodeLog log;
            int success = 0;
            if (!(ss >> log.scenario_id >> log.policy_id >> log.max_steps >> success))
                throw parse_error("malformed episode header", lineno);
            log.success = success != 0;
            logs.push_back(std::move(log));
        } else if (kind == "step") {
            if (logs.empty()) throw parse_error("step before any episode header", lineno);
            EpisodeStep step;
            std::string grasped, contacts;
            if (!(ss >> step.index >> step.ee.x >> step.ee.y >> step.ee.z >> grasped >> contacts))
                throw parse_error("malformed step record", lineno);
            if (grasped != "-") step.grasped = grasped;
            if (contacts != "-") {
                std::string item;
                std::istringstream cs(contacts);
                while (std::getline(cs, item, ','))
                    if (!item.empty()) step.contacts.push_back(item);
            }
            logs.back().steps.push_back(std::move(step));
        } else {
            throw parse_error("unknown record kind: " + kind, lineno);
        }
    }
    for (const auto& log : logs) log.require_valid();
    return logs;
}

inline std::vector<EpisodeLog> load_episode_logs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("load_episode_logs: cannot open " + path);
    return parse_episode_logs(in);
}

inline void write_episode_logs(const std::vector<EpisodeLog>& logs, std::ostream& out) {
    out.precision(17);
    for (const EpisodeLog& log : logs) {
        out << "episode " << log.scenario_id << " " << log.policy_id << " " << log.max_steps
            << " " << (log.success ? 1 : 0) << "\n";
        for (const EpisodeStep& s : log.steps) {
            out << "step " << s.index << " " << s.ee.x << " " << s.ee.y << " " << s.ee.z << " "
                << (s.grasped ? *s.grasped : "-") << " ";
            if (s.contacts.empty()) {
                out << "-";
            } else {
                for (std::size_t i = 0; i < s.contacts.size(); ++i)
                    out << (i ? "," : "") << s.contacts[i];
            }
            out << "\n";
        }
    }
}

inline void save_episode_logs(const std::vector<EpisodeLog>& logs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("save_episode_logs: cannot open " + path);
    write_episode_logs(logs, out);
}

}  // namespace clutterbench
