#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "clutterbench/json_io.hpp"
#include "clutterbench/metrics.hpp"

namespace clutterbench {

inline std::string format_rate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline constexpr const char* kErConventionNote =
    "# er = mean(steps_used/max_steps) over successful episodes only; see n_success";

inline constexpr const char* kMetricsCsvHeader =
    "policy,n_episodes,n_success,sr,h_sr,cr,gfr,er";

inline std::string metrics_csv_row(const MetricsReport& rep) {
    return rep.policy_id + "," + std::to_string(rep.n_episodes) + "," +
           std::to_string(rep.n_success) + "," + format_rate(rep.sr) + "," +
           format_rate(rep.h_sr) + "," + format_rate(rep.cr) + "," + format_rate(rep.gfr) +
           "," + format_rate(rep.er);
}

inline std::string metrics_csv(const std::vector<MetricsReport>& reports) {
    std::string out = std::string(kErConventionNote) + "\n" + kMetricsCsvHeader + "\n";
    for (const auto& r : reports) out += metrics_csv_row(r) + "\n";
    return out;
}

// Empty groups keep their row with n=0 and blank rate fields.
inline std::string curve_csv(const std::vector<MetricsReport>& reports,
                             const std::vector<CurveRow> MetricsReport::*member,
                             const std::string& key_name) {
    std::string out = "policy," + key_name + "_lo," + key_name + "_hi,n,sr,cr,gfr\n";
    for (const auto& rep : reports) {
        for (const CurveRow& row : rep.*member) {
            out += rep.policy_id + "," + std::to_string(row.key_lo) + "," +
                   std::to_string(row.key_hi) + "," + std::to_string(row.n) + ",";
            if (row.n > 0)
                out += format_rate(row.sr) + "," + format_rate(row.cr) + "," +
                       format_rate(row.gfr);
            else
                out += ",,";
            out += "\n";
        }
    }
    return out;
}

inline std::string stages_csv(const std::vector<MetricsReport>& reports) {
    std::string out = "policy,success,fail_reach,fail_grasp,fail_after_grasp\n";
    for (const auto& r : reports) {
        out += r.policy_id;
        for (int i = 0; i < 4; ++i) out += "," + std::to_string(r.stage_histogram[i]);
        out += "\n";
    }
    return out;
}

inline std::string agreement_csv(const AgreementReport& rep,
                                 const std::vector<std::string>& policy_ids) {
    auto mask_label = [&](unsigned mask) {
        std::string label;
        for (std::size_t i = 0; i < policy_ids.size(); ++i)
            if (mask & (1u << i)) label += (label.empty() ? "" : "&") + policy_ids[i];
        return label;
    };
    std::string out = "region,count,fraction_of_union\n";
    for (const AgreementRegion& r : rep.regions)
        out += mask_label(r.mask) + "," + std::to_string(r.count) + "," +
               format_rate(r.fraction) + "\n";
    for (const PairwiseAgreement& pw : rep.pairwise)
        for (const AgreementRegion& r : pw.regions) {
            const unsigned remapped =
                ((r.mask & 1u) ? 1u << pw.policy_a : 0u) |
                ((r.mask & 2u) ? 1u << pw.policy_b : 0u);
            out += mask_label(remapped) + "," + std::to_string(r.count) + "," +
                   format_rate(r.fraction) + "\n";
        }
    out += "union,," + format_rate(rep.union_sr) + "\n";
    return out;
}

inline std::string reach_failures_csv(const ReachFailureDistribution& dist,
                                      const std::string& policy_id) {
    std::string out = "policy,scenario_id,min_target_distance\n";
    out.reserve(out.size() + dist.entries.size() * 32);
    char buf[64];
    for (const auto& [id, d] : dist.entries) {
        std::snprintf(buf, sizeof buf, "%.6f", d);
        out += policy_id + "," + id + "," + buf + "\n";
    }
    std::snprintf(buf, sizeof buf, "# median=%.6f p90=%.6f dispersed=%d", dist.median,
                  dist.p90, dist.dispersed ? 1 : 0);
    out += std::string(buf) + "\n";
    return out;
}

inline Json curve_rows_to_json(const std::vector<CurveRow>& rows) {
    Json arr = Json::array();
    for (const CurveRow& r : rows) {
        Json j;
        j["lo"] = r.key_lo;
        j["hi"] = r.key_hi;
        j["n"] = r.n;
        if (r.n > 0) {
            j["sr"] = r.sr;
            j["cr"] = r.cr;
            j["gfr"] = r.gfr;
        } else {
            j["sr"] = nullptr;
            j["cr"] = nullptr;
            j["gfr"] = nullptr;
        }
        arr.push_back(j);
    }
    return arr;
}

inline Json to_json(const MetricsReport& rep) {
    Json j;
    j["policy"] = rep.policy_id;
    j["n_episodes"] = rep.n_episodes;
    j["n_success"] = rep.n_success;
    j["sr"] = rep.sr;
    j["h_sr"] = rep.h_sr;
    j["cr"] = rep.cr;
    j["gfr"] = rep.gfr;
    j["er"] = rep.er;
    j["er_convention"] = "mean over successful episodes";
    Json stages;
    for (int i = 0; i < 4; ++i)
        stages[to_string(static_cast<FailureStage>(i))] = rep.stage_histogram[i];
    j["stages"] = stages;
    j["per_bin"] = curve_rows_to_json(rep.per_bin);
    j["per_set_size"] = curve_rows_to_json(rep.per_set_size);
    j["per_occlusion"] = curve_rows_to_json(rep.per_occlusion);
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << content;
}

}  // namespace clutterbench
