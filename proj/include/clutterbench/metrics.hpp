#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "clutterbench/episode.hpp"
#include "clutterbench/errors.hpp"
#include "clutterbench/scenario.hpp"

namespace clutterbench {

enum class FailureStage { Success, FailReach, FailGrasp, FailAfterGrasp };

inline const char* to_string(FailureStage s) {
    switch (s) {
        case FailureStage::Success: return "success";
        case FailureStage::FailReach: return "fail_reach";
        case FailureStage::FailGrasp: return "fail_grasp";
        case FailureStage::FailAfterGrasp: return "fail_after_grasp";
    }
    return "?";
}

inline constexpr double kDefaultReachDistance = 0.05;  // meters

struct EpisodeOutcome {
    std::string scenario_id;
    std::string policy_id;
    bool success = false;
    bool collided = false;
    bool grasped_target = false;
    int steps_used = 0;
    int max_steps = 0;
    double min_target_distance = std::numeric_limits<double>::infinity();
    FailureStage stage = FailureStage::FailReach;
};

// Stage assignment is ordered and mutually exclusive: SUCCESS, else
// FAIL_REACH when the end effector never came within d_reach of the target
// grasp point, else FAIL_GRASP when the target was never grasped, else
// FAIL_AFTER_GRASP. Any contact with a non-target object counts as a
// collision, once per episode.
inline EpisodeOutcome classify_outcome(const EpisodeLog& log, const ScenarioRecord& scenario,
                                       double d_reach = kDefaultReachDistance) {
    if (log.scenario_id != scenario.id)
        throw invalid_input("classify_outcome: log references scenario '" + log.scenario_id +
                            "', got record '" + scenario.id + "'");
    log.require_valid();
    const ObjectSpec& target = scenario.scene.target();
    const Vec3 grasp_point{target.x, target.y, target.z};

    EpisodeOutcome out;
    out.scenario_id = log.scenario_id;
    out.policy_id = log.policy_id;
    out.success = log.success;
    out.steps_used = static_cast<int>(log.steps.size());
    out.max_steps = log.max_steps;
    for (const EpisodeStep& s : log.steps) {
        out.min_target_distance = std::min(out.min_target_distance, norm(s.ee - grasp_point));
        if (s.grasped && *s.grasped == scenario.scene.target_id) out.grasped_target = true;
        for (const std::string& c : s.contacts)
            if (c != scenario.scene.target_id) out.collided = true;
    }

    const bool reached = out.min_target_distance <= d_reach;
    if (out.success)
        out.stage = FailureStage::Success;
    else if (!reached)
        out.stage = FailureStage::FailReach;
    else if (!out.grasped_target)
        out.stage = FailureStage::FailGrasp;
    else
        out.stage = FailureStage::FailAfterGrasp;
    return out;
}

// One grouped row of a degradation curve. n == 0 marks an empty group that
// must still be emitted.
struct CurveRow {
    double key_lo = 0.0;
    double key_hi = 0.0;
    int n = 0;
    double sr = 0.0;
    double cr = 0.0;
    double gfr = 0.0;
};

struct MetricsReport {
    std::string policy_id;
    int n_episodes = 0;
    int n_success = 0;
    double sr = 0.0;
    double h_sr = 0.0;
    double cr = 0.0;
    double gfr = 0.0;
    double er = 0.0;  // mean steps_used/max_steps over successful episodes
    int stage_histogram[4] = {0, 0, 0, 0};  // indexed by FailureStage
    std::vector<CurveRow> per_bin;
    std::vector<CurveRow> per_set_size;
    std::vector<CurveRow> per_occlusion;
};

inline MetricsReport compute_metrics(const std::vector<EpisodeOutcome>& outcomes) {
    if (outcomes.empty()) throw invalid_input("compute_metrics: no outcomes");
    MetricsReport rep;
    rep.policy_id = outcomes.front().policy_id;
    rep.n_episodes = static_cast<int>(outcomes.size());
    double er_sum = 0.0;
    for (const EpisodeOutcome& o : outcomes) {
        rep.sr += o.success;
        rep.h_sr += o.success && !o.collided;
        rep.cr += o.collided;
        rep.gfr += !o.grasped_target;
        rep.stage_histogram[static_cast<int>(o.stage)] += 1;
        if (o.success) {
            rep.n_success += 1;
            if (o.max_steps > 0)
                er_sum += static_cast<double>(o.steps_used) / o.max_steps;
        }
    }
    const double n = rep.n_episodes;
    rep.sr /= n;
    rep.h_sr /= n;
    rep.cr /= n;
    rep.gfr /= n;
    rep.er = rep.n_success > 0 ? er_sum / rep.n_success : 0.0;
    return rep;
}

namespace detail {

struct GroupAccum {
    int n = 0;
    int success = 0;
    int collided = 0;
    int not_grasped = 0;

    void add(const EpisodeOutcome& o) {
        ++n;
        success += o.success;
        collided += o.collided;
        not_grasped += !o.grasped_target;
    }

    CurveRow row(double lo, double hi) const {
        CurveRow r;
        r.key_lo = lo;
        r.key_hi = hi;
        r.n = n;
        if (n > 0) {
            r.sr = static_cast<double>(success) / n;
            r.cr = static_cast<double>(collided) / n;
            r.gfr = static_cast<double>(not_grasped) / n;
        }
        return r;
    }
};

inline const ScenarioRecord& scenario_for(const std::vector<ScenarioRecord>& scenarios,
                                          const std::string& id) {
    for (const auto& s : scenarios)
        if (s.id == id) return s;
    throw invalid_input("no scenario record for episode: " + id);
}

}  // namespace detail

// Degradation curves: SR/CR/GFR grouped by DvFC bin, by distractor count and
// by occlusion decile. Empty groups stay in the output with n = 0.
inline void per_bin_curves(MetricsReport& rep, const std::vector<EpisodeOutcome>& outcomes,
                           const std::vector<ScenarioRecord>& scenarios, int n_bins) {
    if (n_bins < 1) throw invalid_input("per_bin_curves: n_bins must be >= 1");

    // DvFC bins: stored assignments when every referenced scenario has one,
    // otherwise equal-width bins over the observed DvFC range.
    bool all_assigned = true;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const EpisodeOutcome& o : outcomes) {
        const ScenarioRecord& s = detail::scenario_for(scenarios, o.scenario_id);
        all_assigned = all_assigned && s.bin >= 0 && s.bin < n_bins;
        lo = std::min(lo, s.dvfc);
        hi = std::max(hi, s.dvfc);
    }

    std::vector<detail::GroupAccum> bins(static_cast<std::size_t>(n_bins));
    std::map<int, detail::GroupAccum> by_count;
    std::vector<detail::GroupAccum> deciles(10);
    for (const EpisodeOutcome& o : outcomes) {
        const ScenarioRecord& s = detail::scenario_for(scenarios, o.scenario_id);
        const int b = all_assigned ? s.bin : dvfc_bin_index(s.dvfc, lo, hi, n_bins);
        bins[static_cast<std::size_t>(b)].add(o);
        by_count[s.n_distractors].add(o);
        const int d = std::clamp(static_cast<int>(std::floor(s.occlusion * 10.0)), 0, 9);
        deciles[static_cast<std::size_t>(d)].add(o);
    }

    rep.per_bin.clear();
    for (int b = 0; b < n_bins; ++b) {
        const double w = hi > lo ? (hi - lo) / n_bins : 0.0;
        rep.per_bin.push_back(
            bins[static_cast<std::size_t>(b)].row(lo + w * b, lo + w * (b + 1)));
    }
    rep.per_set_size.clear();
    for (const auto& [count, acc] : by_count)
        rep.per_set_size.push_back(acc.row(count, count));
    rep.per_occlusion.clear();
    for (int d = 0; d < 10; ++d)
        rep.per_occlusion.push_back(deciles[static_cast<std::size_t>(d)].row(d / 10.0, (d + 1) / 10.0));
}

// --- multi-policy agreement ------------------------------------------------

struct AgreementRegion {
    unsigned mask = 0;       // bit i set: policy i succeeds in this region
    std::size_t count = 0;
    double fraction = 0.0;   // of the union
};

struct PairwiseAgreement {
    int policy_a = 0;
    int policy_b = 0;
    std::vector<AgreementRegion> regions;  // 3 regions of the pair union
};

struct AgreementReport {
    std::size_t union_size = 0;
    double union_sr = 0.0;  // union size / universe
    std::vector<AgreementRegion> regions;        // populated for 2..3 policies
    std::vector<PairwiseAgreement> pairwise;     // populated for > 3 policies
};

namespace detail {

inline std::vector<AgreementRegion> venn_regions(
    const std::vector<std::set<std::string>>& sets, const std::set<std::string>& uni) {
    const unsigned k = static_cast<unsigned>(sets.size());
    std::vector<AgreementRegion> regions(static_cast<std::size_t>(1u << k) - 1);
    for (unsigned m = 1; m < (1u << k); ++m) regions[m - 1].mask = m;
    for (const std::string& id : uni) {
        unsigned m = 0;
        for (unsigned i = 0; i < k; ++i)
            if (sets[i].count(id)) m |= 1u << i;
        regions[m - 1].count += 1;
    }
    for (auto& r : regions)
        r.fraction = uni.empty() ? 0.0 : static_cast<double>(r.count) / uni.size();
    return regions;
}

}  // namespace detail

// Venn decomposition of per-policy success-scenario sets. Region fractions
// are relative to the union; union_sr is the combined success rate over the
// whole scenario universe. More than 3 policies fall back to pairwise
// decompositions.
inline AgreementReport agreement(const std::vector<std::set<std::string>>& success_sets,
                                 std::size_t universe_size) {
    if (success_sets.size() < 2)
        throw invalid_input("agreement: need at least 2 policies");
    if (universe_size == 0) throw invalid_input("agreement: empty universe");

    std::set<std::string> uni;
    for (const auto& s : success_sets) uni.insert(s.begin(), s.end());
    if (uni.size() > universe_size)
        throw invalid_input("agreement: union larger than the universe");

    AgreementReport rep;
    rep.union_size = uni.size();
    rep.union_sr = static_cast<double>(uni.size()) / static_cast<double>(universe_size);

    if (success_sets.size() <= 3) {
        rep.regions = detail::venn_regions(success_sets, uni);
    } else {
        for (std::size_t a = 0; a < success_sets.size(); ++a) {
            for (std::size_t b = a + 1; b < success_sets.size(); ++b) {
                std::set<std::string> pair_uni;
                pair_uni.insert(success_sets[a].begin(), success_sets[a].end());
                pair_uni.insert(success_sets[b].begin(), success_sets[b].end());
                PairwiseAgreement pw;
                pw.policy_a = static_cast<int>(a);
                pw.policy_b = static_cast<int>(b);
                pw.regions = detail::venn_regions({success_sets[a], success_sets[b]}, pair_uni);
                rep.pairwise.push_back(std::move(pw));
            }
        }
    }
    return rep;
}

// --- fail-to-reach distribution ---------------------------------------------

struct ReachFailureDistribution {
    std::vector<std::pair<std::string, double>> entries;  // (scenario_id, closest approach)
    double median = 0.0;
    double p90 = 0.0;
    bool dispersed = false;  // any closest approach beyond 0.5 m
};

inline constexpr double kDispersionDistance = 0.5;  // meters

inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return sorted[0];
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    if (i + 1 >= sorted.size()) return sorted.back();
    return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

inline ReachFailureDistribution reach_failure_distribution(
    const std::vector<EpisodeOutcome>& outcomes) {
    ReachFailureDistribution dist;
    std::vector<double> values;
    for (const EpisodeOutcome& o : outcomes) {
        if (o.stage != FailureStage::FailReach) continue;
        dist.entries.emplace_back(o.scenario_id, o.min_target_distance);
        values.push_back(o.min_target_distance);
        if (o.min_target_distance > kDispersionDistance) dist.dispersed = true;
    }
    std::sort(values.begin(), values.end());
    dist.median = quantile_sorted(values, 0.5);
    dist.p90 = quantile_sorted(values, 0.9);
    return dist;
}

}  // namespace clutterbench
