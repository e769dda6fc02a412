// clutterbench command-line front end: score, render, generate, sample,
// evaluate and report workflows over scenes, scenarios and episode logs.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "clutterbench/catalog.hpp"
#include "clutterbench/clutter.hpp"
#include "clutterbench/episode.hpp"
#include "clutterbench/image_io.hpp"
#include "clutterbench/json_io.hpp"
#include "clutterbench/manifest.hpp"
#include "clutterbench/metrics.hpp"
#include "clutterbench/parallel.hpp"
#include "clutterbench/report_io.hpp"
#include "clutterbench/scenario.hpp"

namespace cb = clutterbench;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct ClutterFlags {
    int n_scales = 3;
    double sigma_w = 4.0;
    std::vector<double> weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    double pooling_order = 1.0;
    std::string scale_pooling = "max";

    void attach(CLI::App* app) {
        app->add_option("--scales", n_scales, "Number of pyramid scales")
            ->envname("CLUTTERBENCH_SCALES");
        app->add_option("--sigma-w", sigma_w, "Local statistics window sigma (px)")
            ->envname("CLUTTERBENCH_SIGMA_W");
        app->add_option("--weights", weights, "Color, contrast, orientation weights")
            ->expected(3)
            ->envname("CLUTTERBENCH_WEIGHTS");
        app->add_option("--pooling-order", pooling_order, "Minkowski order of the spatial pool")
            ->envname("CLUTTERBENCH_POOLING_ORDER");
        app->add_option("--scale-pooling", scale_pooling, "Across-scale pooling: max|mean")
            ->check(CLI::IsMember({"max", "mean"}))
            ->envname("CLUTTERBENCH_SCALE_POOLING");
    }

    cb::ClutterConfig to_config() const {
        cb::ClutterConfig cfg;
        cfg.n_scales = n_scales;
        cfg.sigma_w = sigma_w;
        cfg.w_color = weights.at(0);
        cfg.w_contrast = weights.at(1);
        cfg.w_orient = weights.at(2);
        cfg.pooling_order = pooling_order;
        cfg.scale_pooling =
            scale_pooling == "mean" ? cb::ScalePooling::Mean : cb::ScalePooling::Max;
        return cfg;
    }

    cb::Json to_json() const {
        cb::Json j;
        j["scales"] = n_scales;
        j["sigma_w"] = sigma_w;
        j["weights"] = weights;
        j["pooling_order"] = pooling_order;
        j["scale_pooling"] = scale_pooling;
        return j;
    }
};

struct GeneratorFlags {
    int n_min = 1;
    int n_max = 12;
    double delta_gap = 0.01;
    double max_occlusion = 0.5;
    double clearance = 0.04;
    int max_placement_attempts = 100;
    int n_bins = 8;
    int per_bin = 10;

    void attach(CLI::App* app) {
        app->add_option("--n-distractors-min", n_min, "Minimum distractor count")
            ->envname("CLUTTERBENCH_N_DISTRACTORS_MIN");
        app->add_option("--n-distractors-max", n_max, "Maximum distractor count")
            ->envname("CLUTTERBENCH_N_DISTRACTORS_MAX");
        app->add_option("--delta-gap", delta_gap, "Minimum footprint gap (m)")
            ->envname("CLUTTERBENCH_DELTA_GAP");
        app->add_option("--max-occlusion", max_occlusion, "Robot-view occlusion ceiling")
            ->envname("CLUTTERBENCH_MAX_OCCLUSION");
        app->add_option("--clearance", clearance, "Grasp clearance (m)")
            ->envname("CLUTTERBENCH_CLEARANCE");
        app->add_option("--max-placement-attempts", max_placement_attempts,
                        "Pose rejection budget per distractor")
            ->envname("CLUTTERBENCH_MAX_PLACEMENT_ATTEMPTS");
        app->add_option("--n-bins", n_bins, "DvFC bin count")
            ->envname("CLUTTERBENCH_N_BINS");
        app->add_option("--per-bin", per_bin, "Records sampled per bin")
            ->envname("CLUTTERBENCH_PER_BIN");
    }

    cb::GeneratorConfig to_config(std::uint64_t seed, const ClutterFlags& clutter) const {
        cb::GeneratorConfig cfg;
        cfg.n_distractors_min = n_min;
        cfg.n_distractors_max = n_max;
        cfg.delta_gap = delta_gap;
        cfg.max_occlusion = max_occlusion;
        cfg.clearance = clearance;
        cfg.max_placement_attempts = max_placement_attempts;
        cfg.seed = seed;
        cfg.n_bins = n_bins;
        cfg.per_bin = per_bin;
        cfg.clutter = clutter.to_config();
        return cfg;
    }

    cb::Json to_json() const {
        cb::Json j;
        j["n_distractors_min"] = n_min;
        j["n_distractors_max"] = n_max;
        j["delta_gap"] = delta_gap;
        j["max_occlusion"] = max_occlusion;
        j["clearance"] = clearance;
        j["max_placement_attempts"] = max_placement_attempts;
        j["n_bins"] = n_bins;
        j["per_bin"] = per_bin;
        return j;
    }
};

void require_readable(const std::string& path) {
    if (!fs::exists(path)) throw cb::invalid_input("input not readable: " + path);
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw cb::io_error("cannot create output directory: " + dir);
}

cb::DistractorCatalog load_catalog_or_builtin(const std::string& path) {
    if (path.empty()) return cb::builtin_catalog();
    require_readable(path);
    return cb::load_catalog(path);
}

bool is_scene_file(const std::string& path) { return cb::has_suffix(path, ".json"); }

// --- score -------------------------------------------------------------------

struct ScoreArgs {
    std::vector<std::string> inputs;
    std::vector<std::string> pair;
    ClutterFlags clutter;
    std::string out_dir;
    unsigned jobs = 0;
};

int run_score(const ScoreArgs& args) {
    const cb::ClutterConfig cfg = args.clutter.to_config();
    cfg.require_valid();

    struct Item {
        std::string id;
        std::vector<std::string> paths;  // 1 image, 2 images, or 1 scene file
    };
    std::vector<Item> items;
    if (!args.pair.empty()) items.push_back({"pair:" + args.pair[0], args.pair});
    for (const auto& p : args.inputs) items.push_back({p, {p}});
    if (items.empty()) throw cb::invalid_input("score: no inputs given");
    for (const auto& item : items)
        for (const auto& p : item.paths) require_readable(p);

    auto score_one = [&](std::size_t i) -> std::string {
        const Item& item = items[i];
        std::string line;
        auto record = [&](const std::string& id, const cb::ClutterScore& s,
                          const std::string& dvfc) {
            line = id + "," + std::to_string(s.total) + "," + std::to_string(s.color) + "," +
                   std::to_string(s.contrast) + "," + std::to_string(s.orient) + "," + dvfc;
        };
        if (item.paths.size() == 2) {
            const cb::DvfcScore s = cb::dvfc(cb::read_image(item.paths[0]),
                                             cb::read_image(item.paths[1]), cfg);
            record(item.id, s.robot_view, std::to_string(s.value));
        } else if (is_scene_file(item.paths[0])) {
            const cb::SceneSpec scene = cb::load_scene(item.paths[0]);
            const cb::Image robot = cb::render(scene, scene.robot_cam).color;
            const cb::Image top = cb::render(scene, scene.top_cam).color;
            const cb::DvfcScore s = cb::dvfc(robot, top, cfg);
            record(item.id, s.robot_view, std::to_string(s.value));
        } else {
            record(item.id, cb::feature_congestion(cb::read_image(item.paths[0]), cfg), "-");
        }
        return line;
    };

    const std::vector<std::string> lines = cb::parallel_map(items.size(), score_one, args.jobs);
    std::string body = "id,total,color,contrast,orient,dvfc\n";
    for (const auto& l : lines) body += l + "\n";

    if (args.out_dir.empty()) {
        std::cout << body;
    } else {
        ensure_dir(args.out_dir);
        const std::string out_path = (fs::path(args.out_dir) / "scores.csv").string();
        cb::write_text_file(out_path, body);
        cb::RunManifest manifest;
        manifest.command = "score";
        manifest.config = args.clutter.to_json();
        for (const auto& item : items)
            for (const auto& p : item.paths) manifest.add_input(p);
        manifest.add_output(out_path, "scores.csv");
        manifest.save((fs::path(args.out_dir) / "manifest.json").string());
    }
    return kExitOk;
}

// --- render --------------------------------------------------------------------

struct RenderArgs {
    std::string scene_path;
    std::string out_dir = ".";
    std::string view = "both";
};

int run_render(const RenderArgs& args) {
    require_readable(args.scene_path);
    const cb::SceneSpec scene = cb::load_scene(args.scene_path);
    ensure_dir(args.out_dir);
    cb::RunManifest manifest;
    manifest.command = "render";
    manifest.config = cb::Json{{"view", args.view}};
    manifest.add_input(args.scene_path);
    if (args.view == "robot" || args.view == "both") {
        const std::string p = (fs::path(args.out_dir) / "robot.ppm").string();
        cb::write_ppm(cb::render(scene, scene.robot_cam).color, p);
        manifest.add_output(p, "robot.ppm");
    }
    if (args.view == "top" || args.view == "both") {
        const std::string p = (fs::path(args.out_dir) / "top.ppm").string();
        cb::write_ppm(cb::render(scene, scene.top_cam).color, p);
        manifest.add_output(p, "top.ppm");
    }
    manifest.save((fs::path(args.out_dir) / "manifest.json").string());
    return kExitOk;
}

// --- generate ------------------------------------------------------------------

struct GenerateArgs {
    std::string skill = "all";
    int count = 100;
    std::uint64_t seed = 0;
    bool preset_real_world = false;
    std::string base_scene_path;
    std::string catalog_path;
    std::string out_dir = ".";
    GeneratorFlags gen;
    ClutterFlags clutter;
    unsigned jobs = 0;
};

std::vector<cb::BaseTask> resolve_tasks(const GenerateArgs& args) {
    std::vector<cb::Skill> skills;
    if (args.skill == "all")
        skills = cb::all_skills();
    else
        skills.push_back(cb::skill_from_string(args.skill));
    std::vector<cb::BaseTask> tasks;
    for (cb::Skill s : skills) {
        cb::BaseTask t = cb::base_task(s);
        if (!args.base_scene_path.empty()) {
            require_readable(args.base_scene_path);
            t.scene = cb::load_scene(args.base_scene_path);
            t.protected_names.clear();
            for (const auto& o : t.scene.objects) t.protected_names.push_back(o.id);
        }
        tasks.push_back(std::move(t));
    }
    return tasks;
}

int run_generate(const GenerateArgs& args) {
    const cb::GeneratorConfig cfg = args.gen.to_config(args.seed, args.clutter);
    cfg.require_valid();
    const cb::DistractorCatalog catalog = load_catalog_or_builtin(args.catalog_path);
    const std::vector<cb::BaseTask> tasks = resolve_tasks(args);

    std::vector<cb::ScenarioRecord> records;
    std::size_t n_rejected = 0;
    if (args.preset_real_world) {
        records = cb::preset_real_world(cfg, catalog);
    } else {
        if (args.count < 1) throw cb::invalid_input("generate: --count must be >= 1");
        // attempts run in seeded blocks; acceptance depends only on the
        // attempt's substream, so parallel evaluation matches sequential order
        const std::size_t block = std::max<std::size_t>(64, tasks.size() * 16);
        std::size_t attempt_base = 0;
        while (records.size() < static_cast<std::size_t>(args.count)) {
            if (attempt_base > static_cast<std::size_t>(args.count) * 1000 + 100000)
                throw cb::degenerate_scene("generate: acceptance rate too low");
            auto results = cb::parallel_map(
                block,
                [&](std::size_t i) {
                    const std::size_t attempt = attempt_base + i;
                    return cb::generate(tasks[attempt % tasks.size()], catalog, cfg,
                                        cb::substream_seed(cfg.seed, attempt));
                },
                args.jobs);
            for (auto& res : results) {
                if (records.size() >= static_cast<std::size_t>(args.count)) break;
                if (res.accepted())
                    records.push_back(std::move(*res.record));
                else
                    ++n_rejected;
            }
            attempt_base += block;
        }
    }

    ensure_dir(args.out_dir);
    const std::string out_path = (fs::path(args.out_dir) / "scenarios.jsonl").string();
    cb::persist_scenarios(records, out_path);

    cb::RunManifest manifest;
    manifest.command = "generate";
    manifest.seed = args.seed;
    manifest.config = args.gen.to_json();
    manifest.config["clutter"] = args.clutter.to_json();
    manifest.config["skill"] = args.skill;
    manifest.config["count"] = args.count;
    manifest.config["preset_real_world"] = args.preset_real_world;
    if (!args.base_scene_path.empty()) manifest.add_input(args.base_scene_path);
    if (!args.catalog_path.empty()) manifest.add_input(args.catalog_path);
    manifest.add_output(out_path, "scenarios.jsonl");
    manifest.save((fs::path(args.out_dir) / "manifest.json").string());

    std::cerr << "generated " << records.size() << " scenarios (" << n_rejected
              << " rejected attempts)\n";
    return kExitOk;
}

// --- sample --------------------------------------------------------------------

struct SampleArgs {
    std::string in_path;
    std::string out_dir = ".";
    int n_bins = 8;
    int per_bin = 10;
    std::uint64_t seed = 0;
    bool equal_population = false;
};

int run_sample(const SampleArgs& args) {
    require_readable(args.in_path);
    const std::vector<cb::ScenarioRecord> records = cb::load_scenarios(args.in_path);
    const cb::BinSampleResult result = cb::bin_and_sample(
        records, args.n_bins, args.per_bin, args.seed,
        args.equal_population ? cb::BinningMode::EqualPopulation : cb::BinningMode::EqualWidth);

    ensure_dir(args.out_dir);
    const std::string out_path = (fs::path(args.out_dir) / "sampled.jsonl").string();
    cb::persist_scenarios(result.sampled, out_path);

    cb::RunManifest manifest;
    manifest.command = "sample";
    manifest.seed = args.seed;
    manifest.config = cb::Json{{"n_bins", args.n_bins},
                               {"per_bin", args.per_bin},
                               {"equal_population", args.equal_population}};
    manifest.config["shortfall"] = result.shortfall;
    manifest.add_input(args.in_path);
    manifest.add_output(out_path, "sampled.jsonl");
    manifest.save((fs::path(args.out_dir) / "manifest.json").string());

    for (std::size_t b = 0; b < result.shortfall.size(); ++b)
        if (result.shortfall[b] > 0)
            std::cerr << "bin " << b << " short by " << result.shortfall[b] << " records\n";
    return kExitOk;
}

// --- evaluate / report -----------------------------------------------------------

struct EvalArgs {
    std::string scenarios_path;
    std::vector<std::string> log_paths;
    std::string out_dir = ".";
    double d_reach = cb::kDefaultReachDistance;
    int n_bins = 8;
    bool with_curves = false;  // report mode
};

std::map<std::string, std::vector<cb::EpisodeOutcome>> classify_all(
    const EvalArgs& args, const std::vector<cb::ScenarioRecord>& scenarios) {
    std::map<std::string, cb::ScenarioRecord> by_id;
    for (const auto& s : scenarios) by_id[s.id] = s;
    std::map<std::string, std::vector<cb::EpisodeOutcome>> by_policy;
    for (const auto& path : args.log_paths) {
        require_readable(path);
        for (const cb::EpisodeLog& log : cb::load_episode_logs(path)) {
            auto it = by_id.find(log.scenario_id);
            if (it == by_id.end())
                throw cb::invalid_input("episode references unknown scenario: " +
                                        log.scenario_id);
            by_policy[log.policy_id].push_back(
                cb::classify_outcome(log, it->second, args.d_reach));
        }
    }
    if (by_policy.empty()) throw cb::invalid_input("no episodes found in the given logs");
    return by_policy;
}

int run_evaluate(const EvalArgs& args) {
    require_readable(args.scenarios_path);
    const std::vector<cb::ScenarioRecord> scenarios = cb::load_scenarios(args.scenarios_path);
    const auto by_policy = classify_all(args, scenarios);

    std::vector<cb::MetricsReport> reports;
    std::string outcomes_csv =
        "policy,scenario_id,success,collided,grasped_target,steps_used,max_steps,"
        "min_target_distance,stage\n";
    for (const auto& [policy, outcomes] : by_policy) {
        cb::MetricsReport rep = cb::compute_metrics(outcomes);
        if (args.with_curves) cb::per_bin_curves(rep, outcomes, scenarios, args.n_bins);
        reports.push_back(rep);
        for (const cb::EpisodeOutcome& o : outcomes) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", o.min_target_distance);
            outcomes_csv += policy + "," + o.scenario_id + "," + std::to_string(o.success) +
                            "," + std::to_string(o.collided) + "," +
                            std::to_string(o.grasped_target) + "," +
                            std::to_string(o.steps_used) + "," + std::to_string(o.max_steps) +
                            "," + buf + "," + cb::to_string(o.stage) + "\n";
        }
    }

    ensure_dir(args.out_dir);
    cb::RunManifest manifest;
    manifest.command = args.with_curves ? "report" : "evaluate";
    manifest.config = cb::Json{{"d_reach", args.d_reach}, {"n_bins", args.n_bins}};
    manifest.add_input(args.scenarios_path);
    for (const auto& p : args.log_paths) manifest.add_input(p);

    auto emit = [&](const std::string& name, const std::string& content) {
        const std::string p = (fs::path(args.out_dir) / name).string();
        cb::write_text_file(p, content);
        manifest.add_output(p, name);
    };

    emit("outcomes.csv", outcomes_csv);
    emit("metrics.csv", cb::metrics_csv(reports));

    cb::Json report_json = cb::Json::array();
    for (const auto& rep : reports) report_json.push_back(cb::to_json(rep));

    if (args.with_curves) {
        emit("curves_dvfc.csv", cb::curve_csv(reports, &cb::MetricsReport::per_bin, "dvfc"));
        emit("curves_setsize.csv",
             cb::curve_csv(reports, &cb::MetricsReport::per_set_size, "set_size"));
        emit("curves_occlusion.csv",
             cb::curve_csv(reports, &cb::MetricsReport::per_occlusion, "occlusion"));
        emit("stages.csv", cb::stages_csv(reports));

        std::string reach_csv;
        for (const auto& [policy, outcomes] : by_policy)
            reach_csv += cb::reach_failures_csv(cb::reach_failure_distribution(outcomes), policy);
        emit("reach_failures.csv", reach_csv);

        if (by_policy.size() >= 2) {
            std::vector<std::string> policy_ids;
            std::vector<std::set<std::string>> success_sets;
            for (const auto& [policy, outcomes] : by_policy) {
                policy_ids.push_back(policy);
                std::set<std::string> s;
                for (const auto& o : outcomes)
                    if (o.success) s.insert(o.scenario_id);
                success_sets.push_back(std::move(s));
            }
            const cb::AgreementReport agr = cb::agreement(success_sets, scenarios.size());
            emit("agreement.csv", cb::agreement_csv(agr, policy_ids));
            cb::Json aj;
            aj["union_sr"] = agr.union_sr;
            aj["union_size"] = agr.union_size;
            report_json.push_back(cb::Json{{"agreement", aj}});
        }
    }

    {
        const std::string p = (fs::path(args.out_dir) / "report.json").string();
        std::ofstream out(p);
        out << report_json.dump(2) << "\n";
        manifest.add_output(p, "report.json");
    }
    manifest.save((fs::path(args.out_dir) / "manifest.json").string());

    for (const auto& rep : reports)
        std::cout << cb::metrics_csv_row(rep) << "\n";
    return kExitOk;
}

// --- catalog -------------------------------------------------------------------

int run_catalog(const std::string& out_path) {
    if (out_path.empty()) {
        std::ostringstream ss;
        const cb::DistractorCatalog cat = cb::builtin_catalog();
        for (const auto& e : cat.entries) std::cout << e.name << "\n";
        return kExitOk;
    }
    cb::save_catalog(cb::builtin_catalog(), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clutter-aware evaluation toolkit for tabletop manipulation policies"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read default flag values from an INI/TOML file");

    ScoreArgs score_args;
    GenerateArgs gen_args;
    RenderArgs render_args;
    SampleArgs sample_args;
    EvalArgs eval_args;
    EvalArgs report_args;
    std::string catalog_out;

    CLI::App* score = app.add_subcommand("score", "Clutter-score images or scene files");
    score->add_option("inputs", score_args.inputs, "PPM/PNG images or scene .json files");
    score->add_option("--pair", score_args.pair, "Robot-view and top-view image pair")
        ->expected(2);
    score->add_option("--out-dir", score_args.out_dir, "Write scores.csv + manifest here");
    score->add_option("--jobs", score_args.jobs, "Worker pool size")
        ->envname("CLUTTERBENCH_JOBS");
    score_args.clutter.attach(score);

    CLI::App* render = app.add_subcommand("render", "Render a scene file to PPM images");
    render->add_option("scene", render_args.scene_path, "Scene .json file")->required();
    render->add_option("--out-dir", render_args.out_dir, "Output directory");
    render->add_option("--view", render_args.view, "robot|top|both")
        ->check(CLI::IsMember({"robot", "top", "both"}));

    CLI::App* generate = app.add_subcommand("generate", "Generate cluttered scenarios");
    generate->add_option("--skill", gen_args.skill, "pick|move|stack|put|all")
        ->check(CLI::IsMember({"pick", "move", "stack", "put", "all"}));
    generate->add_option("--count", gen_args.count, "Accepted scenarios to emit");
    generate->add_option("--seed", gen_args.seed, "Master seed")
        ->envname("CLUTTERBENCH_SEED");
    generate->add_flag("--preset-real-world", gen_args.preset_real_world,
                       "Emit the 4 skills x {0,1,2,4,8,16} x 9 grid (216 scenarios)");
    generate->add_option("--base", gen_args.base_scene_path, "Base scene .json override");
    generate->add_option("--catalog", gen_args.catalog_path, "Distractor catalog file");
    generate->add_option("--out-dir", gen_args.out_dir, "Output directory");
    generate->add_option("--jobs", gen_args.jobs, "Worker pool size")
        ->envname("CLUTTERBENCH_JOBS");
    gen_args.gen.attach(generate);
    gen_args.clutter.attach(generate);

    CLI::App* sample = app.add_subcommand("sample", "Bin scenarios by DvFC and sample per bin");
    sample->add_option("--in", sample_args.in_path, "scenarios.jsonl")->required();
    sample->add_option("--out-dir", sample_args.out_dir, "Output directory");
    sample->add_option("--n-bins", sample_args.n_bins, "Bin count");
    sample->add_option("--per-bin", sample_args.per_bin, "Records per bin");
    sample->add_option("--seed", sample_args.seed, "Sampling seed")
        ->envname("CLUTTERBENCH_SEED");
    sample->add_flag("--equal-population", sample_args.equal_population,
                     "Rank-based bins instead of equal-width");

    CLI::App* evaluate = app.add_subcommand("evaluate", "Classify episode logs and compute metrics");
    evaluate->add_option("--scenarios", eval_args.scenarios_path, "scenarios.jsonl")->required();
    evaluate->add_option("--logs", eval_args.log_paths, "Episode log files")->required();
    evaluate->add_option("--d-reach", eval_args.d_reach, "Reach distance threshold (m)");
    evaluate->add_option("--out-dir", eval_args.out_dir, "Output directory");

    CLI::App* report = app.add_subcommand(
        "report", "Full analysis: metrics, degradation curves, stages, agreement");
    report->add_option("--scenarios", report_args.scenarios_path, "scenarios.jsonl")->required();
    report->add_option("--logs", report_args.log_paths, "Episode log files")->required();
    report->add_option("--d-reach", report_args.d_reach, "Reach distance threshold (m)");
    report->add_option("--n-bins", report_args.n_bins, "DvFC bin count");
    report->add_option("--out-dir", report_args.out_dir, "Output directory");

    CLI::App* catalog = app.add_subcommand("catalog", "Print or export the distractor catalog");
    catalog->add_option("--out", catalog_out, "Write the catalog data file here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (score->parsed()) return run_score(score_args);
        if (render->parsed()) return run_render(render_args);
        if (generate->parsed()) return run_generate(gen_args);
        if (sample->parsed()) return run_sample(sample_args);
        if (evaluate->parsed()) {
            eval_args.with_curves = false;
            return run_evaluate(eval_args);
        }
        if (report->parsed()) {
            report_args.with_curves = true;
            return run_evaluate(report_args);
        }
        if (catalog->parsed()) return run_catalog(catalog_out);
    } catch (const cb::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cb::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
