#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "clutterbench/image_io.hpp"
#include "clutterbench/json_io.hpp"
#include "clutterbench/manifest.hpp"
#include "clutterbench/scenario.hpp"

#include "support/helpers.hpp"

using namespace clutterbench;

namespace {

const char* cli_path() { return CLUTTERBENCH_CLI_PATH; }

int run_cli(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = std::string(cli_path()) + " " + args;
    if (!stdout_file.empty()) cmd += " > " + stdout_file;
    cmd += " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string small_scene_file(const std::string& dir, int n_extra) {
    BaseTask task = base_task(Skill::Pick);
    task.scene.robot_cam.width = task.scene.robot_cam.height = 64;
    task.scene.top_cam.width = task.scene.top_cam.height = 64;
    if (n_extra > 0) {
        const DistractorCatalog cat = builtin_catalog();
        GeneratorConfig cfg;
        cfg.n_distractors_min = cfg.n_distractors_max = n_extra;
        cfg.clutter.n_scales = 2;
        for (std::uint64_t i = 0;; ++i) {
            GenerationResult res = generate(task, cat, cfg, substream_seed(123, i));
            if (res.accepted()) {
                task.scene = res.record->scene;
                break;
            }
            REQUIRE(i < 200);
        }
    }
    const std::string path = dir + "/scene" + std::to_string(n_extra) + ".json";
    save_scene(task.scene, path);
    return path;
}

}  // namespace

TEST_CASE("score: constant image reports a zero total") {
    const std::string dir = cbt::test_dir("cli_score");
    const std::string img_path = dir + "/flat.ppm";
    write_ppm(cbt::constant_rgb(32, 32, 0.42, 0.42, 0.42), img_path);
    const std::string out = dir + "/out.txt";
    REQUIRE(run_cli("score " + img_path, out) == 0);
    const std::string text = slurp(out);
    std::istringstream lines(text);
    std::string header, record;
    std::getline(lines, header);
    std::getline(lines, record);
    CHECK(header == "id,total,color,contrast,orient,dvfc");
    CHECK(record.find(img_path + ",0.000000,") == 0);
    CHECK(record.rfind(",-") == record.size() - 2);  // no dvfc for single images
}

TEST_CASE("score: a cluttered scene outscores the bare scene") {
    const std::string dir = cbt::test_dir("cli_score_scene");
    const std::string bare = small_scene_file(dir, 0);
    const std::string cluttered = small_scene_file(dir, 8);
    const std::string out = dir + "/out.txt";
    REQUIRE(run_cli("score --scales 2 " + bare + " " + cluttered, out) == 0);
    std::istringstream lines(slurp(out));
    std::string header;
    std::getline(lines, header);
    auto parse_line = [&](double& dvfc) {
        std::string line;
        std::getline(lines, line);
        const auto last = line.rfind(',');
        dvfc = std::stod(line.substr(last + 1));
    };
    double dvfc_bare = 0.0, dvfc_cluttered = 0.0;
    parse_line(dvfc_bare);
    parse_line(dvfc_cluttered);
    CHECK(dvfc_cluttered > dvfc_bare);
}

TEST_CASE("score: missing input exits with the usage code") {
    CHECK(run_cli("score /nonexistent/file.ppm") == 2);
}

TEST_CASE("usage errors exit 2, help exits 0") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("bogus-subcommand") == 2);
    CHECK(run_cli("") == 2);  // a subcommand is required
    CHECK(run_cli("render") == 2);  // missing required scene argument
}

TEST_CASE("render writes both views plus a manifest") {
    const std::string dir = cbt::test_dir("cli_render");
    const std::string scene = small_scene_file(dir, 0);
    REQUIRE(run_cli("render " + scene + " --out-dir " + dir + "/out") == 0);
    const Image robot = read_ppm(dir + "/out/robot.ppm");
    CHECK(robot.width == 64);
    const Image top = read_ppm(dir + "/out/top.ppm");
    CHECK(top.width == 64);
    const Json manifest = Json::parse(slurp(dir + "/out/manifest.json"));
    CHECK(manifest.at("command") == "render");
    CHECK(manifest.at("outputs").size() == 2);
}

TEST_CASE("generate is deterministic: identical seeds, identical bytes") {
    const std::string dir = cbt::test_dir("cli_generate");
    const std::string base = small_scene_file(dir, 0);
    const std::string flags =
        " --skill pick --count 4 --seed 7 --scales 2 --base " + base + " --jobs 2 --out-dir ";
    REQUIRE(run_cli("generate" + flags + dir + "/a") == 0);
    REQUIRE(run_cli("generate" + flags + dir + "/b") == 0);
    CHECK(slurp(dir + "/a/scenarios.jsonl") == slurp(dir + "/b/scenarios.jsonl"));
    CHECK(slurp(dir + "/a/manifest.json") == slurp(dir + "/b/manifest.json"));
    CHECK(!slurp(dir + "/a/scenarios.jsonl").empty());

    // a different seed changes the batch
    REQUIRE(run_cli("generate --skill pick --count 4 --seed 8 --scales 2 --base " + base +
                    " --out-dir " + dir + "/c") == 0);
    CHECK(slurp(dir + "/a/scenarios.jsonl") != slurp(dir + "/c/scenarios.jsonl"));
}

TEST_CASE("generate validates configuration and lists every bad field") {
    const std::string dir = cbt::test_dir("cli_generate_bad");
    const std::string err_file = dir + "/err.txt";
    const std::string cmd = std::string(cli_path()) +
                            " generate --max-occlusion 2 --per-bin 0 --n-bins 0 2> " + err_file;
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
    const std::string err = slurp(err_file);
    CHECK(err.find("max_occlusion") != std::string::npos);
    CHECK(err.find("per_bin") != std::string::npos);
    CHECK(err.find("n_bins") != std::string::npos);
}

TEST_CASE("sample partitions the stepped fixture into 8 bins of 10") {
    const std::string dir = cbt::test_dir("cli_sample");
    std::vector<ScenarioRecord> records;
    for (int k = 0; k < 80; ++k) {
        ScenarioRecord r;
        r.id = "r" + std::to_string(k);
        r.skill = Skill::Pick;
        r.dvfc = 0.1 * k;
        ObjectSpec o;
        o.id = "t";
        o.shape = Shape::Sphere;
        o.dims[0] = 0.03;
        o.z = 0.03;
        r.scene.objects.push_back(o);
        r.scene.target_id = "t";
        records.push_back(r);
    }
    persist_scenarios(records, dir + "/in.jsonl");
    REQUIRE(run_cli("sample --in " + dir + "/in.jsonl --n-bins 8 --per-bin 10 --seed 3 --out-dir " +
                    dir + "/out") == 0);
    const std::vector<ScenarioRecord> sampled = load_scenarios(dir + "/out/sampled.jsonl");
    CHECK(sampled.size() == 80);
    std::map<int, int> bins;
    for (const auto& r : sampled) bins[r.bin]++;
    REQUIRE(bins.size() == 8);
    for (const auto& [b, n] : bins) CHECK(n == 10);
}

TEST_CASE("evaluate and report reproduce the hand-count fixture end to end") {
    const std::string dir = cbt::test_dir("cli_eval");

    // four synthetic scenarios and logs: successes {1,2}, collisions {2,3}, grasped {1,2,3}
    std::vector<ScenarioRecord> scenarios;
    for (int i = 1; i <= 4; ++i) {
        ScenarioRecord r;
        r.id = "e" + std::to_string(i);
        r.skill = Skill::Pick;
        r.dvfc = i * 1.0;
        r.n_distractors = i;
        r.occlusion = 0.05 * i;
        ObjectSpec o;
        o.id = "t";
        o.shape = Shape::Sphere;
        o.dims[0] = 0.03;
        o.x = 0.05;
        o.y = 0.02;
        o.z = 0.03;
        r.scene.objects.push_back(o);
        r.scene.target_id = "t";
        scenarios.push_back(r);
    }
    persist_scenarios(scenarios, dir + "/scenarios.jsonl");

    {
        std::ofstream logs(dir + "/logs.txt");
        logs << "episode e1 alpha 50 1\n"
             << "step 0 0.05 0.02 0.04 t -\n"
             << "episode e2 alpha 50 1\n"
             << "step 0 0.05 0.02 0.04 t mug#0\n"
             << "episode e3 alpha 50 0\n"
             << "step 0 0.05 0.02 0.04 t mug#0\n"
             << "episode e4 alpha 50 0\n"
             << "step 0 0.05 0.42 0.03 - -\n";
    }

    const std::string out = dir + "/metrics_row.txt";
    REQUIRE(run_cli("evaluate --scenarios " + dir + "/scenarios.jsonl --logs " + dir +
                        "/logs.txt --out-dir " + dir + "/eval",
                    out) == 0);
    CHECK(slurp(out).find("alpha,4,2,0.500,0.250,0.500,0.250,") != std::string::npos);
    CHECK(slurp(dir + "/eval/metrics.csv").find("0.500,0.250,0.500,0.250") != std::string::npos);

    REQUIRE(run_cli("report --scenarios " + dir + "/scenarios.jsonl --logs " + dir +
                    "/logs.txt --n-bins 4 --out-dir " + dir + "/report") == 0);
    CHECK(slurp(dir + "/report/curves_dvfc.csv").find("alpha,") != std::string::npos);
    CHECK(slurp(dir + "/report/stages.csv").find("alpha,2,1,0,1") != std::string::npos);
    CHECK(slurp(dir + "/report/reach_failures.csv").find("e4") != std::string::npos);
    const Json manifest = Json::parse(slurp(dir + "/report/manifest.json"));
    CHECK(manifest.at("command") == "report");
}

TEST_CASE("catalog subcommand writes the 61-entry data file") {
    const std::string dir = cbt::test_dir("cli_catalog");
    REQUIRE(run_cli("catalog --out " + dir + "/cat.txt") == 0);
    const DistractorCatalog cat = load_catalog(dir + "/cat.txt");
    CHECK(cat.entries.size() == 61);
    CHECK(builtin_catalog().entries == cat.entries);
}
