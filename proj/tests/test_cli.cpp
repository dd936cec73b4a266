#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "builders.hpp"
#include "cli.hpp"
#include "swarmres/serialize.hpp"

using namespace swarmres;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("swarmres-cli-" + std::to_string(::rand()) + "-" +
                std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

int run(std::vector<std::string> args) { return cli::run_cli(std::move(args)); }

json read_json(const std::string& path) { return json::parse(read_file(path)); }

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("exit codes for bad invocations") {
    CHECK(run({}) == 2);                      // a subcommand is required
    CHECK(run({"frobnicate"}) == 2);          // unknown subcommand
    CHECK(run({"--help"}) == 0);              // help is a successful outcome
    CHECK(run({"generate"}) == 2);            // --dataset is required
    TempDir tmp;
    CHECK(run({"generate", "--dataset", "klein-bottle", "--out", tmp.sub("o")}) == 2);
    CHECK(run({"rank", "--scenario", tmp.sub("missing.json"), "--out", tmp.sub("o")}) == 2);
    CHECK(run({"rank", "--out", tmp.sub("o")}) == 2);  // neither --scenario nor --graph
    CHECK(run({"attack", "--graph", tmp.sub("nope.edges"), "--target", "sideways",
               "--out", tmp.sub("o")}) == 2);
}

TEST_CASE("generate pln and walk it through rank and attack") {
    TempDir tmp;
    const std::string gen = tmp.sub("gen");
    CHECK(run({"generate", "--dataset", "pln", "--nodes", "40", "--attachment", "2",
               "--seed", "11", "--out", gen}) == 0);
    CHECK(fs::exists(gen + "/graph.edges"));
    json manifest = read_json(gen + "/manifest.json");
    CHECK(manifest["command"] == "generate");
    CHECK(manifest["seed"] == 11);
    CHECK(manifest["config"]["dataset"] == "pln");

    // byte-identical regeneration under the same seed
    const std::string gen2 = tmp.sub("gen2");
    CHECK(run({"generate", "--dataset", "pln", "--nodes", "40", "--attachment", "2",
               "--seed", "11", "--out", gen2}) == 0);
    CHECK(read_file(gen + "/graph.edges") == read_file(gen2 + "/graph.edges"));

    const std::string rank = tmp.sub("rank");
    CHECK(run({"rank", "--graph", gen + "/graph.edges", "--out", rank}) == 0);
    auto nodes = builders::split_lines(read_file(rank + "/nodes.csv"));
    CHECK(nodes[0] == "node_id,bi_raw,si_raw,ni,rank");
    CHECK(nodes.size() == 41);
    json summary = read_json(rank + "/summary.json");
    CHECK(summary["nodes"] == 40);
    CHECK(summary["top"].size() == 10);

    const std::string atk = tmp.sub("attack");
    CHECK(run({"attack", "--graph", gen + "/graph.edges", "--method", "surbi",
               "--fraction", "0.05", "--steps", "4", "--baselines", "--out", atk}) == 0);
    auto decay = builders::split_lines(read_file(atk + "/decay.csv"));
    CHECK(decay[0] == "step,removed_ids,phi,lambda2");
    CHECK(decay.size() == 6);  // header + intact + 4 steps
    CHECK(fs::exists(atk + "/decay_kshell.csv"));
    CHECK(fs::exists(atk + "/decay_katz.csv"));
    CHECK(fs::exists(atk + "/decay_random.csv"));
    json asum = read_json(atk + "/summary.json");
    CHECK(asum["auc"].get<double>() > 0.0);
    CHECK(asum["auc"].get<double>() <= 1.0);
    CHECK(asum["baseline_auc"].contains("kshell"));
    CHECK(asum["survivors"] == 32);

    const std::string atk2 = tmp.sub("attack2");
    CHECK(run({"attack", "--graph", gen + "/graph.edges", "--method", "random",
               "--fraction", "0.05", "--steps", "4", "--seed", "5", "--out", atk2}) == 0);
    const std::string atk3 = tmp.sub("attack3");
    CHECK(run({"attack", "--graph", gen + "/graph.edges", "--method", "random",
               "--fraction", "0.05", "--steps", "4", "--seed", "5", "--out", atk3}) == 0);
    CHECK(read_file(atk2 + "/decay.csv") == read_file(atk3 + "/decay.csv"));
}

TEST_CASE("calibrate-r on a constructed benchmark") {
    TempDir tmp;
    Graph g = builders::star_of_cliques(6, 2, 2, 4);
    atomic_write(tmp.sub("g.edges"), g.to_edge_list());

    const std::string out = tmp.sub("cal");
    CHECK(run({"calibrate-r", "--graph", tmp.sub("g.edges"), "--r-grid", "0.2", "0.8",
               "--group-size", "4", "--groups", "2", "--infection", "0.5", "--recovery",
               "0", "--reps", "3", "--seed", "3", "--out", out}) == 0);
    auto lines = builders::split_lines(read_file(out + "/calibration.csv"));
    CHECK(lines[0] == "r,group,mean_time_to_peak,monotone_ok");
    CHECK(lines.size() == 5);
    json summary = read_json(out + "/summary.json");
    double r_star = summary["r_star"].get<double>();
    CHECK((r_star == 0.2 || r_star == 0.8));

    // group demand beyond the node count is a config error
    CHECK(run({"calibrate-r", "--graph", tmp.sub("g.edges"), "--group-size", "40",
               "--groups", "2", "--out", tmp.sub("cal2")}) == 2);
}

TEST_CASE("multiphase artifacts feed phase-impact") {
    TempDir tmp;
    const std::string gen = tmp.sub("gen");
    CHECK(run({"generate", "--dataset", "multiphase", "--nodes", "24", "--attachment",
               "2", "--phases", "3", "--seed", "21", "--out", gen}) == 0);
    CHECK(fs::exists(gen + "/base.edges"));
    CHECK(fs::exists(gen + "/mission.json"));
    for (int j = 1; j <= 3; ++j)
        CHECK(fs::exists(gen + "/phase_" + std::to_string(j) + ".edges"));
    json mission = read_json(gen + "/mission.json");
    CHECK(mission["phases"].size() == 3);

    const std::string out = tmp.sub("impact");
    CHECK(run({"phase-impact", "--mission", gen + "/mission.json", "--phases-dir", gen,
               "--fraction", "0.2", "--out", out}) == 0);
    auto lines = builders::split_lines(read_file(out + "/impact.csv"));
    CHECK(lines[0] == "attack,phase,phi_before,phi_after,reduction");
    CHECK(lines.size() == 1 + 3 * 3 + 3);
    json summary = read_json(out + "/summary.json");
    CHECK(summary["victims"].size() == 3);
    CHECK(summary["reduction"].size() == 3);
    CHECK(summary["reduction_global"].size() == 3);

    // either a scenario or the mission/phases pair, not neither
    CHECK(run({"phase-impact", "--mission", gen + "/mission.json", "--out",
               tmp.sub("x")}) == 2);
}

TEST_CASE("contested3d drives rank, evaluate, optimize and reconfigure") {
    TempDir tmp;
    const std::string gen = tmp.sub("gen");
    CHECK(run({"generate", "--dataset", "contested3d", "--uavs", "5", "--usvs", "4",
               "--bound", "400", "--comm-range", "1200", "--phases", "2", "--payload-x",
               "1", "--payload-y", "1", "--seed", "31", "--out", gen}) == 0);
    const std::string scenario = gen + "/scenario.json";
    REQUIRE(fs::exists(scenario));

    const std::string rank = tmp.sub("rank");
    CHECK(run({"rank", "--scenario", scenario, "--out", rank}) == 0);
    CHECK(builders::split_lines(read_file(rank + "/nodes.csv")).size() == 10);

    Scenario sc = load_scenario(scenario);
    atomic_write(tmp.sub("topo.edges"), sc.net.structure().to_edge_list());

    const std::string ev = tmp.sub("eval");
    CHECK(run({"evaluate", "--scenario", scenario, "--topology", tmp.sub("topo.edges"),
               "--out", ev}) == 0);
    json evaluation = read_json(ev + "/evaluation.json");
    CHECK(evaluation["feasible"] == true);
    CHECK(evaluation["f1"].get<double>() > 0.0);
    CHECK(!evaluation.contains("f4"));

    const std::string evd = tmp.sub("eval-dyn");
    CHECK(run({"evaluate", "--scenario", scenario, "--topology", tmp.sub("topo.edges"),
               "--dynamic", "--attack-phase", "2", "--out", evd}) == 0);
    json dynamic = read_json(evd + "/evaluation.json");
    CHECK(dynamic["f4"].get<double>() == 0.0);  // the baseline is this topology
    CHECK(dynamic["attack_phase"] == 2);

    atomic_write(tmp.sub("alien.edges"), std::string("0 99\n"));
    CHECK(run({"evaluate", "--scenario", scenario, "--topology", tmp.sub("alien.edges"),
               "--out", tmp.sub("x")}) == 2);

    atomic_write(tmp.sub("weights.json"),
                 std::string("[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.2, 0.4, 0.4]]\n"));
    const std::string opt = tmp.sub("opt");
    CHECK(run({"optimize-static", "--scenario", scenario, "--pop", "12", "--gens", "2",
               "--divisions", "3", "--weights-grid", tmp.sub("weights.json"),
               "--attack-fraction", "0.15", "--attack-steps", "2", "--seed", "41",
               "--out", opt}) == 0);
    json front = read_json(opt + "/front.json");
    CHECK(front.is_array());
    CHECK(front.size() >= 1);
    json selection = read_json(opt + "/selection.json");
    CHECK(selection["per_weight"].size() == 3);
    CHECK(fs::exists(opt + "/best.edges"));
    Graph best = Graph::from_edge_list(read_file(opt + "/best.edges"));
    CHECK(best.connected());

    const std::string opt2 = tmp.sub("opt2");
    CHECK(run({"optimize-static", "--scenario", scenario, "--pop", "12", "--gens", "2",
               "--divisions", "3", "--weights-grid", tmp.sub("weights.json"),
               "--attack-fraction", "0.15", "--attack-steps", "2", "--seed", "41",
               "--out", opt2}) == 0);
    CHECK(read_file(opt + "/front.json") == read_file(opt2 + "/front.json"));
    CHECK(read_file(opt + "/best.edges") == read_file(opt2 + "/best.edges"));

    atomic_write(tmp.sub("badweights.json"), std::string("[[1.0, 0.0]]\n"));
    CHECK(run({"optimize-static", "--scenario", scenario, "--pop", "12", "--gens", "1",
               "--divisions", "3", "--weights-grid", tmp.sub("badweights.json"),
               "--out", tmp.sub("x2")}) == 2);

    const std::string rec = tmp.sub("rec");
    CHECK(run({"reconfigure", "--scenario", scenario, "--node-fraction", "0.15",
               "--edge-fraction", "0.1", "--attack-phase", "2", "--pop", "12", "--gens",
               "2", "--divisions", "2", "--follow-fraction", "0.15", "--follow-steps",
               "2", "--seed", "51", "--out", rec}) == 0);
    CHECK(fs::exists(rec + "/attack_nodes.csv"));
    CHECK(fs::exists(rec + "/attack_edges.csv"));
    CHECK(fs::exists(rec + "/compromised.edges"));
    json result = read_json(rec + "/result.json");
    CHECK(result["phi_g0"].get<double>() >= 0.0);
    CHECK(result["phi_best"].get<double>() >= 0.0);
    CHECK(result.contains("fallback_best_phi"));
    Graph rbest = Graph::from_edge_list(read_file(rec + "/best.edges"));
    CHECK(rbest.connected());
    Graph compromised = Graph::from_edge_list(read_file(rec + "/compromised.edges"));
    CHECK(rbest.node_count() == compromised.node_count());
    if (result["fallback_best_phi"] == false)
        CHECK(result["phi_best"].get<double>() >= result["phi_g0"].get<double>() - 1e-9);
}

TEST_CASE("infeasible fleets exit with the dedicated code") {
    TempDir tmp;
    CHECK(run({"generate", "--dataset", "contested3d", "--uavs", "4", "--usvs", "4",
               "--bound", "3000", "--comm-range", "10", "--seed", "61", "--out",
               tmp.sub("gen")}) == 3);
}

TEST_SUITE_END();
