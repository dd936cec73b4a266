#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "builders.hpp"
#include "swarmres/scenario.hpp"
#include "swarmres/serialize.hpp"

using namespace swarmres;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("swarmres-serialize-" + std::to_string(::rand()) + "-" +
                std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

bool throws_mentioning(const std::function<void()>& fn, const std::string& needle) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

Scenario small_scenario(std::uint64_t seed) {
    Contested3dConfig cfg;
    cfg.n_uav = 5;
    cfg.n_usv = 4;
    cfg.bound = 600.0;
    cfg.uav_z_max = 300.0;
    cfg.comm_range = 1500.0;
    cfg.x = 1;
    cfg.y = 2;
    cfg.phases = 2;
    RngStream rng(seed);
    return gen_contested3d(cfg, rng);
}

}  // namespace

TEST_SUITE_BEGIN("serialize");

TEST_CASE("scenario json round trip") {
    Scenario sc = small_scenario(5100);
    json j = scenario_to_json(sc);
    Scenario back = scenario_from_json(j);

    CHECK(back.net.uav_count() == sc.net.uav_count());
    CHECK(back.net.usv_count() == sc.net.usv_count());
    CHECK(back.net.comm().edges() == sc.net.comm().edges());
    CHECK(back.net.structure().edges() == sc.net.structure().edges());
    CHECK(back.net.task().node_count() == sc.net.task().node_count());
    for (NodeId v = 0; v < 9; ++v) {
        CHECK(back.net.position(v).x == sc.net.position(v).x);
        CHECK(back.net.position(v).z == sc.net.position(v).z);
    }
    REQUIRE(back.plan.phases.size() == sc.plan.phases.size());
    for (std::size_t p = 0; p < sc.plan.phases.size(); ++p) {
        CHECK(back.plan.phases[p].nodes == sc.plan.phases[p].nodes);
        CHECK(back.plan.phases[p].duration_s == sc.plan.phases[p].duration_s);
        CHECK(back.plan.phases[p].beta == sc.plan.phases[p].beta);
    }
    CHECK(back.plan.base_rates == sc.plan.base_rates);
    CHECK(back.plan.eta == sc.plan.eta);
    CHECK(back.link.d0 == sc.link.d0);
    CHECK(back.comm_range == sc.comm_range);

    // a second dump is byte-identical (key order is canonical)
    CHECK(scenario_to_json(back).dump() == j.dump());
}

TEST_CASE("scenario file round trip") {
    TempDir tmp;
    Scenario sc = small_scenario(5101);
    const std::string path = (tmp.path / "nested" / "dirs" / "scenario.json").string();
    save_scenario(sc, path);
    Scenario back = load_scenario(path);
    CHECK(back.net.comm().edges() == sc.net.comm().edges());
    CHECK(back.comm_range == sc.comm_range);

    CHECK_THROWS_AS((void)load_scenario((tmp.path / "missing.json").string()),
                    std::invalid_argument);
    const std::string garbled = (tmp.path / "garbled.json").string();
    atomic_write(garbled, "{not json");
    CHECK_THROWS_AS((void)load_scenario(garbled), std::invalid_argument);
}

TEST_CASE("loader errors name the offending key") {
    json good = scenario_to_json(small_scenario(5102));

    json j = good;
    j.erase("n");
    CHECK(throws_mentioning([&] { (void)scenario_from_json(j); }, "scenario.n"));

    j = good;
    j["positions"] = "nope";
    CHECK(throws_mentioning([&] { (void)scenario_from_json(j); }, "scenario.positions"));

    j = good;
    j["positions"].erase(0);
    CHECK(throws_mentioning([&] { (void)scenario_from_json(j); }, "scenario.positions"));

    j = good;
    j["comm_edges"][0] = json::array({1});
    CHECK(throws_mentioning([&] { (void)scenario_from_json(j); }, "scenario.comm_edges[0]"));

    j = good;
    j["phases"] = json::array();
    CHECK(throws_mentioning([&] { (void)scenario_from_json(j); }, "scenario.phases"));

    j = good;
    j["phases"][0].erase("duration_s");
    CHECK(throws_mentioning([&] { (void)scenario_from_json(j); },
                            "scenario.phases[0].duration_s"));

    j = good;
    j["base_rates"][0] = json::array({1});
    CHECK(throws_mentioning([&] { (void)scenario_from_json(j); }, "scenario.base_rates"));
}

TEST_CASE("mission json round trip") {
    RngStream rng(5103);
    LayeredNetwork net = builders::random_layered(4, 3, 1, 1, rng);
    MissionPlan plan = builders::random_mission(net, 3, rng);
    plan.stress[{0, 1, 2}] = 1.5;
    plan.stress[{2, 2, 3}] = 2.0;

    MissionPlan back = mission_from_json(mission_to_json(plan));
    REQUIRE(back.phases.size() == plan.phases.size());
    for (std::size_t p = 0; p < plan.phases.size(); ++p) {
        CHECK(back.phases[p].nodes == plan.phases[p].nodes);
        CHECK(back.phases[p].duration_s == plan.phases[p].duration_s);
        CHECK(back.phases[p].beta == plan.phases[p].beta);
    }
    CHECK(back.base_rates == plan.base_rates);
    CHECK(back.stress == plan.stress);
    CHECK(back.eta == plan.eta);
}

TEST_CASE("pareto front serialization") {
    ParetoSolution a;
    a.graph = builders::path_graph(3);
    a.objectives.f1 = 0.5;
    a.objectives.f2 = 0.25;
    a.objectives.f3 = 1.0 / 3.0;
    a.topsis_score = 0.125;
    a.decay_auc = 0.75;
    ParetoSolution b;
    b.graph = builders::cycle_graph(3);
    b.objectives.n = 4;
    b.objectives.f4 = 6.0;

    json front = front_to_json({a, b});
    REQUIRE(front.is_array());
    REQUIRE(front.size() == 2);
    CHECK(front[0]["edges"].size() == 2);
    CHECK(front[0]["f1"].get<double>() == 0.5);
    CHECK(front[0]["f3"].get<double>() == round12(1.0 / 3.0));
    CHECK(!front[0].contains("f4"));
    CHECK(front[1].contains("f4"));
    CHECK(front[1]["f4"].get<double>() == 6.0);
    CHECK(front[0]["topsis_score"].get<double>() == 0.125);
    CHECK(front[0]["decay_auc"].get<double>() == 0.75);
}

TEST_CASE("twelve digit rounding") {
    CHECK(fmt12(0.1) == "0.1");
    CHECK(fmt12(1.0) == "1");
    CHECK(fmt12(-2.5e-7) == "-2.5e-07");
    CHECK(round12(1.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
    CHECK(round12(1.0 / 3.0) != 1.0 / 3.0);  // the tail is really truncated

    RngStream rng(5104);
    for (int i = 0; i < 200; ++i) {
        double v = (rng.uniform01() - 0.5) * std::pow(10.0, double(rng.below(12)) - 6.0);
        double once = round12(v);
        CHECK(round12(once) == once);  // idempotent
        CHECK(fmt12(once) == fmt12(v));
    }
}

TEST_CASE("atomic writes land whole or not at all") {
    TempDir tmp;
    const std::string path = (tmp.path / "a" / "b" / "out.csv").string();
    atomic_write(path, "hello\n");
    CHECK(read_file(path) == "hello\n");
    atomic_write(path, "replaced\n");
    CHECK(read_file(path) == "replaced\n");
    CHECK(!fs::exists(path + ".tmp"));

    CHECK_THROWS_AS((void)read_file((tmp.path / "absent").string()), std::invalid_argument);
}

TEST_CASE("config digests identify runs") {
    json a;
    a["alpha"] = 1;
    a["beta"] = json::array({1, 2, 3});
    json b;
    b["beta"] = json::array({1, 2, 3});
    b["alpha"] = 1;
    CHECK(config_digest(a) == config_digest(b));  // insertion order is irrelevant

    json c = a;
    c["alpha"] = 2;
    CHECK(config_digest(a) != config_digest(c));

    CHECK(digest_hex(config_digest(a)).size() == 16);
    CHECK(digest_hex(0x1234abcdULL) == "000000001234abcd");
}

TEST_CASE("run manifests") {
    TempDir tmp;
    json config;
    config["fleet"] = 12;
    config["range"] = 400.0;
    write_manifest(tmp.path.string(), "generate", config, 77);
    json manifest = json::parse(read_file((tmp.path / "manifest.json").string()));
    CHECK(manifest["command"] == "generate");
    CHECK(manifest["seed"] == 77);
    CHECK(manifest["config"]["fleet"] == 12);
    CHECK(manifest["config_digest"] == digest_hex(config_digest(config)));
    CHECK(manifest.contains("versions"));
    CHECK(manifest["versions"].contains("swarmres"));
}

TEST_SUITE_END();
