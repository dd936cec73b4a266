#include "swarmres/serialize.hpp"

#include <Eigen/Core>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace swarmres {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& where, const std::string& what) {
    throw std::invalid_argument("scenario." + where + ": " + what);
}

std::size_t require_count(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        reject(key, "expected a non-negative integer");
    return j[key].get<std::size_t>();
}

std::vector<EdgeKey> parse_edges(const json& j, const char* key) {
    std::vector<EdgeKey> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) reject(key, "expected an array of [u, v] pairs");
    std::size_t i = 0;
    for (const json& e : j[key]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
            !e[1].is_number_unsigned())
            reject(std::string(key) + "[" + std::to_string(i) + "]",
                   "expected a [u, v] pair of node ids");
        out.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
        ++i;
    }
    return out;
}

json edges_to_json(const std::vector<EdgeKey>& edges) {
    json out = json::array();
    for (const EdgeKey& e : edges) out.push_back(json::array({e.a, e.b}));
    return out;
}

}  // namespace

nlohmann::json mission_to_json(const MissionPlan& plan) {
    json j;
    j["phases"] = json::array();
    for (const Phase& ph : plan.phases) {
        json p;
        p["nodes"] = ph.nodes;
        p["duration_s"] = ph.duration_s;
        p["beta"] = ph.beta;
        p["m_required"] = ph.m_required;
        p["n_required"] = ph.n_required;
        j["phases"].push_back(std::move(p));
    }
    j["base_rates"] = json::array();
    for (const auto& [id, delta] : plan.base_rates)
        j["base_rates"].push_back(json::array({id, delta}));
    j["stress"] = json::array();
    for (const auto& [key, xi] : plan.stress) {
        const auto& [i, p, jj] = key;
        j["stress"].push_back(json::array({i, p, jj, xi}));
    }
    j["eta"] = plan.eta;
    return j;
}

MissionPlan mission_from_json(const nlohmann::json& j) {
    MissionPlan plan;
    if (!j.contains("phases") || !j["phases"].is_array() || j["phases"].empty())
        reject("phases", "expected a non-empty array");
    std::size_t pi = 0;
    for (const json& p : j["phases"]) {
        Phase ph;
        const std::string where = "phases[" + std::to_string(pi) + "]";
        if (!p.contains("nodes") || !p["nodes"].is_array())
            reject(where + ".nodes", "expected an array of node ids");
        for (const json& v : p["nodes"]) {
            if (!v.is_number_unsigned()) reject(where + ".nodes", "expected node ids");
            ph.nodes.push_back(v.get<NodeId>());
        }
        if (!p.contains("duration_s") || !p["duration_s"].is_number())
            reject(where + ".duration_s", "expected a number");
        ph.duration_s = p["duration_s"].get<double>();
        if (p.contains("beta")) ph.beta = p["beta"].get<double>();
        if (p.contains("m_required")) ph.m_required = p["m_required"].get<std::size_t>();
        if (p.contains("n_required")) ph.n_required = p["n_required"].get<std::size_t>();
        plan.phases.push_back(std::move(ph));
        ++pi;
    }
    if (j.contains("base_rates")) {
        if (!j["base_rates"].is_array())
            reject("base_rates", "expected an array of [node, delta] pairs");
        for (const json& e : j["base_rates"]) {
            if (!e.is_array() || e.size() != 2)
                reject("base_rates", "expected [node, delta] pairs");
            plan.base_rates[e[0].get<NodeId>()] = e[1].get<double>();
        }
    }
    if (j.contains("stress")) {
        if (!j["stress"].is_array())
            reject("stress", "expected an array of [node, p, j, xi] entries");
        for (const json& e : j["stress"]) {
            if (!e.is_array() || e.size() != 4)
                reject("stress", "expected [node, p, j, xi] entries");
            plan.stress[{e[0].get<NodeId>(), e[1].get<std::size_t>(),
                         e[2].get<std::size_t>()}] = e[3].get<double>();
        }
    }
    if (j.contains("eta")) plan.eta = j["eta"].get<double>();
    return plan;
}

nlohmann::json scenario_to_json(const Scenario& s) {
    json j;
    const std::size_t n = s.net.uav_count();
    const std::size_t m = s.net.usv_count();
    j["n"] = n;
    j["m"] = m;
    j["x"] = s.net.x();
    j["y"] = s.net.y();
    j["z"] = s.net.z_types();
    j["positions"] = json::array();
    for (std::size_t v = 0; v < n + m; ++v) {
        const Vec3& p = s.net.position(static_cast<NodeId>(v));
        j["positions"].push_back(json::array({p.x, p.y, p.z}));
    }
    j["comm_edges"] = edges_to_json(s.net.comm().edges());
    j["struct_edges"] = edges_to_json(s.net.structure().edges());
    j["task_edges"] = edges_to_json(s.net.task().edges());
    const json mission = mission_to_json(s.plan);
    j["phases"] = mission["phases"];
    j["base_rates"] = mission["base_rates"];
    j["stress"] = mission["stress"];
    j["eta"] = mission["eta"];
    j["link"] = json{{"d0", s.link.d0}, {"n_exp", s.link.n_exp}};
    j["comm_range"] = s.comm_range;
    return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    const std::size_t n = require_count(j, "n");
    const std::size_t m = require_count(j, "m");
    const std::size_t x = require_count(j, "x");
    const std::size_t y = require_count(j, "y");
    const std::size_t z = j.contains("z") ? require_count(j, "z") : 1;
    if (!j.contains("positions") || !j["positions"].is_array())
        reject("positions", "expected an array of [x, y, z] triples");
    if (j["positions"].size() != n + m)
        reject("positions", "expected " + std::to_string(n + m) + " entries, got " +
                                std::to_string(j["positions"].size()));
    std::vector<Vec3> positions;
    std::size_t pi = 0;
    for (const json& p : j["positions"]) {
        if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
            !p[2].is_number())
            reject("positions[" + std::to_string(pi) + "]", "expected an [x, y, z] triple");
        positions.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        ++pi;
    }
    Scenario out;
    out.net = LayeredNetwork::build(n, m, x, y, positions, parse_edges(j, "comm_edges"),
                                    parse_edges(j, "struct_edges"),
                                    parse_edges(j, "task_edges"), z);
    if (j.contains("phases")) out.plan = mission_from_json(j);
    if (j.contains("link")) {
        if (!j["link"].is_object()) reject("link", "expected an object");
        if (j["link"].contains("d0")) out.link.d0 = j["link"]["d0"].get<double>();
        if (j["link"].contains("n_exp")) out.link.n_exp = j["link"]["n_exp"].get<double>();
        out.link.validate();
    }
    if (j.contains("comm_range")) out.comm_range = j["comm_range"].get<double>();
    return out;
}

void save_scenario(const Scenario& s, const std::string& path) {
    atomic_write(path, scenario_to_json(s).dump(2) + "\n");
}

Scenario load_scenario(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("scenario file " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

nlohmann::json front_to_json(const std::vector<ParetoSolution>& front) {
    json out = json::array();
    for (const ParetoSolution& sol : front) {
        json s;
        s["edges"] = edges_to_json(sol.graph.edges());
        s["f1"] = round12(sol.objectives.f1);
        s["f2"] = round12(sol.objectives.f2);
        s["f3"] = round12(sol.objectives.f3);
        if (sol.objectives.n == 4) s["f4"] = sol.objectives.f4;
        s["topsis_score"] = round12(sol.topsis_score);
        s["decay_auc"] = round12(sol.decay_auc);
        out.push_back(std::move(s));
    }
    return out;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("atomic_write: write failed for " + path);
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::uint64_t config_digest(const nlohmann::json& config) { return fnv1a64(config.dump()); }

std::string digest_hex(std::uint64_t digest) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

void write_manifest(const std::string& dir, const std::string& command,
                    const nlohmann::json& config, std::uint64_t seed) {
    json manifest;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["config_digest"] = digest_hex(config_digest(config));
    manifest["seed"] = seed;
    manifest["versions"] = {
        {"swarmres", "0.1.0"},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                      std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
    };
    atomic_write((std::filesystem::path(dir) / "manifest.json").string(),
                 manifest.dump(2) + "\n");
}

}  // namespace swarmres
