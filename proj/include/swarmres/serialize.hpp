#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmres/optimizer.hpp"
#include "swarmres/scenario.hpp"

namespace swarmres {

// Scenario files carry the layered build inputs plus the mission plan and
// link model: n, m, x, y, z, positions, comm_edges, struct_edges,
// task_edges, phases, and optional base_rates / stress / eta / link /
// comm_range. Loaders reject malformed input naming the offending key.
nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);
void save_scenario(const Scenario& s, const std::string& path);
Scenario load_scenario(const std::string& path);

nlohmann::json mission_to_json(const MissionPlan& plan);
MissionPlan mission_from_json(const nlohmann::json& j);

// Pareto front as plot-ready JSON: edges, objectives, topsis score, decay.
nlohmann::json front_to_json(const std::vector<ParetoSolution>& front);

// Round to 12 significant digits, the precision every emitted table uses.
double round12(double v);
std::string fmt12(double v);

// Write-to-temp-then-rename; creates missing parent directories.
void atomic_write(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// FNV-1a of the canonical (key-sorted) dump; stable run identity.
std::uint64_t config_digest(const nlohmann::json& config);
std::string digest_hex(std::uint64_t digest);

void write_manifest(const std::string& dir, const std::string& command,
                    const nlohmann::json& config, std::uint64_t seed);

}  // namespace swarmres
