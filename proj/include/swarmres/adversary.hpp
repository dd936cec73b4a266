#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "swarmres/graph.hpp"
#include "swarmres/layered.hpp"
#include "swarmres/rng.hpp"

namespace swarmres {

enum class AttackMode { Targeted, Random };
enum class AttackTarget { Nodes, Edges };
enum class ScoreSource { NI, EI, KShell, Katz };

struct AttackPlan {
    AttackMode mode = AttackMode::Targeted;
    AttackTarget target = AttackTarget::Nodes;
    double fraction_per_step = 0.02;
    std::size_t steps = 10;
    ScoreSource score_source = ScoreSource::NI;
    std::uint64_t seed = 0;
    std::size_t attack_phase = 1;  // j_a, used by the dynamic objectives
    bool rerank = false;           // recompute scores after every step
    double surbi_r = 0.3;          // r when scores are derived internally
    void validate() const;         // fraction_per_step * steps <= 1, etc.
};

struct ScoreTable {
    std::map<NodeId, double> nodes;
    std::map<EdgeKey, double> edges;
};

// Scores for targeting, computed on the surviving structure layer (edge
// scores on the comm layer's edges via endpoint combination).
ScoreTable compute_scores(const LayeredNetwork& net, ScoreSource source, double surbi_r);

struct AttackStep {
    std::vector<NodeId> removed_nodes;
    std::vector<EdgeKey> removed_edges;
    double phi = 0.0;      // natural connectivity of the surviving structure layer
    double lambda2 = 0.0;  // 0 when disconnected or below 2 nodes
};

struct AttackTrace {
    std::vector<AttackStep> steps;  // steps[0] describes the intact network
    LayeredNetwork compromised;

    std::vector<double> phi_curve() const;
    // CSV "step,removed_ids,phi,lambda2"; ids are ';'-joined, edges as u-v.
    std::string to_csv() const;
};

// Removes comm-layer edges; any comm node whose last comm edge vanished
// cascades into a full vehicle failure (structure twin and payloads die).
LayeredNetwork attack_edges(const LayeredNetwork& net, const std::vector<EdgeKey>& edges);

// Removes one vehicle from all three layers (its comm twin, its payloads).
LayeredNetwork attack_node(const LayeredNetwork& net, NodeId vehicle);

// Multi-step campaign. Targeted mode ranks by the given scores once and
// walks that static order unless plan.rerank is set; random mode draws
// uniformly from survivors with the plan's seed. The per-step quota is
// ceil(fraction * initial count), capped by what is left.
AttackTrace run_campaign(const LayeredNetwork& net, const AttackPlan& plan,
                         const ScoreTable& scores);
// Convenience: derives the score table from plan.score_source.
AttackTrace run_campaign(const LayeredNetwork& net, const AttackPlan& plan);

// Trapezoidal area under phi(step)/phi(0) against removal fraction,
// rescaled by the total attacked fraction to land in [0,1]; 0 when the
// intact graph already has phi = 0.
double decay_auc(const std::vector<double>& phi_curve, double fraction_per_step);

struct SirConfig {
    double infection_prob = 0.1;   // per infected contact per tick
    double recovery_prob = 0.05;   // per infected node per tick
    std::size_t max_ticks = 1000;
    std::size_t repetitions = 30;  // Monte-Carlo averaging in calibrate_r
    std::vector<std::vector<NodeId>> groups;  // optional preset seed sets
    void validate() const;
};

struct SirRun {
    std::size_t peak_tick = 0;
    std::size_t peak_infected = 0;
    std::vector<std::size_t> infected_per_tick;
};

// Discrete synchronous SIR from the seed set; returns the first tick at
// which the infected count peaks.
SirRun sir_simulate(const Graph& g, const SirConfig& cfg, std::span<const NodeId> seed_set,
                    RngStream& rng);

struct CalibrationRow {
    double r = 0.0;
    std::size_t group = 0;  // 1-based
    double mean_time_to_peak = 0.0;
    bool monotone_ok = false;  // property of this row's r
};

struct CalibrationResult {
    double r_star = 0.0;
    bool flagged = false;  // no r had monotone group times
    std::vector<CalibrationRow> rows;
    std::string to_csv() const;  // "r,group,mean_time_to_peak,monotone_ok"
};

// Fig.-6-style selection: rank by surbi_rank per r, split the top
// group_size * n_groups nodes into consecutive groups, seed SIR runs per
// group, and pick the r whose group mean times rise monotonically with the
// smallest Group-1 time. Falls back (flagged) to the fewest-violations r.
CalibrationResult calibrate_r(const Graph& g, const std::vector<double>& r_grid,
                              std::size_t group_size, std::size_t n_groups,
                              const SirConfig& cfg, RngStream& rng);

}  // namespace swarmres
