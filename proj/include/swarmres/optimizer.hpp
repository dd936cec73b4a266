#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "swarmres/adversary.hpp"
#include "swarmres/errors.hpp"
#include "swarmres/graph.hpp"
#include "swarmres/layered.hpp"
#include "swarmres/reliability.hpp"
#include "swarmres/rng.hpp"

namespace swarmres {

// Feasible edges a topology may use: vehicle pairs within comm range, with
// their 3D lengths.
struct CandidatePool {
    std::vector<NodeId> nodes;
    std::vector<EdgeKey> edges;  // ascending
    std::map<EdgeKey, double> lengths;

    Graph full_graph() const;  // every pool edge, lengths attached
};

CandidatePool build_candidate_pool(const LayeredNetwork& net, double comm_range);
// Pool consisting of exactly g's edges (missing lengths become 0).
CandidatePool pool_from_graph(const Graph& g);

struct ObjectiveVector {
    double f1 = 0.0;  // algebraic connectivity
    double f2 = 0.0;  // global comm success
    double f3 = 0.0;  // vulnerability (or subsequent vulnerability)
    double f4 = 0.0;  // reconfiguration cost, integer-valued
    int n = 3;
    bool feasible = false;

    // {1-f1, 1-f2, f3[, f4]}, the image NSGA-III minimizes.
    std::vector<double> minimization() const;
};

// True when a's minimization image is no worse everywhere and better
// somewhere. Both vectors must have the same length.
bool dominates(const std::vector<double>& a, const std::vector<double>& b);

// Everything an objective evaluation needs. `evaluator` overrides the whole
// computation (tests drive the search with synthetic objectives through it).
struct ObjectiveContext {
    const LayeredNetwork* net = nullptr;
    const MissionPlan* plan = nullptr;
    LinkModel link;
    int n_objectives = 3;
    std::size_t attack_phase = 1;          // j_a for the dynamic objective
    std::vector<EdgeKey> baseline_edges;   // E_0 for f4
    std::function<ObjectiveVector(const Graph&)> evaluator;

    ObjectiveVector evaluate(const Graph& g) const;
};

// f1 = lambda2, f2 = global comm success, f3 = 1 - mission success of the
// fleet rewired to g. Disconnected candidates come back infeasible.
ObjectiveVector evaluate_static(const Graph& g, const LayeredNetwork& net,
                                const MissionPlan& plan, const LinkModel& lm);

// 1 - prod_{j>=j_a} P_j * exp(-eta * participation of vehicles active in
// every remaining phase). j_a = 1 reduces to the static f3.
double subsequent_vulnerability(const LayeredNetwork& net, const MissionPlan& plan,
                                std::size_t j_a);
double subsequent_vulnerability(const Graph& g, const LayeredNetwork& net,
                                const MissionPlan& plan, std::size_t j_a);

// Symmetric-difference size |E'| + |E0| - 2|E' ∩ E0|.
std::size_t reconfiguration_cost(const std::vector<EdgeKey>& e_new,
                                 const std::vector<EdgeKey>& e_0);

struct ParetoSolution {
    std::vector<bool> genome;  // bit per pool edge
    Graph graph;
    ObjectiveVector objectives;
    double topsis_score = 0.0;
    double decay_auc = 0.0;
};

struct Nsga3Config {
    std::size_t population = 92;
    std::size_t generations = 200;
    double crossover_prob = 0.9;    // uniform crossover on edge bits
    double mutation_prob = 0.0;     // per bit; 0 means 2/|pool|
    std::size_t divisions = 0;      // Das-Dennis p; 0 means 12 (3 obj) / 6 (4 obj)
    double surbi_r = 0.3;           // EI ranking inside genome repair
    void validate() const;
};

// Das-Dennis simplex lattice points for m objectives, p divisions.
std::vector<std::vector<double>> das_dennis_points(std::size_t m, std::size_t p);

Graph decode_genome(const CandidatePool& pool, const std::vector<bool>& genome);

// Makes a genome feasible: joins components with the shortest pool edges,
// fills up to the edge-count band with the shortest unused edges, trims the
// lowest-EI non-bridge edges when above it. Band: |count - n_edges| <=
// 0.05 * n_edges.
std::vector<bool> repair_genome(const CandidatePool& pool, std::vector<bool> genome,
                                std::size_t n_edges, double surbi_r = 0.3);

// NSGA-III over edge subsets of the pool. Returns the non-dominated set of
// every feasible candidate evaluated anywhere in the run (an archive
// augments the final population, so enumerable pools yield the exact
// non-dominated set), deduplicated by edge set. seed_genomes join the
// initial population after repair.
std::vector<ParetoSolution> nsga3(const CandidatePool& pool, std::size_t n_edges,
                                  const ObjectiveContext& ctx, const Nsga3Config& cfg,
                                  RngStream& rng,
                                  const std::vector<std::vector<bool>>& seed_genomes = {});

struct TopsisResult {
    std::vector<double> scores;  // smaller is better
    std::size_t best = 0;        // argmin, first on ties
    std::vector<std::size_t> dropped_columns;
    bool degenerate = false;  // some column was dropped
};

// Classic TOPSIS on a minimization matrix: vector normalization, weighting,
// score = D+ / (D+ + D-). All-equal columns are dropped and the remaining
// weights renormalized (flagged).
TopsisResult topsis_scores(const std::vector<std::vector<double>>& matrix,
                           const std::vector<double>& weights);
TopsisResult topsis(const std::vector<ParetoSolution>& front,
                    const std::vector<double>& weights);

struct WeightChoice {
    std::vector<double> weights;
    std::size_t solution_index = 0;
    double topsis_score = 0.0;
    double decay_auc = 0.0;
};

struct SelectionResult {
    WeightChoice best;
    std::vector<WeightChoice> per_weight;
    bool topsis_degenerate = false;  // any grid entry hit a degenerate column
};

// For every weight vector: score the front, take the min-TOPSIS solution,
// subject it to a targeted NI node campaign, and measure the decay AUC of
// its Phi curve. The weight whose champion decays slowest wins. Fills
// topsis_score (under the winning weights) and decay_auc on the front.
SelectionResult select_by_attack(std::vector<ParetoSolution>& front,
                                 const std::vector<std::vector<double>>& weight_grid,
                                 const LayeredNetwork& net, const MissionPlan& plan,
                                 const AttackPlan& attack);

// Simplex lattice weight vectors with the given step, evenly subsampled to
// at most `cap` entries.
std::vector<std::vector<double>> default_weight_grid(std::size_t m, double step = 0.05,
                                                     std::size_t cap = 50);

struct ReconfigureRequest {
    std::size_t attack_phase = 1;  // j_a
    std::size_t n_edges = 0;       // 0 means the compromised net's edge count
    double comm_range = std::numeric_limits<double>::infinity();
    LinkModel link;
    Nsga3Config nsga;
    double follow_up_fraction = 0.05;  // NI attack probing each front member
    std::size_t follow_up_steps = 10;
    double surbi_r = 0.3;
};

struct ReconfigureResult {
    ParetoSolution best;
    std::vector<ParetoSolution> front;  // decay_auc filled per member
    double phi_g0 = 0.0;
    double phi_best = 0.0;   // raw natural connectivity of the winner
    double phi_ratio = 0.0;  // phi_best / phi_g0 (0 when phi_g0 is 0)
    bool fallback_best_phi = false;  // no front member reached phi_g0
};

// Post-attack reconfiguration: pool near the compromised fleet, 4-objective
// NSGA-III seeded with the repaired pre-attack topology, then a simulated
// NI-descending attack on every front member; the slowest-decaying member
// with Phi >= Phi(G0) wins (falls back, flagged, to the best-Phi member).
ReconfigureResult reconfigure(const LayeredNetwork& net0, const MissionPlan& plan,
                              const ReconfigureRequest& req, RngStream& rng);

}  // namespace swarmres
