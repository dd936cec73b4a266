#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "swarmres/graph.hpp"
#include "swarmres/layered.hpp"

namespace swarmres {

// Exponential distance-dependent link failure. d0 is the characteristic
// distance; n_exp the path-loss exponent (2 free space, 4-6 cluttered).
struct LinkModel {
    double d0 = 500.0;
    double n_exp = 2.0;
    void validate() const;
};

// P_fail(d) = 1 - exp(-(d/d0)^n_exp), strictly increasing in d.
double link_failure_prob(double d, const LinkModel& lm);
// Edge weight W(d) = 1 - P_fail(d).
double link_weight(double d, const LinkModel& lm);

// Highest-reliability path value: max over paths of the product of edge
// weights, found as a shortest path under the additive -ln W transform
// (exact because every W is in (0,1]). 1 when i == j, 0 when disconnected.
// Every edge on the way needs a stored length.
double comm_success(const Graph& g, const LinkModel& lm, NodeId i, NodeId j);

// Mean of comm_success over all unordered pairs; needs at least 2 nodes.
double global_comm_success(const Graph& g, const LinkModel& lm);

// Percolation threshold of a phase graph from its degree moments:
// P_T = 1/(k0 - 1), k0 = <k^2>/<k>. When k0 <= 1 (or the graph has no
// edges) the formula has no finite answer and the graph is below the
// percolation threshold regardless; that case returns p_t = 0 with fragile
// set.
struct Percolation {
    double p_t = 0.0;
    bool fragile = false;
};
Percolation er_percolation(const Graph& g);

// Closed-form k0 for a power-law degree distribution P(k) = c k^-gamma over
// [k_min, k_max]. gamma in {2, 3} is a genuine singularity of the formula;
// callers get an error telling them to use empirical moments instead.
struct PercolationSpec {
    double gamma = 2.5;
    double k_min = 1.0;
    double k_max = 100.0;
    double norm_const = 1.0;  // c of P(k); carried, not needed by the closed form
    void validate() const;
};
double scale_free_k0(const PercolationSpec& spec);

struct Phase {
    std::vector<NodeId> nodes;  // active vehicles V_j
    double duration_s = 0.0;
    double beta = 1.0;
    std::size_t m_required = 0;  // UAVs
    std::size_t n_required = 0;  // USVs
};

// Accelerated-failure-time mission description. Stress factors are indexed
// (payload i, stressed phase p, evaluation phase j), all phases 1-based;
// missing entries default to 1.0 and missing base rates to 0.0.
struct MissionPlan {
    std::vector<Phase> phases;
    std::map<std::tuple<NodeId, std::size_t, std::size_t>, double> stress;
    std::map<NodeId, double> base_rates;  // delta_i per second
    double eta = 0.0;

    double stress_factor(NodeId i, std::size_t p, std::size_t j) const;
    double base_rate(NodeId i) const;

    // Intersection of active sets of phases j_a..last (1-based), in
    // ascending id order.
    std::vector<NodeId> bridge_nodes(std::size_t j_a = 1) const;
    // Number of phases >= j_a in which u participates.
    std::size_t participation(NodeId u, std::size_t j_a = 1) const;

    // Plan-level invariants: phase coverage sum >= universe size, pairwise
    // nonempty intersections, positive durations, non-negative weights,
    // stress >= 1, eta >= 0.
    void validate(std::size_t universe_size) const;
};

// R_i evaluated through phase j (1-based): exp(-delta_i * sum_{p<=j}
// xi_ip^j * T_p).
double payload_reliability(const MissionPlan& plan, NodeId i, std::size_t j);

// P_j = [1 - minmax(P_Tj)] * prod_{i in V_j} R_i. The min-max normalization
// runs over the non-fragile phases of this plan; a single phase or all-equal
// thresholds give structural factor 1. A percolation sentinel makes the
// phase a flagged zero. Active sets are intersected with surviving vehicles.
struct PhaseFragility {
    double value = 0.0;
    bool fragile = false;
    double p_t = 0.0;            // raw percolation threshold of the phase graph
    double structural = 0.0;     // 1 - minmax(P_T)
    double reliability_product = 1.0;
};
PhaseFragility phase_fragility(const LayeredNetwork& net, const MissionPlan& plan,
                               std::size_t j);

// C_global = -exp(-sum_j beta_j * lambda2(G_j) * I_conn(G_j)); phase graphs
// with fewer than 2 nodes or disconnected contribute 0.
double global_connectivity_score(const LayeredNetwork& net, const MissionPlan& plan);

// P_task = prod_j P_j * exp(-eta * sum_{u in bridge set} deg(u)) where
// deg(u) counts phase participation (the graph degree is also reported).
struct MissionBreakdown {
    double p_task = 0.0;
    std::vector<PhaseFragility> phases;
    double bridge_penalty = 1.0;
    std::size_t bridge_participation_sum = 0;
    std::size_t bridge_graph_degree_sum = 0;
    std::string penalty_basis = "participation";
};
MissionBreakdown mission_breakdown(const LayeredNetwork& net, const MissionPlan& plan);
double mission_success(const LayeredNetwork& net, const MissionPlan& plan);

}  // namespace swarmres
