#pragma once

#include <map>
#include <string>
#include <vector>

#include "swarmres/graph.hpp"

namespace swarmres {

// Drop in natural connectivity caused by deleting v (the survivor graph is
// evaluated on its own, smaller node set). Needs at least 2 nodes.
double birnbaum(const Graph& g, NodeId v);
// Same for every node, evaluated concurrently; indexed by g.nodes().
std::vector<double> birnbaum_all(const Graph& g);

// SI(v) = (sum of neighbors' k-shell indices) * eigenvector centrality of v.
// Isolated nodes score 0.
double surrounding_influence(const Graph& g, NodeId v);
std::vector<double> surrounding_influence_all(const Graph& g);

// Min-max to [0,1]; an all-equal vector maps to all zeros.
std::vector<double> min_max_normalize(const std::vector<double>& raw);

// NI = r * minmax(BI) + (1-r) * minmax(SI), the combination step alone
// (exposed so tests can probe normalization invariances directly).
std::vector<double> surbi_combine(const std::vector<double>& bi_raw,
                                  const std::vector<double>& si_raw, double r);

struct CriticalityReport {
    std::vector<NodeId> nodes;  // g.nodes() order
    std::vector<double> bi_raw, si_raw, bi_norm, si_norm, ni;
    std::map<EdgeKey, double> edge_importance;  // EI = NI(a) + NI(b)
    std::vector<NodeId> ranking;                // NI descending, ties by id ascending
    double r = 0.0;
    std::vector<std::string> notes;  // normalization/tie decisions baked into the numbers

    double ni_of(NodeId v) const;
    std::map<NodeId, double> ni_map() const;
    // CSV "node_id,bi_raw,si_raw,ni,rank" (rank 1 = top of the ranking).
    std::string node_csv() const;
    // CSV "u,v,ei" in ascending edge order.
    std::string edge_csv() const;
};

// Full SurBi pipeline on one graph; r is the BI weight in [0,1].
CriticalityReport surbi_rank(const Graph& g, double r);

// Same report for several r values while computing the raw BI/SI vectors
// only once (they do not depend on r).
std::vector<CriticalityReport> surbi_rank_grid(const Graph& g,
                                               const std::vector<double>& r_grid);

// phi(v) = -exp(-sum_j beta_j * NI_j(v)) over per-phase reports; nodes
// absent from a phase contribute NI_j = 0 there. Ranking is phi descending
// (closest to zero first), ties by id.
struct GlobalImportance {
    std::vector<NodeId> ranking;
    std::map<NodeId, double> phi;
    std::vector<double> betas;
};
GlobalImportance global_importance(const std::vector<CriticalityReport>& phase_reports,
                                   const std::vector<double>& betas);

}  // namespace swarmres
