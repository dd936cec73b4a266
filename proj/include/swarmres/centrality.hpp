#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "swarmres/graph.hpp"

namespace swarmres {

// All vectors are indexed by g.nodes() order and hold raw (un-normalized)
// scores unless the name says otherwise.

std::vector<double> degree_centrality(const Graph& g);

// Brandes' algorithm on unweighted shortest paths; pair (s,t), s != t,
// counted once per unordered pair.
std::vector<double> betweenness_centrality(const Graph& g);

// Power iteration on A + I (shifting keeps the dominant eigenpair
// non-negative and damps sign flipping on bipartite graphs). Normalized to
// unit max entry. Edgeless graphs give all zeros.
std::vector<double> eigenvector_centrality(const Graph& g);

// Classic closeness (n-1) / sum of distances when the graph is connected.
// On a disconnected graph falls back to harmonic closeness over reachable
// pairs and sets *used_harmonic = true.
std::vector<double> closeness_centrality(const Graph& g, bool* used_harmonic = nullptr);

// Iterative k-shell peeling; isolated nodes get shell 0.
std::map<NodeId, int> k_shell(const Graph& g);
std::vector<double> k_shell_values(const Graph& g);

// Katz centrality (I - alpha A)^-1 1 with alpha = damping / lambda_max
// (damping 0.9); used as a ranking baseline.
std::vector<double> katz_centrality(const Graph& g, double damping = 0.9);

// Ranks raw scores ascending and maps node i to rank_i / N in (0, 1]. Ties
// (equal after rounding to 12 significant digits) share the minimum rank of
// their group.
std::vector<double> rank_normalize(const std::vector<double>& raw);

// Five rank-normalized structural features per node, used as GCN input.
struct FeatureMatrix {
    enum Column { kDegree = 0, kBetweenness, kEigenvector, kCloseness, kShell };
    std::vector<NodeId> nodes;
    Eigen::MatrixXd values;  // node_count x 5
    bool disconnected_closeness = false;
};

FeatureMatrix centrality_features(const Graph& g);

}  // namespace swarmres
