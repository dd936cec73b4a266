#pragma once

#include <Eigen/Dense>
#include <vector>

#include "swarmres/graph.hpp"

namespace swarmres {

// Row/column order follows g.nodes().
Eigen::MatrixXd adjacency_matrix(const Graph& g);
Eigen::MatrixXd laplacian_matrix(const Graph& g);

// Ascending eigenvalues. Throw on the empty graph.
std::vector<double> adjacency_spectrum(const Graph& g);
std::vector<double> laplacian_spectrum(const Graph& g);

// ln( (1/N) sum_k exp(lambda_k) ) over the adjacency spectrum, evaluated via
// log-sum-exp so large eigenvalues cannot overflow. Edgeless graphs give
// exactly 0. Throws on the empty graph.
double natural_connectivity(const Graph& g);
double natural_connectivity_of(const std::vector<double>& adjacency_eigenvalues);

// Second-smallest Laplacian eigenvalue. Returns exactly 0.0 when the graph
// is disconnected (decided by traversal, not by eigenvalue rounding).
// Throws when fewer than 2 nodes.
double algebraic_connectivity(const Graph& g);

}  // namespace swarmres
