#include "swarmres/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarmres {

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    const std::size_t n = g.node_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (const EdgeKey& e : g.edges()) {
        auto i = static_cast<Eigen::Index>(g.index_of(e.a));
        auto j = static_cast<Eigen::Index>(g.index_of(e.b));
        a(i, j) = 1.0;
        a(j, i) = 1.0;
    }
    return a;
}

Eigen::MatrixXd laplacian_matrix(const Graph& g) {
    Eigen::MatrixXd l = -adjacency_matrix(g);
    const auto& nodes = g.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            static_cast<double>(g.degree(nodes[i]));
    return l;
}

namespace {

std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() == 0) throw std::invalid_argument(std::string(what) + ": empty graph");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error(std::string(what) + ": eigensolver failed to converge");
    std::vector<double> ev(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

std::vector<double> adjacency_spectrum(const Graph& g) {
    return sym_eigenvalues(adjacency_matrix(g), "adjacency_spectrum");
}

std::vector<double> laplacian_spectrum(const Graph& g) {
    return sym_eigenvalues(laplacian_matrix(g), "laplacian_spectrum");
}

double natural_connectivity_of(const std::vector<double>& ev) {
    if (ev.empty())
        throw std::invalid_argument("natural_connectivity: empty spectrum");
    const double n = static_cast<double>(ev.size());
    const double m = *std::max_element(ev.begin(), ev.end());
    double s = 0.0;
    for (double l : ev) s += std::exp(l - m);
    return m + std::log(s) - std::log(n);
}

double natural_connectivity(const Graph& g) {
    return natural_connectivity_of(adjacency_spectrum(g));
}

double algebraic_connectivity(const Graph& g) {
    if (g.node_count() < 2)
        throw std::invalid_argument("algebraic_connectivity: need at least 2 nodes");
    if (!g.connected()) return 0.0;
    return laplacian_spectrum(g)[1];
}

}  // namespace swarmres
