#include "swarmres/criticality.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "swarmres/centrality.hpp"
#include "swarmres/spectral.hpp"

namespace swarmres {

namespace {

double phi_of_matrix(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("birnbaum: eigensolver failed to converge");
    std::vector<double> ev(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
    return natural_connectivity_of(ev);
}

Eigen::MatrixXd drop_row_col(const Eigen::MatrixXd& a, Eigen::Index k) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd b(n - 1, n - 1);
    for (Eigen::Index i = 0, bi = 0; i < n; ++i) {
        if (i == k) continue;
        for (Eigen::Index j = 0, bj = 0; j < n; ++j) {
            if (j == k) continue;
            b(bi, bj) = a(i, j);
            ++bj;
        }
        ++bi;
    }
    return b;
}

}  // namespace

double birnbaum(const Graph& g, NodeId v) {
    if (g.node_count() < 2)
        throw std::invalid_argument("birnbaum: need at least 2 nodes");
    std::size_t k = g.index_of(v);  // also validates membership
    Eigen::MatrixXd a = adjacency_matrix(g);
    return phi_of_matrix(a) - phi_of_matrix(drop_row_col(a, static_cast<Eigen::Index>(k)));
}

std::vector<double> birnbaum_all(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    Eigen::MatrixXd a = adjacency_matrix(g);
    const double phi0 = phi_of_matrix(a);

    std::size_t workers = std::min<std::size_t>(std::thread::hardware_concurrency(), n);
    if (workers == 0) workers = 1;
    std::vector<std::thread> pool;
    std::atomic<std::size_t> cursor{0};
    auto run = [&]() {
        while (true) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= n) break;
            out[i] = phi0 - phi_of_matrix(drop_row_col(a, static_cast<Eigen::Index>(i)));
        }
    };
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    return out;
}

std::vector<double> surrounding_influence_all(const Graph& g) {
    const auto& nodes = g.nodes();
    std::vector<double> ec = eigenvector_centrality(g);
    auto shell = k_shell(g);
    std::vector<double> out(nodes.size(), 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double ks_sum = 0.0;
        for (NodeId u : g.neighbors(nodes[i])) ks_sum += shell.at(u);
        out[i] = ks_sum * ec[i];
    }
    return out;
}

double surrounding_influence(const Graph& g, NodeId v) {
    return surrounding_influence_all(g)[g.index_of(v)];
}

std::vector<double> min_max_normalize(const std::vector<double>& raw) {
    std::vector<double> out(raw.size(), 0.0);
    if (raw.empty()) return out;
    auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    if (*hi == *lo) return out;  // no spread: all zeros
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - *lo) / (*hi - *lo);
    return out;
}

std::vector<double> surbi_combine(const std::vector<double>& bi_raw,
                                  const std::vector<double>& si_raw, double r) {
    if (bi_raw.size() != si_raw.size())
        throw std::invalid_argument("surbi_combine: BI/SI size mismatch");
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("surbi_combine: r outside [0,1]");
    std::vector<double> bi = min_max_normalize(bi_raw);
    std::vector<double> si = min_max_normalize(si_raw);
    std::vector<double> ni(bi.size());
    for (std::size_t i = 0; i < ni.size(); ++i) ni[i] = r * bi[i] + (1.0 - r) * si[i];
    return ni;
}

namespace {

CriticalityReport assemble_report(const Graph& g, std::vector<double> bi_raw,
                                  std::vector<double> si_raw, double r) {
    CriticalityReport rep;
    rep.nodes = g.nodes();
    rep.r = r;
    rep.bi_raw = std::move(bi_raw);
    rep.si_raw = std::move(si_raw);
    rep.bi_norm = min_max_normalize(rep.bi_raw);
    rep.si_norm = min_max_normalize(rep.si_raw);
    rep.ni.resize(rep.nodes.size());
    for (std::size_t i = 0; i < rep.ni.size(); ++i)
        rep.ni[i] = r * rep.bi_norm[i] + (1.0 - r) * rep.si_norm[i];
    for (const EdgeKey& e : g.edges())
        rep.edge_importance[e] = rep.ni[g.index_of(e.a)] + rep.ni[g.index_of(e.b)];
    rep.ranking = rep.nodes;
    std::sort(rep.ranking.begin(), rep.ranking.end(), [&](NodeId a, NodeId b) {
        double na = rep.ni[g.index_of(a)], nb = rep.ni[g.index_of(b)];
        if (na != nb) return na > nb;
        return a < b;
    });
    rep.notes = {"BI and SI min-max normalized to [0,1] before combination",
                 "all-equal raw vectors normalize to zeros",
                 "ranking ties broken by ascending node id"};
    return rep;
}

}  // namespace

CriticalityReport surbi_rank(const Graph& g, double r) {
    if (g.empty()) throw std::invalid_argument("surbi_rank: empty graph");
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("surbi_rank: r outside [0,1]");
    return assemble_report(g, birnbaum_all(g), surrounding_influence_all(g), r);
}

std::vector<CriticalityReport> surbi_rank_grid(const Graph& g,
                                               const std::vector<double>& r_grid) {
    if (g.empty()) throw std::invalid_argument("surbi_rank: empty graph");
    std::vector<double> bi = birnbaum_all(g);
    std::vector<double> si = surrounding_influence_all(g);
    std::vector<CriticalityReport> out;
    out.reserve(r_grid.size());
    for (double r : r_grid) {
        if (r < 0.0 || r > 1.0) throw std::invalid_argument("surbi_rank: r outside [0,1]");
        out.push_back(assemble_report(g, bi, si, r));
    }
    return out;
}

double CriticalityReport::ni_of(NodeId v) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == v) return ni[i];
    throw std::invalid_argument("ni_of: unknown node " + std::to_string(v));
}

std::map<NodeId, double> CriticalityReport::ni_map() const {
    std::map<NodeId, double> m;
    for (std::size_t i = 0; i < nodes.size(); ++i) m[nodes[i]] = ni[i];
    return m;
}

std::string CriticalityReport::node_csv() const {
    std::map<NodeId, std::size_t> rank_of;
    for (std::size_t i = 0; i < ranking.size(); ++i) rank_of[ranking[i]] = i + 1;
    std::string out = "node_id,bi_raw,si_raw,ni,rank\n";
    char buf[160];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%u,%.12g,%.12g,%.12g,%zu\n", nodes[i], bi_raw[i],
                      si_raw[i], ni[i], rank_of.at(nodes[i]));
        out += buf;
    }
    return out;
}

std::string CriticalityReport::edge_csv() const {
    std::string out = "u,v,ei\n";
    char buf[96];
    for (const auto& [e, ei] : edge_importance) {
        std::snprintf(buf, sizeof(buf), "%u,%u,%.12g\n", e.a, e.b, ei);
        out += buf;
    }
    return out;
}

GlobalImportance global_importance(const std::vector<CriticalityReport>& phase_reports,
                                   const std::vector<double>& betas) {
    if (betas.size() != phase_reports.size())
        throw std::invalid_argument("global_importance: " + std::to_string(betas.size()) +
                                    " weights for " + std::to_string(phase_reports.size()) +
                                    " phase reports");
    GlobalImportance out;
    out.betas = betas;
    std::map<NodeId, double> acc;
    for (std::size_t j = 0; j < phase_reports.size(); ++j) {
        const CriticalityReport& rep = phase_reports[j];
        for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
            acc.try_emplace(rep.nodes[i], 0.0);
            acc[rep.nodes[i]] += betas[j] * rep.ni[i];
        }
    }
    for (const auto& [v, s] : acc) {
        out.phi[v] = -std::exp(-s);
        out.ranking.push_back(v);
    }
    std::sort(out.ranking.begin(), out.ranking.end(), [&](NodeId a, NodeId b) {
        double pa = out.phi.at(a), pb = out.phi.at(b);
        if (pa != pb) return pa > pb;
        return a < b;
    });
    return out;
}

}  // namespace swarmres
