#include "swarmres/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "swarmres/spectral.hpp"

namespace swarmres {

std::vector<double> degree_centrality(const Graph& g) {
    const auto& nodes = g.nodes();
    std::vector<double> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        out[i] = static_cast<double>(g.degree(nodes[i]));
    return out;
}

std::vector<double> betweenness_centrality(const Graph& g) {
    const auto& nodes = g.nodes();
    const std::size_t n = nodes.size();
    std::vector<double> bc(n, 0.0);
    // Brandes 2001, one BFS per source.
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (NodeId v : g.neighbors(nodes[i])) adj[i].push_back(g.index_of(v));

    std::vector<long long> sigma(n);
    std::vector<long long> dist(n);
    std::vector<double> delta(n);
    std::vector<std::vector<std::size_t>> pred(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0);
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : pred) p.clear();
        sigma[s] = 1;
        dist[s] = 0;
        std::vector<std::size_t> order;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (std::size_t w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::size_t w = *it;
            for (std::size_t v : pred[w])
                delta[v] += static_cast<double>(sigma[v]) / static_cast<double>(sigma[w]) *
                            (1.0 + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }
    for (double& x : bc) x /= 2.0;  // each unordered pair counted from both ends
    return bc;
}

std::vector<double> eigenvector_centrality(const Graph& g) {
    const auto& nodes = g.nodes();
    const std::size_t n = nodes.size();
    if (n == 0) return {};
    if (g.edge_count() == 0) return std::vector<double>(n, 0.0);
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (NodeId v : g.neighbors(nodes[i])) adj[i].push_back(g.index_of(v));

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), next(n);
    const double tol = 1e-12;
    for (int iter = 0; iter < 20000; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = x[i];  // the +I shift
            for (std::size_t j : adj[i]) s += x[j];
            next[i] = s;
        }
        double norm = std::sqrt(std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
        for (double& v : next) v /= norm;
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::fabs(next[i] - x[i]));
        x = next;
        if (diff < tol) break;
    }
    double mx = *std::max_element(x.begin(), x.end());
    if (mx > 0)
        for (double& v : x) v /= mx;
    return x;
}

std::vector<double> closeness_centrality(const Graph& g, bool* used_harmonic) {
    const auto& nodes = g.nodes();
    const std::size_t n = nodes.size();
    const bool conn = g.connected();
    if (used_harmonic) *used_harmonic = !conn;
    std::vector<double> out(n, 0.0);
    if (n <= 1) return out;

    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (NodeId v : g.neighbors(nodes[i])) adj[i].push_back(g.index_of(v));

    std::vector<long long> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        double sum = 0.0, hsum = 0.0;
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            if (v != s) {
                sum += static_cast<double>(dist[v]);
                hsum += 1.0 / static_cast<double>(dist[v]);
            }
            for (std::size_t w : adj[v])
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        if (conn)
            out[s] = static_cast<double>(n - 1) / sum;
        else
            out[s] = hsum / static_cast<double>(n - 1);
    }
    return out;
}

std::map<NodeId, int> k_shell(const Graph& g) {
    std::map<NodeId, int> shell;
    std::map<NodeId, int> deg;
    for (NodeId v : g.nodes()) deg[v] = static_cast<int>(g.degree(v));
    std::map<NodeId, bool> removed;
    std::size_t left = g.node_count();
    int k = 0;
    while (left > 0) {
        bool peeled = true;
        while (peeled) {
            peeled = false;
            for (const auto& [v, d] : deg) {
                if (removed[v] || d > k) continue;
                shell[v] = k;
                removed[v] = true;
                --left;
                peeled = true;
                for (NodeId u : g.neighbors(v))
                    if (!removed[u]) --deg[u];
            }
        }
        ++k;
    }
    return shell;
}

std::vector<double> k_shell_values(const Graph& g) {
    auto shell = k_shell(g);
    const auto& nodes = g.nodes();
    std::vector<double> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = shell.at(nodes[i]);
    return out;
}

std::vector<double> katz_centrality(const Graph& g, double damping) {
    const std::size_t n = g.node_count();
    if (n == 0) return {};
    if (g.edge_count() == 0) return std::vector<double>(n, 1.0);
    Eigen::MatrixXd a = adjacency_matrix(g);
    std::vector<double> spec = adjacency_spectrum(g);
    double lmax = spec.back();
    double alpha = damping / lmax;
    Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(a.rows(), a.cols()) - alpha * a;
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.rows());
    Eigen::VectorXd x = m.partialPivLu().solve(ones);
    return std::vector<double>(x.data(), x.data() + x.size());
}

std::vector<double> rank_normalize(const std::vector<double>& raw) {
    const std::size_t n = raw.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    // Round to 12 significant digits before comparing so that values which
    // differ only by accumulated float noise tie deterministically.
    auto key = [](double v) {
        if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? 0.0 : v;
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::strtod(buf, nullptr);
    };
    std::vector<std::pair<double, std::size_t>> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = {key(raw[i]), i};
    std::sort(order.begin(), order.end());
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && order[j].first == order[i].first) ++j;
        double r = static_cast<double>(i + 1) / static_cast<double>(n);  // min rank of the tie group
        for (std::size_t t = i; t < j; ++t) out[order[t].second] = r;
        i = j;
    }
    return out;
}

FeatureMatrix centrality_features(const Graph& g) {
    FeatureMatrix fm;
    fm.nodes = g.nodes();
    const std::size_t n = fm.nodes.size();
    fm.values.resize(static_cast<Eigen::Index>(n), 5);
    bool harmonic = false;
    std::vector<std::vector<double>> cols = {
        degree_centrality(g), betweenness_centrality(g), eigenvector_centrality(g),
        closeness_centrality(g, &harmonic), k_shell_values(g)};
    fm.disconnected_closeness = harmonic;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        std::vector<double> ranked = rank_normalize(cols[c]);
        for (std::size_t i = 0; i < n; ++i)
            fm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = ranked[i];
    }
    return fm;
}

}  // namespace swarmres
