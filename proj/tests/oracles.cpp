#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracles {

using swarmres::EdgeKey;
using swarmres::Graph;
using swarmres::LinkModel;
using swarmres::NodeId;

SymMatrix adjacency_of(const Graph& g) {
    const auto& nodes = g.nodes();
    SymMatrix m;
    m.n = nodes.size();
    m.a.assign(m.n * m.n, 0.0);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j)
            if (g.has_edge(nodes[i], nodes[j])) {
                m.at(i, j) = 1.0;
                m.at(j, i) = 1.0;
            }
    return m;
}

SymMatrix laplacian_of(const Graph& g) {
    SymMatrix a = adjacency_of(g);
    SymMatrix l;
    l.n = a.n;
    l.a.assign(l.n * l.n, 0.0);
    for (std::size_t i = 0; i < l.n; ++i) {
        double deg = 0;
        for (std::size_t j = 0; j < l.n; ++j) deg += a.at(i, j);
        l.at(i, i) = deg;
        for (std::size_t j = 0; j < l.n; ++j)
            if (i != j) l.at(i, j) = -a.at(i, j);
    }
    return l;
}

std::vector<double> jacobi_eigenvalues(SymMatrix m) {
    const std::size_t n = m.n;
    if (n == 0) throw std::invalid_argument("jacobi: empty matrix");
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m.at(i, j) * m.at(i, j);
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m.at(p, q)) < 1e-300) continue;
                const double theta = (m.at(q, q) - m.at(p, p)) / (2 * m.at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m.at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double natural_connectivity(const Graph& g) {
    std::vector<double> ev = jacobi_eigenvalues(adjacency_of(g));
    double sum = 0;
    for (double l : ev) sum += std::exp(l);
    return std::log(sum / static_cast<double>(ev.size()));
}

double lambda2(const Graph& g) {
    std::vector<double> ev = jacobi_eigenvalues(laplacian_of(g));
    if (ev.size() < 2) throw std::invalid_argument("lambda2: need 2 nodes");
    return ev[1];
}

namespace {

double weight_of(const Graph& g, const LinkModel& lm, NodeId u, NodeId v) {
    const auto len = g.edge_length(u, v);
    const double d = len.value_or(0.0);
    return std::exp(-std::pow(d / lm.d0, lm.n_exp));
}

void dfs_paths(const Graph& g, const LinkModel& lm, NodeId at, NodeId t, double product,
               std::vector<NodeId>& on_path, double& best) {
    if (at == t) {
        best = std::max(best, product);
        return;
    }
    for (NodeId nb : g.neighbors(at)) {
        if (std::find(on_path.begin(), on_path.end(), nb) != on_path.end()) continue;
        on_path.push_back(nb);
        dfs_paths(g, lm, nb, t, product * weight_of(g, lm, at, nb), on_path, best);
        on_path.pop_back();
    }
}

}  // namespace

double max_reliability(const Graph& g, const LinkModel& lm, NodeId s, NodeId t) {
    if (s == t) return 1.0;
    double best = 0.0;
    std::vector<NodeId> on_path{s};
    dfs_paths(g, lm, s, t, 1.0, on_path, best);
    return best;
}

namespace {

void all_paths(const Graph& g, NodeId at, NodeId t, std::vector<NodeId>& on_path,
               std::vector<std::vector<NodeId>>& out) {
    if (at == t) {
        out.push_back(on_path);
        return;
    }
    for (NodeId nb : g.neighbors(at)) {
        if (std::find(on_path.begin(), on_path.end(), nb) != on_path.end()) continue;
        on_path.push_back(nb);
        all_paths(g, nb, t, on_path, out);
        on_path.pop_back();
    }
}

}  // namespace

std::vector<double> betweenness(const Graph& g) {
    const auto& nodes = g.nodes();
    std::vector<double> bc(nodes.size(), 0.0);
    for (std::size_t si = 0; si < nodes.size(); ++si) {
        for (std::size_t ti = si + 1; ti < nodes.size(); ++ti) {
            std::vector<std::vector<NodeId>> paths;
            std::vector<NodeId> on_path{nodes[si]};
            all_paths(g, nodes[si], nodes[ti], on_path, paths);
            if (paths.empty()) continue;
            std::size_t shortest = paths[0].size();
            for (const auto& p : paths) shortest = std::min(shortest, p.size());
            std::size_t count = 0;
            for (const auto& p : paths)
                if (p.size() == shortest) ++count;
            for (const auto& p : paths) {
                if (p.size() != shortest) continue;
                for (std::size_t k = 1; k + 1 < p.size(); ++k)
                    bc[g.index_of(p[k])] += 1.0 / static_cast<double>(count);
            }
        }
    }
    return bc;
}

std::vector<std::size_t> nondominated(const std::vector<std::vector<double>>& rows) {
    auto dom = [](const std::vector<double>& a, const std::vector<double>& b) {
        bool strict = false;
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] > b[k]) return false;
            if (a[k] < b[k]) strict = true;
        }
        return strict;
    };
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < rows.size() && !dominated; ++j)
            if (j != i && dom(rows[j], rows[i])) dominated = true;
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

std::vector<double> topsis(const std::vector<std::vector<double>>& rows,
                           const std::vector<double>& weights) {
    const std::size_t n = rows.size(), m = weights.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(m, 0.0));
    for (std::size_t c = 0; c < m; ++c) {
        double norm = 0;
        for (std::size_t r = 0; r < n; ++r) norm += rows[r][c] * rows[r][c];
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < n; ++r)
            v[r][c] = weights[c] * (norm > 0 ? rows[r][c] / norm : 0.0);
    }
    std::vector<double> ideal(m), anti(m);
    for (std::size_t c = 0; c < m; ++c) {
        ideal[c] = v[0][c];
        anti[c] = v[0][c];
        for (std::size_t r = 1; r < n; ++r) {
            ideal[c] = std::min(ideal[c], v[r][c]);
            anti[c] = std::max(anti[c], v[r][c]);
        }
    }
    std::vector<double> score(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        double dp = 0, dm = 0;
        for (std::size_t c = 0; c < m; ++c) {
            dp += (v[r][c] - ideal[c]) * (v[r][c] - ideal[c]);
            dm += (v[r][c] - anti[c]) * (v[r][c] - anti[c]);
        }
        dp = std::sqrt(dp);
        dm = std::sqrt(dm);
        score[r] = dp + dm > 0 ? dp / (dp + dm) : 0.5;
    }
    return score;
}

std::vector<std::vector<double>> gcn_forward(
    const Graph& g, const std::vector<std::vector<double>>& features,
    const std::vector<std::vector<std::vector<double>>>& layer_weights) {
    const auto& nodes = g.nodes();
    const std::size_t n = nodes.size();

    // hat_a = D^-1/2 (A + I) D^-1/2 with D the degree matrix of A + I.
    std::vector<std::vector<double>> hat_a(n, std::vector<double>(n, 0.0));
    std::vector<double> deg(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const bool linked = i == j || g.has_edge(nodes[i], nodes[j]);
            if (linked) deg[i] += 1.0;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const bool linked = i == j || g.has_edge(nodes[i], nodes[j]);
            if (linked) hat_a[i][j] = 1.0 / std::sqrt(deg[i] * deg[j]);
        }

    std::vector<std::vector<double>> h = features;
    for (const auto& w : layer_weights) {
        const std::size_t in = w.size(), out = w[0].size();
        std::vector<std::vector<double>> agg(n, std::vector<double>(in, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < in; ++k) agg[i][k] += hat_a[i][j] * h[j][k];
        std::vector<std::vector<double>> nxt(n, std::vector<double>(out, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < in; ++k)
                for (std::size_t c = 0; c < out; ++c) nxt[i][c] += agg[i][k] * w[k][c];
        for (auto& row : nxt)
            for (double& x : row) x = std::max(0.0, x);
        h = std::move(nxt);
    }
    return h;
}

}  // namespace oracles
