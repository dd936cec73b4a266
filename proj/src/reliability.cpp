#include "swarmres/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "swarmres/spectral.hpp"

namespace swarmres {

void LinkModel::validate() const {
    if (!(d0 > 0)) throw std::invalid_argument("LinkModel: d0 must be positive");
    if (!(n_exp >= 1)) throw std::invalid_argument("LinkModel: n_exp must be >= 1");
}

double link_failure_prob(double d, const LinkModel& lm) {
    lm.validate();
    if (d < 0) throw std::domain_error("link_failure_prob: negative distance");
    return 1.0 - std::exp(-std::pow(d / lm.d0, lm.n_exp));
}

double link_weight(double d, const LinkModel& lm) { return 1.0 - link_failure_prob(d, lm); }

namespace {

// One-to-all -ln W distances; infinity marks unreachable nodes.
std::vector<double> reliability_costs(const Graph& g, const LinkModel& lm, NodeId src) {
    const std::size_t n = g.node_count();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[g.index_of(src)] = 0.0;
    heap.emplace(0.0, g.index_of(src));
    const auto& nodes = g.nodes();
    while (!heap.empty()) {
        auto [d, i] = heap.top();
        heap.pop();
        if (d > dist[i]) continue;
        NodeId u = nodes[i];
        for (NodeId v : g.neighbors(u)) {
            auto len = g.edge_length(u, v);
            if (!len)
                throw std::invalid_argument("comm_success: edge " + std::to_string(u) + "-" +
                                            std::to_string(v) + " has no length");
            double cost = std::pow(*len / lm.d0, lm.n_exp);  // -ln W
            std::size_t j = g.index_of(v);
            if (dist[i] + cost < dist[j]) {
                dist[j] = dist[i] + cost;
                heap.emplace(dist[j], j);
            }
        }
    }
    return dist;
}

}  // namespace

double comm_success(const Graph& g, const LinkModel& lm, NodeId i, NodeId j) {
    lm.validate();
    if (!g.has_node(i) || !g.has_node(j))
        throw std::invalid_argument("comm_success: unknown endpoint");
    if (i == j) return 1.0;
    std::vector<double> dist = reliability_costs(g, lm, i);
    double d = dist[g.index_of(j)];
    if (std::isinf(d)) return 0.0;
    return std::exp(-d);
}

double global_comm_success(const Graph& g, const LinkModel& lm) {
    lm.validate();
    const std::size_t n = g.node_count();
    if (n < 2) throw std::domain_error("global_comm_success: need at least 2 nodes");
    double sum = 0.0;
    const auto& nodes = g.nodes();
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<double> dist = reliability_costs(g, lm, nodes[a]);
        for (std::size_t b = a + 1; b < n; ++b)
            if (!std::isinf(dist[b])) sum += std::exp(-dist[b]);
    }
    return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

Percolation er_percolation(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n == 0 || g.edge_count() == 0) return {0.0, true};
    double k1 = 0.0, k2 = 0.0;
    for (NodeId v : g.nodes()) {
        double d = static_cast<double>(g.degree(v));
        k1 += d;
        k2 += d * d;
    }
    k1 /= static_cast<double>(n);
    k2 /= static_cast<double>(n);
    double k0 = k2 / k1;
    if (k0 <= 1.0) return {0.0, true};
    return {1.0 / (k0 - 1.0), false};
}

void PercolationSpec::validate() const {
    if (!(gamma > 1)) throw std::invalid_argument("PercolationSpec: gamma must exceed 1");
    if (!(k_min <= k_max)) throw std::invalid_argument("PercolationSpec: k_min > k_max");
}

double scale_free_k0(const PercolationSpec& spec) {
    spec.validate();
    if (spec.gamma == 2.0 || spec.gamma == 3.0)
        throw std::domain_error(
            "scale_free_k0: gamma = " + std::to_string(spec.gamma) +
            " is a singularity of the closed form; use empirical degree moments");
    double pre = std::fabs((2.0 - spec.gamma) / (3.0 - spec.gamma));
    if (spec.gamma > 3.0) return pre * spec.k_min;
    if (spec.gamma > 2.0)
        return pre * std::pow(spec.k_min, spec.gamma - 2.0) *
               std::pow(spec.k_max, 3.0 - spec.gamma);
    return pre * spec.k_max;
}

double MissionPlan::stress_factor(NodeId i, std::size_t p, std::size_t j) const {
    auto it = stress.find({i, p, j});
    return it == stress.end() ? 1.0 : it->second;
}

double MissionPlan::base_rate(NodeId i) const {
    auto it = base_rates.find(i);
    return it == base_rates.end() ? 0.0 : it->second;
}

std::vector<NodeId> MissionPlan::bridge_nodes(std::size_t j_a) const {
    if (j_a < 1 || j_a > phases.size()) return {};
    std::set<NodeId> acc(phases[j_a - 1].nodes.begin(), phases[j_a - 1].nodes.end());
    for (std::size_t j = j_a; j < phases.size(); ++j) {
        std::set<NodeId> cur(phases[j].nodes.begin(), phases[j].nodes.end());
        std::set<NodeId> inter;
        std::set_intersection(acc.begin(), acc.end(), cur.begin(), cur.end(),
                              std::inserter(inter, inter.begin()));
        acc = std::move(inter);
    }
    return {acc.begin(), acc.end()};
}

std::size_t MissionPlan::participation(NodeId u, std::size_t j_a) const {
    std::size_t c = 0;
    for (std::size_t j = j_a; j <= phases.size(); ++j) {
        const auto& v = phases[j - 1].nodes;
        if (std::find(v.begin(), v.end(), u) != v.end()) ++c;
    }
    return c;
}

void MissionPlan::validate(std::size_t universe_size) const {
    if (phases.empty()) throw std::invalid_argument("MissionPlan: no phases");
    std::size_t coverage = 0;
    for (std::size_t j = 0; j < phases.size(); ++j) {
        const Phase& ph = phases[j];
        coverage += ph.nodes.size();
        if (!(ph.duration_s > 0))
            throw std::invalid_argument("MissionPlan: phase " + std::to_string(j + 1) +
                                        " duration must be positive");
        if (ph.beta < 0)
            throw std::invalid_argument("MissionPlan: phase " + std::to_string(j + 1) +
                                        " weight must be non-negative");
    }
    if (coverage < universe_size)
        throw std::invalid_argument(
            "MissionPlan: phase coverage " + std::to_string(coverage) +
            " is below the node universe " + std::to_string(universe_size));
    for (std::size_t a = 0; a < phases.size(); ++a)
        for (std::size_t b = a + 1; b < phases.size(); ++b) {
            std::set<NodeId> sa(phases[a].nodes.begin(), phases[a].nodes.end());
            bool hit = false;
            for (NodeId v : phases[b].nodes)
                if (sa.count(v)) {
                    hit = true;
                    break;
                }
            if (!hit)
                throw std::invalid_argument("MissionPlan: phases " + std::to_string(a + 1) +
                                            " and " + std::to_string(b + 1) +
                                            " have empty intersection");
        }
    for (const auto& [key, xi] : stress)
        if (xi < 1.0)
            throw std::invalid_argument("MissionPlan: stress factor below 1 for payload " +
                                        std::to_string(std::get<0>(key)));
    for (const auto& [i, delta] : base_rates)
        if (delta < 0)
            throw std::invalid_argument("MissionPlan: negative base rate for payload " +
                                        std::to_string(i));
    if (eta < 0) throw std::invalid_argument("MissionPlan: eta must be non-negative");
}

double payload_reliability(const MissionPlan& plan, NodeId i, std::size_t j) {
    if (j < 1 || j > plan.phases.size())
        throw std::invalid_argument("payload_reliability: phase index " + std::to_string(j) +
                                    " out of range");
    double acc = 0.0;
    for (std::size_t p = 1; p <= j; ++p)
        acc += plan.stress_factor(i, p, j) * plan.phases[p - 1].duration_s;
    return std::exp(-plan.base_rate(i) * acc);
}

namespace {

// Percolation thresholds of every phase graph plus the min-max range over
// the non-fragile ones.
struct PhaseThresholds {
    std::vector<Percolation> per_phase;
    double lo = 0.0, hi = 0.0;
    bool degenerate = true;  // single usable value or none
};

PhaseThresholds phase_thresholds(const LayeredNetwork& net, const MissionPlan& plan) {
    PhaseThresholds out;
    bool first = true;
    for (const Phase& ph : plan.phases) {
        Graph gj = net.active_subgraph(ph.nodes);
        Percolation p = er_percolation(gj);
        out.per_phase.push_back(p);
        if (!p.fragile) {
            if (first) {
                out.lo = out.hi = p.p_t;
                first = false;
            } else {
                out.lo = std::min(out.lo, p.p_t);
                out.hi = std::max(out.hi, p.p_t);
            }
        }
    }
    out.degenerate = first || out.hi == out.lo;
    return out;
}

PhaseFragility phase_fragility_impl(const LayeredNetwork& net, const MissionPlan& plan,
                                    std::size_t j, const PhaseThresholds& th) {
    PhaseFragility out;
    const Phase& ph = plan.phases[j - 1];
    const Percolation& p = th.per_phase[j - 1];
    out.p_t = p.p_t;
    if (p.fragile) {
        out.fragile = true;
        out.value = 0.0;
        out.structural = 0.0;
        return out;
    }
    out.structural = th.degenerate ? 1.0 : 1.0 - (p.p_t - th.lo) / (th.hi - th.lo);
    out.reliability_product = 1.0;
    for (NodeId i : ph.nodes)
        if (net.structure().has_node(i))
            out.reliability_product *= payload_reliability(plan, i, j);
    out.value = out.structural * out.reliability_product;
    return out;
}

}  // namespace

PhaseFragility phase_fragility(const LayeredNetwork& net, const MissionPlan& plan,
                               std::size_t j) {
    if (j < 1 || j > plan.phases.size())
        throw std::invalid_argument("phase_fragility: phase index out of range");
    return phase_fragility_impl(net, plan, j, phase_thresholds(net, plan));
}

double global_connectivity_score(const LayeredNetwork& net, const MissionPlan& plan) {
    double acc = 0.0;
    for (const Phase& ph : plan.phases) {
        Graph gj = net.active_subgraph(ph.nodes);
        if (gj.node_count() < 2 || !gj.connected()) continue;
        acc += ph.beta * algebraic_connectivity(gj);
    }
    return -std::exp(-acc);
}

MissionBreakdown mission_breakdown(const LayeredNetwork& net, const MissionPlan& plan) {
    MissionBreakdown out;
    PhaseThresholds th = phase_thresholds(net, plan);
    double prod = 1.0;
    for (std::size_t j = 1; j <= plan.phases.size(); ++j) {
        out.phases.push_back(phase_fragility_impl(net, plan, j, th));
        prod *= out.phases.back().value;
    }
    for (NodeId u : plan.bridge_nodes()) {
        if (!net.structure().has_node(u)) continue;
        out.bridge_participation_sum += plan.participation(u);
        out.bridge_graph_degree_sum += net.structure().degree(u);
    }
    out.bridge_penalty =
        std::exp(-plan.eta * static_cast<double>(out.bridge_participation_sum));
    out.p_task = prod * out.bridge_penalty;
    return out;
}

double mission_success(const LayeredNetwork& net, const MissionPlan& plan) {
    return mission_breakdown(net, plan).p_task;
}

}  // namespace swarmres
