#include "swarmres/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>

#include "swarmres/criticality.hpp"
#include "swarmres/errors.hpp"
#include "swarmres/spectral.hpp"

namespace swarmres {

Graph gen_pln(std::size_t n, std::size_t attachment, RngStream& rng) {
    if (n < 10) throw std::invalid_argument("gen_pln: need at least 10 nodes");
    if (attachment < 1 || attachment >= n)
        throw std::invalid_argument("gen_pln: attachment must be in [1, n)");
    Graph g;
    g.add_node(0);
    // Roulette list with every node appearing degree + 1 times, so isolated
    // newcomers stay reachable as targets.
    std::vector<NodeId> chances{0};
    for (NodeId v = 1; v < static_cast<NodeId>(n); ++v) {
        g.add_node(v);
        const std::size_t k = std::min<std::size_t>(attachment, v);
        std::set<NodeId> targets;
        while (targets.size() < k) targets.insert(chances[rng.below(chances.size())]);
        for (NodeId t : targets) {
            g.add_edge(v, t);
            chances.push_back(t);
            chances.push_back(v);
        }
        chances.push_back(v);
    }
    return g;
}

namespace {

// Random subsets of the universe with |V_j| ~ U[lo, hi] * n, then patched
// until the mission constraints hold: the sizes sum to at least n and every
// pair of phases shares a node.
std::vector<std::vector<NodeId>> draw_active_sets(const std::vector<NodeId>& universe,
                                                  std::size_t phases, double lo, double hi,
                                                  RngStream& rng) {
    const std::size_t n = universe.size();
    std::vector<std::set<NodeId>> sets(phases);
    for (std::size_t j = 0; j < phases; ++j) {
        const double frac = rng.uniform(lo, hi);
        const std::size_t size = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(frac * static_cast<double>(n))));
        for (std::size_t i : rng.sample_indices(n, std::min(size, n)))
            sets[j].insert(universe[i]);
    }

    std::size_t total = 0;
    for (const auto& s : sets) total += s.size();
    std::size_t j = 0;
    while (total < n) {
        bool grown = false;
        for (std::size_t tries = 0; tries < phases && !grown; ++tries) {
            auto& s = sets[(j + tries) % phases];
            for (NodeId v : universe) {
                if (s.insert(v).second) {
                    ++total;
                    grown = true;
                    j = (j + tries + 1) % phases;
                    break;
                }
            }
        }
        if (!grown) break;  // every phase already holds the whole universe
    }

    for (std::size_t a = 0; a < phases; ++a) {
        for (std::size_t b = a + 1; b < phases; ++b) {
            const bool overlap = std::any_of(sets[a].begin(), sets[a].end(),
                                             [&](NodeId v) { return sets[b].count(v) != 0; });
            if (!overlap) sets[b].insert(*sets[a].begin());
        }
    }

    std::vector<std::vector<NodeId>> out(phases);
    for (std::size_t k = 0; k < phases; ++k) out[k].assign(sets[k].begin(), sets[k].end());
    return out;
}

Graph degree_preserving_rewire(const Graph& g, double rate, RngStream& rng) {
    Graph out = g;
    const std::size_t attempts = static_cast<std::size_t>(
        std::llround(rate * static_cast<double>(g.edge_count())));
    for (std::size_t a = 0; a < attempts; ++a) {
        const std::vector<EdgeKey> edges = out.edges();
        if (edges.size() < 2) break;
        const EdgeKey e1 = edges[rng.below(edges.size())];
        const EdgeKey e2 = edges[rng.below(edges.size())];
        NodeId u1 = e1.a, v1 = e1.b, u2 = e2.a, v2 = e2.b;
        if (rng.bernoulli(0.5)) std::swap(u2, v2);
        // Swap to (u1,u2), (v1,v2) when that keeps the graph simple.
        if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) continue;
        if (out.has_edge(u1, u2) || out.has_edge(v1, v2)) continue;
        out.remove_edge(e1.a, e1.b);
        out.remove_edge(e2.a, e2.b);
        out.add_edge(u1, u2);
        out.add_edge(v1, v2);
    }
    return out;
}

}  // namespace

MultiphaseScenario gen_multiphase(const Graph& base, std::size_t phases, RngStream& rng,
                                  double rewire_rate) {
    if (base.empty()) throw std::invalid_argument("gen_multiphase: empty base graph");
    if (!base.connected())
        throw std::invalid_argument("gen_multiphase: base graph must be connected");
    if (phases == 0) throw std::invalid_argument("gen_multiphase: need at least one phase");
    if (rewire_rate < 0.0 || rewire_rate > 1.0)
        throw std::invalid_argument("gen_multiphase: rewire_rate must be in [0,1]");

    MultiphaseScenario out;
    out.plan.eta = 0.01;
    const std::vector<NodeId>& universe = base.nodes();

    std::vector<std::vector<NodeId>> active;
    if (phases == 1) {
        active.emplace_back(universe);
        std::sort(active[0].begin(), active[0].end());
    } else {
        RngStream sets_rng = rng.derive("phase-sets");
        active = draw_active_sets(universe, phases, 0.3, 0.5, sets_rng);
    }

    RngStream param_rng = rng.derive("phase-params");
    for (std::size_t j = 0; j < phases; ++j) {
        Phase ph;
        ph.nodes = active[j];
        ph.duration_s = param_rng.uniform(120.0, 600.0);
        ph.beta = param_rng.uniform(0.5, 1.5);
        out.plan.phases.push_back(std::move(ph));
    }
    std::vector<NodeId> sorted_universe = universe;
    std::sort(sorted_universe.begin(), sorted_universe.end());
    for (NodeId v : sorted_universe)
        out.plan.base_rates[v] = param_rng.uniform(1e-5, 2e-4);

    RngStream rewire_rng = rng.derive("phase-rewire");
    for (std::size_t j = 0; j < phases; ++j) {
        if (phases == 1) {
            out.phase_graphs.push_back(base);
            continue;
        }
        const Graph induced = base.induced(active[j]);
        const Graph rewired = degree_preserving_rewire(induced, rewire_rate, rewire_rng);
        out.phase_graphs.push_back(rewired.induced(rewired.largest_component()));
    }

    out.plan.validate(universe.size());
    return out;
}

Scenario gen_contested3d(const Contested3dConfig& cfg, RngStream& rng) {
    const std::size_t n = cfg.n_uav + cfg.n_usv;
    if (n < 2) throw std::invalid_argument("gen_contested3d: need at least 2 vehicles");
    if (cfg.bound <= 0.0) throw std::invalid_argument("gen_contested3d: bounds must be positive");
    if (cfg.comm_range <= 0.0)
        throw std::invalid_argument("gen_contested3d: comm_range must be positive");
    if (cfg.uav_z_min > cfg.uav_z_max || cfg.uav_z_min < 0.0)
        throw std::invalid_argument("gen_contested3d: bad UAV altitude band");
    if (cfg.phases == 0) throw std::invalid_argument("gen_contested3d: need at least one phase");
    cfg.link.validate();

    RngStream pos_rng = rng.derive("positions");
    std::vector<Vec3> positions;
    positions.reserve(n);
    for (std::size_t u = 0; u < cfg.n_uav; ++u)
        positions.push_back({pos_rng.uniform(0.0, cfg.bound), pos_rng.uniform(0.0, cfg.bound),
                             pos_rng.uniform(cfg.uav_z_min, cfg.uav_z_max)});
    for (std::size_t s = 0; s < cfg.n_usv; ++s)
        positions.push_back({pos_rng.uniform(0.0, cfg.bound), pos_rng.uniform(0.0, cfg.bound),
                             0.0});

    struct PoolEdge {
        EdgeKey key;
        double length;
    };
    std::vector<PoolEdge> pool;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(positions[i], positions[j]);
            if (d <= cfg.comm_range)
                pool.push_back({EdgeKey(static_cast<NodeId>(i), static_cast<NodeId>(j)), d});
        }

    {
        Graph feasibility;
        for (std::size_t i = 0; i < n; ++i) feasibility.add_node(static_cast<NodeId>(i));
        for (const PoolEdge& e : pool) feasibility.add_edge(e.key.a, e.key.b);
        if (!feasibility.connected())
            throw InfeasibleError("gen_contested3d: feasible links cannot connect the fleet at "
                                  "comm range " +
                                  std::to_string(cfg.comm_range) +
                                  " m; increase the range or shrink the bounds");
    }

    std::stable_sort(pool.begin(), pool.end(), [](const PoolEdge& l, const PoolEdge& r) {
        return l.length < r.length;
    });
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::set<EdgeKey> chosen;
    std::vector<EdgeKey> remaining;
    for (const PoolEdge& e : pool) {
        const std::size_t ra = find(e.key.a), rb = find(e.key.b);
        if (ra == rb) {
            remaining.push_back(e.key);
        } else {
            parent[rb] = ra;
            chosen.insert(e.key);
        }
    }
    RngStream extra_rng = rng.derive("extra-edges");
    const std::size_t extras = static_cast<std::size_t>(std::llround(
        cfg.extra_edge_fraction * static_cast<double>(remaining.size())));
    for (std::size_t i : extra_rng.sample_indices(remaining.size(), extras))
        chosen.insert(remaining[i]);
    const std::vector<EdgeKey> initial(chosen.begin(), chosen.end());

    Scenario out;
    out.net = LayeredNetwork::build(cfg.n_uav, cfg.n_usv, cfg.x, cfg.y, positions, initial,
                                    initial, {}, cfg.z_types);
    out.link = cfg.link;
    out.comm_range = cfg.comm_range;

    std::vector<NodeId> vehicles(n);
    for (std::size_t i = 0; i < n; ++i) vehicles[i] = static_cast<NodeId>(i);
    std::vector<std::vector<NodeId>> active;
    if (cfg.phases == 1) {
        active.push_back(vehicles);
    } else {
        RngStream sets_rng = rng.derive("phase-sets");
        active = draw_active_sets(vehicles, cfg.phases, 0.5, 0.8, sets_rng);
    }
    RngStream param_rng = rng.derive("mission-plan");
    out.plan.eta = 0.01;
    for (std::size_t j = 0; j < cfg.phases; ++j) {
        Phase ph;
        ph.nodes = active[j];
        ph.duration_s = param_rng.uniform(120.0, 600.0);
        ph.beta = param_rng.uniform(0.5, 1.5);
        out.plan.phases.push_back(std::move(ph));
    }
    for (NodeId v : vehicles) out.plan.base_rates[v] = param_rng.uniform(1e-5, 2e-4);
    out.plan.validate(n);
    return out;
}

double PhaseImpact::reduction(std::size_t attacked, std::size_t measured) const {
    if (phi_before[measured] <= 0.0) return 0.0;
    return 1.0 - phi_after[attacked][measured] / phi_before[measured];
}

double PhaseImpact::global_reduction(std::size_t measured) const {
    if (phi_before[measured] <= 0.0) return 0.0;
    return 1.0 - phi_after_global[measured] / phi_before[measured];
}

std::string PhaseImpact::to_csv() const {
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return std::string(buf);
    };
    std::string out = "attack,phase,phi_before,phi_after,reduction\n";
    for (std::size_t a = 0; a < phi_after.size(); ++a)
        for (std::size_t k = 0; k < phi_before.size(); ++k)
            out += "phase_" + std::to_string(a + 1) + "," + std::to_string(k + 1) + "," +
                   fmt(phi_before[k]) + "," + fmt(phi_after[a][k]) + "," +
                   fmt(reduction(a, k)) + "\n";
    for (std::size_t k = 0; k < phi_before.size(); ++k)
        out += "global," + std::to_string(k + 1) + "," + fmt(phi_before[k]) + "," +
               fmt(phi_after_global[k]) + "," + fmt(global_reduction(k)) + "\n";
    return out;
}

namespace {

double phi_without(const Graph& g, const std::vector<NodeId>& victims) {
    Graph h = g;
    for (NodeId v : victims)
        if (h.has_node(v)) h.remove_node(v);
    if (h.node_count() == 0) return 0.0;
    return natural_connectivity(h);
}

}  // namespace

PhaseImpact phase_impact(const std::vector<Graph>& phase_graphs, const MissionPlan& plan,
                         double fraction, double r) {
    if (phase_graphs.size() != plan.phases.size())
        throw std::invalid_argument("phase_impact: one graph per phase required");
    if (phase_graphs.empty()) throw std::invalid_argument("phase_impact: no phases");
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("phase_impact: fraction must be in (0, 1]");

    const std::size_t ell = phase_graphs.size();
    PhaseImpact out;
    out.phi_before.resize(ell);
    out.phi_after.assign(ell, std::vector<double>(ell, 0.0));
    out.phi_after_global.resize(ell);
    out.victims.resize(ell);

    std::vector<CriticalityReport> reports;
    reports.reserve(ell);
    std::set<NodeId> universe;
    for (std::size_t j = 0; j < ell; ++j) {
        reports.push_back(surbi_rank(phase_graphs[j], r));
        out.phi_before[j] = natural_connectivity(phase_graphs[j]);
        for (NodeId v : phase_graphs[j].nodes()) universe.insert(v);
    }

    for (std::size_t a = 0; a < ell; ++a) {
        const std::size_t quota = static_cast<std::size_t>(std::ceil(
            fraction * static_cast<double>(phase_graphs[a].node_count())));
        const auto& ranking = reports[a].ranking;
        out.victims[a].assign(ranking.begin(),
                              ranking.begin() + std::min(quota, ranking.size()));
        for (std::size_t k = 0; k < ell; ++k)
            out.phi_after[a][k] = phi_without(phase_graphs[k], out.victims[a]);
    }

    std::vector<double> betas;
    for (const Phase& ph : plan.phases) betas.push_back(ph.beta);
    const GlobalImportance gi = global_importance(reports, betas);
    const std::size_t gq = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(universe.size())));
    out.victims_global.assign(gi.ranking.begin(),
                              gi.ranking.begin() + std::min(gq, gi.ranking.size()));
    for (std::size_t k = 0; k < ell; ++k)
        out.phi_after_global[k] = phi_without(phase_graphs[k], out.victims_global);
    return out;
}

}  // namespace swarmres
