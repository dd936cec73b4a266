#include "swarmres/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "swarmres/centrality.hpp"
#include "swarmres/criticality.hpp"
#include "swarmres/spectral.hpp"

namespace swarmres {
namespace {

std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double survivor_phi(const Graph& structure) {
    if (structure.empty()) return 0.0;
    return natural_connectivity(structure);
}

double survivor_lambda2(const Graph& structure) {
    if (structure.node_count() < 2) return 0.0;
    return algebraic_connectivity(structure);
}

// Score-descending, id-ascending removal order.
std::vector<NodeId> node_removal_order(const std::map<NodeId, double>& scores) {
    std::vector<std::pair<double, NodeId>> items;
    items.reserve(scores.size());
    for (const auto& [id, s] : scores) items.emplace_back(s, id);
    std::sort(items.begin(), items.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first > r.first;
        return l.second < r.second;
    });
    std::vector<NodeId> order;
    order.reserve(items.size());
    for (const auto& [s, id] : items) order.push_back(id);
    return order;
}

std::vector<EdgeKey> edge_removal_order(const std::map<EdgeKey, double>& scores) {
    std::vector<std::pair<double, EdgeKey>> items;
    items.reserve(scores.size());
    for (const auto& [e, s] : scores) items.emplace_back(s, e);
    std::sort(items.begin(), items.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first > r.first;
        return l.second < r.second;
    });
    std::vector<EdgeKey> order;
    order.reserve(items.size());
    for (const auto& [s, e] : items) order.push_back(e);
    return order;
}

}  // namespace

void AttackPlan::validate() const {
    if (!(fraction_per_step > 0.0) || fraction_per_step > 1.0)
        throw std::invalid_argument("AttackPlan: fraction_per_step must be in (0,1]");
    if (fraction_per_step * static_cast<double>(steps) > 1.0 + 1e-12)
        throw std::invalid_argument("AttackPlan: fraction_per_step * steps exceeds 1");
    if (surbi_r < 0.0 || surbi_r > 1.0)
        throw std::invalid_argument("AttackPlan: surbi_r must be in [0,1]");
    if (attack_phase == 0)
        throw std::invalid_argument("AttackPlan: attack_phase is 1-based");
}

ScoreTable compute_scores(const LayeredNetwork& net, ScoreSource source, double surbi_r) {
    ScoreTable table;
    const Graph& gs = net.structure();
    if (gs.empty()) return table;
    switch (source) {
        case ScoreSource::NI:
        case ScoreSource::EI: {
            table.nodes = surbi_rank(gs, surbi_r).ni_map();
            break;
        }
        case ScoreSource::KShell: {
            for (const auto& [v, shell] : k_shell(gs))
                table.nodes[v] = static_cast<double>(shell);
            break;
        }
        case ScoreSource::Katz: {
            const std::vector<double> katz = katz_centrality(gs);
            const auto& order = gs.nodes();
            for (std::size_t i = 0; i < order.size(); ++i) table.nodes[order[i]] = katz[i];
            break;
        }
    }
    // Edge attacks hit the comm layer; summing the endpoint node scores is
    // exactly the edge-importance rule when the node score is NI, and gives
    // the analogous baseline for k-shell / Katz.
    for (const EdgeKey& e : net.comm().edges())
        table.edges[e] = table.nodes.at(net.struct_twin(e.a)) +
                         table.nodes.at(net.struct_twin(e.b));
    return table;
}

LayeredNetwork attack_node(const LayeredNetwork& net, NodeId vehicle) {
    if (!net.structure().has_node(vehicle))
        throw std::invalid_argument("attack_node: unknown vehicle " + std::to_string(vehicle));
    LayeredNetwork out = net;
    out.remove_vehicle(vehicle);
    out.validate();
    return out;
}

LayeredNetwork attack_edges(const LayeredNetwork& net, const std::vector<EdgeKey>& edges) {
    std::set<EdgeKey> unique(edges.begin(), edges.end());
    for (const EdgeKey& e : unique)
        if (!net.comm().has_edge(e.a, e.b))
            throw std::invalid_argument("attack_edges: edge " + std::to_string(e.a) + "-" +
                                        std::to_string(e.b) + " is not in the comm layer");
    LayeredNetwork out = net;
    std::set<NodeId> suspects;
    for (const EdgeKey& e : unique) {
        out.remove_comm_edge(e.a, e.b);
        suspects.insert(e.a);
        suspects.insert(e.b);
    }
    // A vehicle whose comm connectivity is fully lost fails outright. The
    // dying comm node is already isolated, so the cascade cannot orphan
    // anyone else; one sweep over the touched endpoints suffices.
    for (NodeId c : suspects) {
        if (!out.comm().has_node(c) || out.comm().degree(c) != 0) continue;
        out.remove_vehicle(out.struct_twin(c));
    }
    out.validate();
    return out;
}

std::vector<double> AttackTrace::phi_curve() const {
    std::vector<double> curve;
    curve.reserve(steps.size());
    for (const AttackStep& s : steps) curve.push_back(s.phi);
    return curve;
}

std::string AttackTrace::to_csv() const {
    std::string out = "step,removed_ids,phi,lambda2\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const AttackStep& s = steps[i];
        out += std::to_string(i);
        out += ',';
        bool first = true;
        for (const EdgeKey& e : s.removed_edges) {
            if (!first) out += ';';
            out += std::to_string(e.a) + "-" + std::to_string(e.b);
            first = false;
        }
        for (NodeId v : s.removed_nodes) {
            if (!first) out += ';';
            out += std::to_string(v);
            first = false;
        }
        out += ',';
        out += fmt_g12(s.phi);
        out += ',';
        out += fmt_g12(s.lambda2);
        out += '\n';
    }
    return out;
}

AttackTrace run_campaign(const LayeredNetwork& net, const AttackPlan& plan,
                         const ScoreTable& scores) {
    plan.validate();
    const bool on_nodes = plan.target == AttackTarget::Nodes;
    if (plan.mode == AttackMode::Targeted) {
        if (on_nodes) {
            for (NodeId v : net.structure().nodes())
                if (scores.nodes.count(v) == 0)
                    throw std::invalid_argument("run_campaign: node " + std::to_string(v) +
                                                " has no score");
        } else {
            for (const EdgeKey& e : net.comm().edges())
                if (scores.edges.count(e) == 0)
                    throw std::invalid_argument("run_campaign: edge " + std::to_string(e.a) +
                                                "-" + std::to_string(e.b) + " has no score");
        }
    }

    AttackTrace trace;
    AttackStep intact;
    intact.phi = survivor_phi(net.structure());
    intact.lambda2 = survivor_lambda2(net.structure());
    trace.steps.push_back(intact);

    const std::size_t n0 = on_nodes ? net.structure().node_count() : net.comm().edge_count();
    const std::size_t quota = static_cast<std::size_t>(
        std::ceil(plan.fraction_per_step * static_cast<double>(n0)));

    RngStream rng = RngStream(plan.seed).derive("attack-campaign");
    LayeredNetwork cur = net;
    std::vector<NodeId> node_order = node_removal_order(scores.nodes);
    std::vector<EdgeKey> edge_order = edge_removal_order(scores.edges);
    std::size_t cursor = 0;

    for (std::size_t s = 0; s < plan.steps && quota > 0; ++s) {
        if (plan.mode == AttackMode::Targeted && plan.rerank && s > 0) {
            const ScoreTable fresh = compute_scores(cur, plan.score_source, plan.surbi_r);
            node_order = node_removal_order(fresh.nodes);
            edge_order = edge_removal_order(fresh.edges);
            cursor = 0;
        }
        AttackStep step;
        if (on_nodes) {
            std::vector<NodeId> victims;
            if (plan.mode == AttackMode::Targeted) {
                while (victims.size() < quota && cursor < node_order.size()) {
                    NodeId v = node_order[cursor++];
                    if (cur.structure().has_node(v)) victims.push_back(v);
                }
            } else {
                std::vector<NodeId> pool = cur.structure().nodes();
                std::sort(pool.begin(), pool.end());
                for (std::size_t idx : rng.sample_indices(pool.size(),
                                                          std::min(quota, pool.size())))
                    victims.push_back(pool[idx]);
            }
            if (victims.empty()) break;
            for (NodeId v : victims) cur = attack_node(cur, v);
            step.removed_nodes = victims;
        } else {
            std::vector<EdgeKey> victims;
            if (plan.mode == AttackMode::Targeted) {
                while (victims.size() < quota && cursor < edge_order.size()) {
                    EdgeKey e = edge_order[cursor++];
                    if (cur.comm().has_edge(e.a, e.b)) victims.push_back(e);
                }
            } else {
                std::vector<EdgeKey> pool = cur.comm().edges();
                for (std::size_t idx : rng.sample_indices(pool.size(),
                                                          std::min(quota, pool.size())))
                    victims.push_back(pool[idx]);
            }
            if (victims.empty()) break;
            const std::vector<NodeId> before = cur.structure().nodes();
            cur = attack_edges(cur, victims);
            step.removed_edges = victims;
            for (NodeId v : before)  // vehicles lost to the isolation cascade
                if (!cur.structure().has_node(v)) step.removed_nodes.push_back(v);
        }
        step.phi = survivor_phi(cur.structure());
        step.lambda2 = survivor_lambda2(cur.structure());
        trace.steps.push_back(std::move(step));
    }
    trace.compromised = std::move(cur);
    return trace;
}

AttackTrace run_campaign(const LayeredNetwork& net, const AttackPlan& plan) {
    if (plan.mode == AttackMode::Random) return run_campaign(net, plan, ScoreTable{});
    return run_campaign(net, plan, compute_scores(net, plan.score_source, plan.surbi_r));
}

double decay_auc(const std::vector<double>& phi_curve, double fraction_per_step) {
    if (phi_curve.empty() || fraction_per_step <= 0.0) return 0.0;
    const double phi0 = phi_curve.front();
    if (phi0 <= 0.0) return 0.0;
    if (phi_curve.size() == 1) return 1.0;  // nothing removed, no decay seen
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < phi_curve.size(); ++i)
        area += 0.5 * (phi_curve[i] + phi_curve[i + 1]) / phi0 * fraction_per_step;
    const double span = fraction_per_step * static_cast<double>(phi_curve.size() - 1);
    return area / span;
}

void SirConfig::validate() const {
    if (infection_prob < 0.0 || infection_prob > 1.0)
        throw std::invalid_argument("SirConfig: infection_prob must be in [0,1]");
    if (recovery_prob < 0.0 || recovery_prob > 1.0)
        throw std::invalid_argument("SirConfig: recovery_prob must be in [0,1]");
    if (repetitions == 0) throw std::invalid_argument("SirConfig: repetitions must be positive");
    std::set<NodeId> seen;
    for (const auto& group : groups)
        for (NodeId v : group)
            if (!seen.insert(v).second)
                throw std::invalid_argument("SirConfig: seed groups must be disjoint");
}

SirRun sir_simulate(const Graph& g, const SirConfig& cfg, std::span<const NodeId> seed_set,
                    RngStream& rng) {
    cfg.validate();
    if (seed_set.empty()) throw std::invalid_argument("sir_simulate: empty seed set");
    enum class State : unsigned char { S, I, R };
    std::map<NodeId, State> state;
    for (NodeId v : g.nodes()) state[v] = State::S;
    std::set<NodeId> infected;
    for (NodeId v : seed_set) {
        if (!g.has_node(v))
            throw std::invalid_argument("sir_simulate: seed " + std::to_string(v) +
                                        " is not a node");
        state.at(v) = State::I;
        infected.insert(v);
    }

    SirRun run;
    run.infected_per_tick.push_back(infected.size());
    for (std::size_t t = 1; t <= cfg.max_ticks && !infected.empty(); ++t) {
        // Synchronous update: this tick's infections come only from nodes
        // already infectious when the tick began.
        std::set<NodeId> newly;
        std::size_t open_contacts = 0;
        for (NodeId u : infected) {
            for (NodeId w : g.neighbors(u)) {
                if (state.at(w) != State::S || newly.count(w) != 0) continue;
                ++open_contacts;
                if (rng.bernoulli(cfg.infection_prob)) newly.insert(w);
            }
        }
        std::vector<NodeId> recovered;
        for (NodeId u : infected)
            if (rng.bernoulli(cfg.recovery_prob)) recovered.push_back(u);
        for (NodeId u : recovered) {
            state.at(u) = State::R;
            infected.erase(u);
        }
        for (NodeId w : newly) {
            state.at(w) = State::I;
            infected.insert(w);
        }
        run.infected_per_tick.push_back(infected.size());
        // Without recovery the process can reach a fixed point before
        // max_ticks; stop once no transition is possible any more.
        if (cfg.recovery_prob == 0.0 &&
            (open_contacts == 0 || cfg.infection_prob == 0.0))
            break;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < run.infected_per_tick.size(); ++i)
        if (run.infected_per_tick[i] > run.infected_per_tick[best]) best = i;
    run.peak_tick = best;
    run.peak_infected = run.infected_per_tick[best];
    return run;
}

std::string CalibrationResult::to_csv() const {
    std::string out = "r,group,mean_time_to_peak,monotone_ok\n";
    for (const CalibrationRow& row : rows) {
        out += fmt_g12(row.r);
        out += ',';
        out += std::to_string(row.group);
        out += ',';
        out += fmt_g12(row.mean_time_to_peak);
        out += ',';
        out += row.monotone_ok ? '1' : '0';
        out += '\n';
    }
    return out;
}

CalibrationResult calibrate_r(const Graph& g, const std::vector<double>& r_grid,
                              std::size_t group_size, std::size_t n_groups,
                              const SirConfig& cfg, RngStream& rng) {
    cfg.validate();
    if (r_grid.empty()) throw std::invalid_argument("calibrate_r: empty r grid");
    for (double r : r_grid)
        if (r < 0.0 || r > 1.0)
            throw std::invalid_argument("calibrate_r: every r must be in [0,1]");
    if (group_size == 0 || n_groups == 0)
        throw std::invalid_argument("calibrate_r: group_size and n_groups must be positive");
    if (g.node_count() < group_size * n_groups)
        throw std::invalid_argument("calibrate_r: graph smaller than group_size * n_groups");

    // Raw BI/SI do not depend on r, so the grid shares one computation.
    const std::vector<CriticalityReport> reports = surbi_rank_grid(g, r_grid);

    CalibrationResult result;
    std::vector<std::vector<double>> means(r_grid.size());
    std::vector<std::size_t> violations(r_grid.size(), 0);
    for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
        const std::vector<NodeId>& ranking = reports[ri].ranking;
        for (std::size_t gi = 0; gi < n_groups; ++gi) {
            const std::vector<NodeId> seeds(ranking.begin() + gi * group_size,
                                            ranking.begin() + (gi + 1) * group_size);
            double total = 0.0;
            for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
                RngStream stream = rng.derive(
                    "sir-calibration", (ri * n_groups + gi) * cfg.repetitions + rep);
                total += static_cast<double>(sir_simulate(g, cfg, seeds, stream).peak_tick);
            }
            means[ri].push_back(total / static_cast<double>(cfg.repetitions));
        }
        for (std::size_t gi = 0; gi + 1 < n_groups; ++gi)
            if (means[ri][gi + 1] < means[ri][gi]) ++violations[ri];
    }

    // Prefer monotone r values with the fastest Group-1 outbreak; fall back,
    // flagged, to the fewest monotonicity violations.
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
        if (violations[ri] != 0) continue;
        if (best == std::numeric_limits<std::size_t>::max() ||
            means[ri][0] < means[best][0] ||
            (means[ri][0] == means[best][0] && r_grid[ri] < r_grid[best]))
            best = ri;
    }
    if (best == std::numeric_limits<std::size_t>::max()) {
        result.flagged = true;
        for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
            if (best == std::numeric_limits<std::size_t>::max() ||
                violations[ri] < violations[best] ||
                (violations[ri] == violations[best] &&
                 (means[ri][0] < means[best][0] ||
                  (means[ri][0] == means[best][0] && r_grid[ri] < r_grid[best]))))
                best = ri;
        }
    }
    result.r_star = r_grid[best];

    for (std::size_t ri = 0; ri < r_grid.size(); ++ri)
        for (std::size_t gi = 0; gi < n_groups; ++gi)
            result.rows.push_back({r_grid[ri], gi + 1, means[ri][gi], violations[ri] == 0});
    return result;
}

}  // namespace swarmres
