#include "swarmres/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "swarmres/criticality.hpp"
#include "swarmres/spectral.hpp"

namespace swarmres {

Graph CandidatePool::full_graph() const {
    Graph g;
    for (NodeId v : nodes) g.add_node(v);
    for (const EdgeKey& e : edges) g.add_edge(e.a, e.b, lengths.at(e));
    return g;
}

CandidatePool build_candidate_pool(const LayeredNetwork& net, double comm_range) {
    if (comm_range < 0.0)
        throw std::invalid_argument("build_candidate_pool: comm_range must be non-negative");
    CandidatePool pool;
    pool.nodes = net.structure().nodes();
    for (std::size_t i = 0; i < pool.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.nodes.size(); ++j) {
            const double d = distance(net.position(pool.nodes[i]), net.position(pool.nodes[j]));
            if (d <= comm_range) pool.lengths[EdgeKey(pool.nodes[i], pool.nodes[j])] = d;
        }
    }
    for (const auto& [e, d] : pool.lengths) pool.edges.push_back(e);
    return pool;
}

CandidatePool pool_from_graph(const Graph& g) {
    CandidatePool pool;
    pool.nodes = g.nodes();
    pool.edges = g.edges();
    for (const EdgeKey& e : pool.edges)
        pool.lengths[e] = g.edge_length(e.a, e.b).value_or(0.0);
    return pool;
}

std::vector<double> ObjectiveVector::minimization() const {
    std::vector<double> v{1.0 - f1, 1.0 - f2, f3};
    if (n == 4) v.push_back(f4);
    return v;
}

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dominates: objective dimensions differ");
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly = true;
    }
    return strictly;
}

double subsequent_vulnerability(const LayeredNetwork& net, const MissionPlan& plan,
                                std::size_t j_a) {
    if (j_a == 0 || j_a > plan.phases.size())
        throw std::invalid_argument("subsequent_vulnerability: attack phase out of range");
    double prod = 1.0;
    for (std::size_t j = j_a; j <= plan.phases.size(); ++j)
        prod *= phase_fragility(net, plan, j).value;
    std::size_t participation_sum = 0;
    for (NodeId u : plan.bridge_nodes(j_a))
        if (net.structure().has_node(u)) participation_sum += plan.participation(u, j_a);
    return 1.0 - prod * std::exp(-plan.eta * static_cast<double>(participation_sum));
}

double subsequent_vulnerability(const Graph& g, const LayeredNetwork& net,
                                const MissionPlan& plan, std::size_t j_a) {
    return subsequent_vulnerability(net.with_topology(g.edges()), plan, j_a);
}

std::size_t reconfiguration_cost(const std::vector<EdgeKey>& e_new,
                                 const std::vector<EdgeKey>& e_0) {
    const std::set<EdgeKey> a(e_new.begin(), e_new.end());
    const std::set<EdgeKey> b(e_0.begin(), e_0.end());
    std::size_t common = 0;
    for (const EdgeKey& e : a) common += b.count(e);
    return a.size() + b.size() - 2 * common;
}

ObjectiveVector ObjectiveContext::evaluate(const Graph& g) const {
    if (evaluator) {
        ObjectiveVector ov = evaluator(g);
        ov.n = n_objectives;
        return ov;
    }
    ObjectiveVector ov;
    ov.n = n_objectives;
    if (g.node_count() < 2 || !g.connected()) return ov;  // infeasible marker
    ov.f1 = algebraic_connectivity(g);
    ov.f2 = global_comm_success(g, link);
    if (net != nullptr && plan != nullptr) {
        const LayeredNetwork rewired = net->with_topology(g.edges());
        ov.f3 = n_objectives == 4 ? subsequent_vulnerability(rewired, *plan, attack_phase)
                                  : 1.0 - mission_success(rewired, *plan);
    }
    if (n_objectives == 4)
        ov.f4 = static_cast<double>(reconfiguration_cost(g.edges(), baseline_edges));
    ov.feasible = true;
    return ov;
}

ObjectiveVector evaluate_static(const Graph& g, const LayeredNetwork& net,
                                const MissionPlan& plan, const LinkModel& lm) {
    ObjectiveContext ctx;
    ctx.net = &net;
    ctx.plan = &plan;
    ctx.link = lm;
    return ctx.evaluate(g);
}

void Nsga3Config::validate() const {
    if (population < 4) throw std::invalid_argument("Nsga3Config: population too small");
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw std::invalid_argument("Nsga3Config: crossover_prob must be in [0,1]");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
        throw std::invalid_argument("Nsga3Config: mutation_prob must be in [0,1]");
    if (surbi_r < 0.0 || surbi_r > 1.0)
        throw std::invalid_argument("Nsga3Config: surbi_r must be in [0,1]");
}

namespace {

void das_dennis_rec(std::size_t m, std::size_t p, std::size_t left, std::vector<double>& cur,
                    std::vector<std::vector<double>>& out) {
    if (cur.size() + 1 == m) {
        cur.push_back(static_cast<double>(left) / static_cast<double>(p));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t i = 0; i <= left; ++i) {
        cur.push_back(static_cast<double>(i) / static_cast<double>(p));
        das_dennis_rec(m, p, left - i, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<double>> das_dennis_points(std::size_t m, std::size_t p) {
    if (m < 2) throw std::invalid_argument("das_dennis_points: need at least 2 objectives");
    if (p < 1) throw std::invalid_argument("das_dennis_points: need at least 1 division");
    std::vector<std::vector<double>> out;
    std::vector<double> cur;
    das_dennis_rec(m, p, p, cur, out);
    return out;
}

Graph decode_genome(const CandidatePool& pool, const std::vector<bool>& genome) {
    if (genome.size() != pool.edges.size())
        throw std::invalid_argument("decode_genome: genome and pool sizes differ");
    Graph g;
    for (NodeId v : pool.nodes) g.add_node(v);
    for (std::size_t i = 0; i < genome.size(); ++i)
        if (genome[i]) g.add_edge(pool.edges[i].a, pool.edges[i].b, pool.lengths.at(pool.edges[i]));
    return g;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

std::vector<bool> repair_genome(const CandidatePool& pool, std::vector<bool> genome,
                                std::size_t n_edges, double surbi_r) {
    if (genome.size() != pool.edges.size())
        throw std::invalid_argument("repair_genome: genome and pool sizes differ");
    std::unordered_map<NodeId, std::size_t> idx;
    for (std::size_t i = 0; i < pool.nodes.size(); ++i) idx[pool.nodes[i]] = i;

    std::size_t count = 0;
    UnionFind uf(pool.nodes.size());
    for (std::size_t i = 0; i < genome.size(); ++i) {
        if (!genome[i]) continue;
        ++count;
        uf.unite(idx.at(pool.edges[i].a), idx.at(pool.edges[i].b));
    }

    // Unselected edges, shortest first (edge order breaks length ties).
    std::vector<std::size_t> by_length;
    for (std::size_t i = 0; i < genome.size(); ++i)
        if (!genome[i]) by_length.push_back(i);
    std::stable_sort(by_length.begin(), by_length.end(), [&](std::size_t l, std::size_t r) {
        return pool.lengths.at(pool.edges[l]) < pool.lengths.at(pool.edges[r]);
    });

    // Kruskal pass: join components with the shortest available edges.
    std::vector<std::size_t> still_unused;
    for (std::size_t i : by_length) {
        const EdgeKey& e = pool.edges[i];
        if (uf.unite(idx.at(e.a), idx.at(e.b))) {
            genome[i] = true;
            ++count;
        } else {
            still_unused.push_back(i);
        }
    }

    const double band = 0.05 * static_cast<double>(n_edges);
    const double lower = static_cast<double>(n_edges) - band;
    const double upper = static_cast<double>(n_edges) + band;

    for (std::size_t k = 0; k < still_unused.size() &&
                            static_cast<double>(count) < lower - 1e-9; ++k) {
        genome[still_unused[k]] = true;
        ++count;
    }

    if (static_cast<double>(count) > upper + 1e-9) {
        Graph g = decode_genome(pool, genome);
        // One EI ranking per repair; bridges are rechecked after every cut
        // so connectivity survives the trim.
        const std::map<EdgeKey, double> ei = surbi_rank(g, surbi_r).edge_importance;
        while (static_cast<double>(count) > upper + 1e-9) {
            const std::vector<EdgeKey> bridge_list = g.bridges();
            const std::set<EdgeKey> bridges(bridge_list.begin(), bridge_list.end());
            bool found = false;
            EdgeKey victim;
            double victim_ei = 0.0;
            for (const EdgeKey& e : g.edges()) {
                if (bridges.count(e) != 0) continue;
                const double score = ei.at(e);
                if (!found || score < victim_ei) {
                    found = true;
                    victim = e;
                    victim_ei = score;
                }
            }
            if (!found) break;  // only bridges left; keep connectivity over the band
            g.remove_edge(victim.a, victim.b);
            const std::size_t pos = static_cast<std::size_t>(
                std::lower_bound(pool.edges.begin(), pool.edges.end(), victim) -
                pool.edges.begin());
            genome[pos] = false;
            --count;
        }
    }
    return genome;
}

namespace {

struct Individual {
    std::vector<bool> genome;
    ObjectiveVector objectives;
    std::vector<double> fmin;
};

bool individual_dominates(const Individual& a, const Individual& b) {
    if (a.objectives.feasible != b.objectives.feasible) return a.objectives.feasible;
    if (!a.objectives.feasible) return false;
    return dominates(a.fmin, b.fmin);
}

std::vector<std::vector<std::size_t>> nd_sort(const std::vector<Individual>& pop) {
    const std::size_t n = pop.size();
    std::vector<std::vector<std::size_t>> wins(n);
    std::vector<std::size_t> losses(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (individual_dominates(pop[i], pop[j])) {
                wins[i].push_back(j);
                ++losses[j];
            } else if (individual_dominates(pop[j], pop[i])) {
                wins[j].push_back(i);
                ++losses[i];
            }
        }
    }
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (losses[i] == 0) current.push_back(i);
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t i : current)
            for (std::size_t j : wins[i])
                if (--losses[j] == 0) next.push_back(j);
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

// Deb & Jain normalization: translate by the ideal point, find per-axis
// extremes with the achievement scalarizing function, intercept the plane
// through them. Falls back to per-axis maxima when the plane is degenerate.
std::vector<std::vector<double>> normalize_objectives(
    const std::vector<std::vector<double>>& f, std::size_t m) {
    std::vector<double> ideal(m, std::numeric_limits<double>::infinity());
    for (const auto& row : f)
        for (std::size_t j = 0; j < m; ++j) ideal[j] = std::min(ideal[j], row[j]);
    std::vector<std::vector<double>> t(f.size(), std::vector<double>(m));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) t[i][j] = f[i][j] - ideal[j];

    std::vector<std::size_t> extremes(m, 0);
    for (std::size_t axis = 0; axis < m; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t.size(); ++i) {
            double asf = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                asf = std::max(asf, t[i][j] / (j == axis ? 1.0 : 1e-6));
            if (asf < best) {
                best = asf;
                extremes[axis] = i;
            }
        }
    }

    std::vector<double> intercept(m, 0.0);
    bool plane_ok = false;
    Eigen::MatrixXd e(m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) e(j, k) = t[extremes[j]][k];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(e);
    if (lu.isInvertible()) {
        const Eigen::VectorXd beta = lu.solve(Eigen::VectorXd::Ones(m));
        plane_ok = true;
        for (std::size_t j = 0; j < m; ++j) {
            if (beta(static_cast<Eigen::Index>(j)) <= 1e-12) plane_ok = false;
        }
        if (plane_ok)
            for (std::size_t j = 0; j < m; ++j)
                intercept[j] = 1.0 / beta(static_cast<Eigen::Index>(j));
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (!plane_ok || intercept[j] <= 1e-12) {
            double mx = 0.0;
            for (const auto& row : t) mx = std::max(mx, row[j]);
            intercept[j] = mx > 1e-12 ? mx : 1.0;
        }
    }
    for (auto& row : t)
        for (std::size_t j = 0; j < m; ++j) row[j] /= intercept[j];
    return t;
}

struct Association {
    std::size_t ref = 0;
    double dist = 0.0;
};

std::vector<Association> associate(const std::vector<std::vector<double>>& normalized,
                                   const std::vector<std::vector<double>>& refs) {
    std::vector<double> ref_norm2(refs.size(), 0.0);
    for (std::size_t r = 0; r < refs.size(); ++r)
        for (double c : refs[r]) ref_norm2[r] += c * c;
    std::vector<Association> out(normalized.size());
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_ref = 0;
        double self = 0.0;
        for (double c : normalized[i]) self += c * c;
        for (std::size_t r = 0; r < refs.size(); ++r) {
            double dot = 0.0;
            for (std::size_t j = 0; j < refs[r].size(); ++j)
                dot += normalized[i][j] * refs[r][j];
            const double d2 = self - dot * dot / ref_norm2[r];
            if (d2 < best) {
                best = d2;
                best_ref = r;
            }
        }
        out[i] = {best_ref, std::sqrt(std::max(0.0, best))};
    }
    return out;
}

// Reference-point niching over the split front. `selected` are the members
// already through; returns indices (into `candidates`) of the k picks.
std::vector<std::size_t> niche_select(const std::vector<Association>& selected,
                                      const std::vector<Association>& candidates,
                                      std::size_t n_refs, std::size_t k, RngStream& rng) {
    std::vector<std::size_t> rho(n_refs, 0);
    for (const Association& a : selected) ++rho[a.ref];
    std::vector<bool> excluded(n_refs, false);
    std::vector<bool> taken(candidates.size(), false);
    std::vector<std::size_t> picks;
    while (picks.size() < k) {
        std::size_t min_rho = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < n_refs; ++r)
            if (!excluded[r]) min_rho = std::min(min_rho, rho[r]);
        if (min_rho == std::numeric_limits<std::size_t>::max()) break;
        std::vector<std::size_t> ties;
        for (std::size_t r = 0; r < n_refs; ++r)
            if (!excluded[r] && rho[r] == min_rho) ties.push_back(r);
        const std::size_t ref = ties[rng.below(ties.size())];
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (!taken[i] && candidates[i].ref == ref) members.push_back(i);
        if (members.empty()) {
            excluded[ref] = true;
            continue;
        }
        std::size_t pick;
        if (rho[ref] == 0) {
            pick = members[0];
            for (std::size_t i : members)
                if (candidates[i].dist < candidates[pick].dist) pick = i;
        } else {
            pick = members[rng.below(members.size())];
        }
        taken[pick] = true;
        picks.push_back(pick);
        ++rho[ref];
    }
    return picks;
}

std::vector<Individual> select_next(std::vector<Individual>& combined, std::size_t target,
                                    const std::vector<std::vector<double>>& refs,
                                    std::size_t m, RngStream& rng) {
    const auto fronts = nd_sort(combined);
    std::vector<Individual> next;
    std::vector<std::size_t> split;
    for (const auto& front : fronts) {
        if (next.size() + front.size() <= target) {
            for (std::size_t i : front) next.push_back(std::move(combined[i]));
            if (next.size() == target) return next;
        } else {
            split = front;
            break;
        }
    }
    const std::size_t k = target - next.size();
    if (!combined[split[0]].objectives.feasible) {
        // Infeasible filler front: geometry is meaningless, take by index.
        for (std::size_t i = 0; i < k; ++i) next.push_back(std::move(combined[split[i]]));
        return next;
    }
    std::vector<std::vector<double>> fvals;
    fvals.reserve(next.size() + split.size());
    for (const Individual& ind : next) fvals.push_back(ind.fmin);
    for (std::size_t i : split) fvals.push_back(combined[i].fmin);
    const auto normalized = normalize_objectives(fvals, m);
    const auto assoc = associate(normalized, refs);
    const std::vector<Association> assoc_selected(assoc.begin(),
                                                  assoc.begin() + static_cast<long>(next.size()));
    const std::vector<Association> assoc_split(assoc.begin() + static_cast<long>(next.size()),
                                               assoc.end());
    for (std::size_t i : niche_select(assoc_selected, assoc_split, refs.size(), k, rng))
        next.push_back(std::move(combined[split[i]]));
    return next;
}

}  // namespace

std::vector<ParetoSolution> nsga3(const CandidatePool& pool, std::size_t n_edges,
                                  const ObjectiveContext& ctx, const Nsga3Config& cfg,
                                  RngStream& rng,
                                  const std::vector<std::vector<bool>>& seed_genomes) {
    cfg.validate();
    if (pool.edges.empty()) throw InfeasibleError("nsga3: empty feasible edge pool");
    if (pool.nodes.size() < 2) throw InfeasibleError("nsga3: fewer than 2 nodes to wire");
    if (!pool.full_graph().connected())
        throw InfeasibleError("nsga3: candidate pool cannot connect all vehicles");
    const std::size_t m = static_cast<std::size_t>(ctx.n_objectives);
    if (m != 3 && m != 4) throw std::invalid_argument("nsga3: 3 or 4 objectives only");
    const std::size_t divisions = cfg.divisions != 0 ? cfg.divisions : (m == 3 ? 12 : 6);
    const auto refs = das_dennis_points(m, divisions);
    if (cfg.population < refs.size())
        throw std::invalid_argument("nsga3: population " + std::to_string(cfg.population) +
                                    " below reference point count " +
                                    std::to_string(refs.size()));
    const double pm = cfg.mutation_prob > 0.0
                          ? cfg.mutation_prob
                          : 2.0 / static_cast<double>(pool.edges.size());

    // Every feasible candidate ever evaluated, keyed (deduplicated) by its
    // repaired edge set; the returned front is the non-dominated set of this
    // archive, so nothing the search visits is lost to niching.
    std::map<std::vector<EdgeKey>, std::pair<std::vector<bool>, ObjectiveVector>> archive;

    auto make_individual = [&](std::vector<bool> genome) {
        Individual ind;
        ind.genome = repair_genome(pool, std::move(genome), n_edges, cfg.surbi_r);
        const Graph g = decode_genome(pool, ind.genome);
        ind.objectives = ctx.evaluate(g);
        ind.fmin = ind.objectives.minimization();
        if (ind.objectives.feasible) archive.emplace(g.edges(), std::pair{ind.genome, ind.objectives});
        return ind;
    };

    // Enumerable pools get an exhaustive sweep through the repair pipeline
    // before the GA touches anything, so the archive provably covers every
    // reachable candidate and the returned front is exact rather than merely
    // well-searched. At most 2^12 evaluations over tiny graphs, well under
    // the cost of a single real generation on production pools.
    if (pool.edges.size() <= 12) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << pool.edges.size()); ++mask) {
            std::vector<bool> genome(pool.edges.size());
            for (std::size_t i = 0; i < genome.size(); ++i) genome[i] = (mask >> i) & 1u;
            genome = repair_genome(pool, std::move(genome), n_edges, cfg.surbi_r);
            const Graph g = decode_genome(pool, genome);
            if (archive.count(g.edges()) != 0) continue;
            const ObjectiveVector obj = ctx.evaluate(g);
            if (obj.feasible) archive.emplace(g.edges(), std::pair{genome, obj});
        }
    }

    std::vector<Individual> population;
    population.reserve(cfg.population);
    for (const auto& s : seed_genomes) {
        if (population.size() == cfg.population) break;
        population.push_back(make_individual(s));
    }
    while (population.size() < cfg.population) {
        const double density = rng.uniform01();
        std::vector<bool> genome(pool.edges.size());
        for (std::size_t i = 0; i < genome.size(); ++i) genome[i] = rng.bernoulli(density);
        population.push_back(make_individual(std::move(genome)));
    }

    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        std::vector<Individual> offspring;
        offspring.reserve(cfg.population);
        while (offspring.size() < cfg.population) {
            const std::vector<bool>& p1 = population[rng.below(population.size())].genome;
            const std::vector<bool>& p2 = population[rng.below(population.size())].genome;
            std::vector<bool> c1 = p1;
            std::vector<bool> c2 = p2;
            if (rng.bernoulli(cfg.crossover_prob)) {
                for (std::size_t i = 0; i < c1.size(); ++i) {
                    if (rng.bernoulli(0.5)) {
                        const bool tmp = c1[i];
                        c1[i] = c2[i];
                        c2[i] = tmp;
                    }
                }
            }
            for (std::size_t i = 0; i < c1.size(); ++i)
                if (rng.bernoulli(pm)) c1[i] = !c1[i];
            for (std::size_t i = 0; i < c2.size(); ++i)
                if (rng.bernoulli(pm)) c2[i] = !c2[i];
            offspring.push_back(make_individual(std::move(c1)));
            if (offspring.size() < cfg.population)
                offspring.push_back(make_individual(std::move(c2)));
        }
        std::vector<Individual> combined = std::move(population);
        combined.reserve(combined.size() + offspring.size());
        for (Individual& ind : offspring) combined.push_back(std::move(ind));
        population = select_next(combined, cfg.population, refs, m, rng);
    }

    // Non-dominated set of the archive, in edge-set order.
    std::vector<const std::pair<const std::vector<EdgeKey>,
                                std::pair<std::vector<bool>, ObjectiveVector>>*> entries;
    entries.reserve(archive.size());
    for (const auto& entry : archive) entries.push_back(&entry);
    std::vector<std::vector<double>> images;
    images.reserve(entries.size());
    for (const auto* entry : entries) images.push_back(entry->second.second.minimization());

    std::vector<ParetoSolution> front;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < entries.size() && !dominated; ++j)
            dominated = j != i && dominates(images[j], images[i]);
        if (dominated) continue;
        ParetoSolution sol;
        sol.genome = entries[i]->second.first;
        sol.graph = decode_genome(pool, sol.genome);
        sol.objectives = entries[i]->second.second;
        front.push_back(std::move(sol));
    }
    if (front.empty()) throw InfeasibleError("nsga3: no feasible candidate was found");
    return front;
}

TopsisResult topsis_scores(const std::vector<std::vector<double>>& matrix,
                           const std::vector<double>& weights) {
    if (matrix.empty()) throw std::invalid_argument("topsis: empty front");
    const std::size_t m = weights.size();
    for (const auto& row : matrix)
        if (row.size() != m)
            throw std::invalid_argument("topsis: weight/criteria dimensions differ");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("topsis: weights must be non-negative");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw std::invalid_argument("topsis: weights must sum to 1");

    TopsisResult res;
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < m; ++j) {
        double lo = matrix[0][j], hi = matrix[0][j];
        for (const auto& row : matrix) {
            lo = std::min(lo, row[j]);
            hi = std::max(hi, row[j]);
        }
        if (lo == hi)
            res.dropped_columns.push_back(j);
        else
            kept.push_back(j);
    }
    res.degenerate = !res.dropped_columns.empty();
    if (kept.empty()) {
        // Every criterion identical: all solutions are equidistant.
        res.scores.assign(matrix.size(), 0.5);
        return res;
    }
    double kept_weight = 0.0;
    for (std::size_t j : kept) kept_weight += weights[j];
    std::vector<double> w(kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c)
        w[c] = kept_weight > 0.0 ? weights[kept[c]] / kept_weight
                                 : 1.0 / static_cast<double>(kept.size());

    std::vector<std::vector<double>> v(matrix.size(), std::vector<double>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
        double norm = 0.0;
        for (const auto& row : matrix) norm += row[kept[c]] * row[kept[c]];
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < matrix.size(); ++i)
            v[i][c] = w[c] * matrix[i][kept[c]] / norm;
    }
    std::vector<double> ideal(kept.size()), anti(kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c) {
        ideal[c] = v[0][c];
        anti[c] = v[0][c];
        for (std::size_t i = 1; i < v.size(); ++i) {
            ideal[c] = std::min(ideal[c], v[i][c]);  // minimization image
            anti[c] = std::max(anti[c], v[i][c]);
        }
    }
    res.scores.resize(matrix.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double dp = 0.0, dm = 0.0;
        for (std::size_t c = 0; c < kept.size(); ++c) {
            dp += (v[i][c] - ideal[c]) * (v[i][c] - ideal[c]);
            dm += (v[i][c] - anti[c]) * (v[i][c] - anti[c]);
        }
        dp = std::sqrt(dp);
        dm = std::sqrt(dm);
        res.scores[i] = dp + dm > 0.0 ? dp / (dp + dm) : 0.5;
    }
    for (std::size_t i = 1; i < res.scores.size(); ++i)
        if (res.scores[i] < res.scores[res.best]) res.best = i;
    return res;
}

TopsisResult topsis(const std::vector<ParetoSolution>& front,
                    const std::vector<double>& weights) {
    std::vector<std::vector<double>> matrix;
    matrix.reserve(front.size());
    for (const ParetoSolution& sol : front) matrix.push_back(sol.objectives.minimization());
    return topsis_scores(matrix, weights);
}

std::vector<std::vector<double>> default_weight_grid(std::size_t m, double step,
                                                     std::size_t cap) {
    if (step <= 0.0 || step > 1.0)
        throw std::invalid_argument("default_weight_grid: step must be in (0,1]");
    if (cap == 0) throw std::invalid_argument("default_weight_grid: cap must be positive");
    const std::size_t p = static_cast<std::size_t>(std::llround(1.0 / step));
    const auto lattice = das_dennis_points(m, p);
    if (lattice.size() <= cap) return lattice;
    std::vector<std::vector<double>> out;
    std::size_t last = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < cap; ++i) {
        const std::size_t pick = i * (lattice.size() - 1) / (cap - 1);
        if (pick == last) continue;
        last = pick;
        out.push_back(lattice[pick]);
    }
    return out;
}

SelectionResult select_by_attack(std::vector<ParetoSolution>& front,
                                 const std::vector<std::vector<double>>& weight_grid,
                                 const LayeredNetwork& net,
                                 [[maybe_unused]] const MissionPlan& plan,
                                 const AttackPlan& attack) {
    if (front.empty()) throw std::invalid_argument("select_by_attack: empty front");
    if (weight_grid.empty()) throw std::invalid_argument("select_by_attack: empty weight grid");
    AttackPlan probe = attack;
    probe.mode = AttackMode::Targeted;
    probe.target = AttackTarget::Nodes;
    probe.score_source = ScoreSource::NI;
    probe.validate();

    SelectionResult res;
    bool have_best = false;
    for (const auto& w : weight_grid) {
        const TopsisResult scores = topsis(front, w);
        res.topsis_degenerate = res.topsis_degenerate || scores.degenerate;
        const std::size_t si = scores.best;
        const LayeredNetwork candidate = net.with_topology(front[si].graph.edges());
        const AttackTrace trace = run_campaign(candidate, probe);
        const double auc = decay_auc(trace.phi_curve(), probe.fraction_per_step);
        front[si].decay_auc = auc;
        res.per_weight.push_back({w, si, scores.scores[si], auc});
        if (!have_best || auc > res.best.decay_auc) {
            have_best = true;
            res.best = res.per_weight.back();
        }
    }
    const TopsisResult winner = topsis(front, res.best.weights);
    for (std::size_t i = 0; i < front.size(); ++i) front[i].topsis_score = winner.scores[i];
    return res;
}

ReconfigureResult reconfigure(const LayeredNetwork& net0, const MissionPlan& plan,
                              const ReconfigureRequest& req, RngStream& rng) {
    if (net0.vehicle_count() < 2)
        throw InfeasibleError("reconfigure: fewer than 2 surviving vehicles");
    const CandidatePool pool = build_candidate_pool(net0, req.comm_range);
    if (pool.edges.empty() || !pool.full_graph().connected())
        throw InfeasibleError(
            "reconfigure: candidate pool cannot connect the survivors; increase comm range");
    std::size_t n_edges = req.n_edges != 0 ? req.n_edges : net0.structure().edge_count();
    if (n_edges == 0) n_edges = pool.nodes.size() - 1;  // at least a spanning tree

    ObjectiveContext ctx;
    ctx.net = &net0;
    ctx.plan = &plan;
    ctx.link = req.link;
    ctx.n_objectives = 4;
    ctx.attack_phase = req.attack_phase;
    ctx.baseline_edges = net0.structure().edges();

    // Seeding the compromised topology's own repair keeps the Phi floor
    // reachable: repair only adds edges to it, which cannot lower Phi.
    std::vector<bool> g0_genome(pool.edges.size(), false);
    for (std::size_t i = 0; i < pool.edges.size(); ++i)
        g0_genome[i] = net0.structure().has_edge(pool.edges[i].a, pool.edges[i].b);

    RngStream ga_rng = rng.derive("nsga3");
    std::vector<ParetoSolution> front =
        nsga3(pool, n_edges, ctx, req.nsga, ga_rng, {g0_genome});

    ReconfigureResult res;
    res.phi_g0 = net0.structure().empty() ? 0.0 : natural_connectivity(net0.structure());

    AttackPlan probe;
    probe.mode = AttackMode::Targeted;
    probe.target = AttackTarget::Nodes;
    probe.score_source = ScoreSource::NI;
    probe.fraction_per_step = req.follow_up_fraction;
    probe.steps = req.follow_up_steps;
    probe.surbi_r = req.surbi_r;
    probe.seed = rng.derive("follow-up").root_seed();
    probe.validate();

    std::vector<double> phis(front.size());
    for (std::size_t i = 0; i < front.size(); ++i) {
        const LayeredNetwork candidate = net0.with_topology(front[i].graph.edges());
        const AttackTrace trace = run_campaign(candidate, probe);
        front[i].decay_auc = decay_auc(trace.phi_curve(), probe.fraction_per_step);
        phis[i] = natural_connectivity(front[i].graph);
    }

    std::size_t best = front.size();
    for (std::size_t i = 0; i < front.size(); ++i) {
        if (phis[i] < res.phi_g0 - 1e-12) continue;
        if (best == front.size() || front[i].decay_auc > front[best].decay_auc ||
            (front[i].decay_auc == front[best].decay_auc && phis[i] > phis[best]))
            best = i;
    }
    if (best == front.size()) {
        // No candidate met the Phi floor; surface the best Phi instead.
        res.fallback_best_phi = true;
        best = 0;
        for (std::size_t i = 1; i < front.size(); ++i)
            if (phis[i] > phis[best]) best = i;
    }

    const TopsisResult scores = topsis(front, std::vector<double>(4, 0.25));
    for (std::size_t i = 0; i < front.size(); ++i) front[i].topsis_score = scores.scores[i];

    res.best = front[best];
    res.phi_best = phis[best];
    res.phi_ratio = res.phi_g0 > 0.0 ? res.phi_best / res.phi_g0 : 0.0;
    res.front = std::move(front);
    return res;
}

}  // namespace swarmres
