#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "swarmres/adversary.hpp"
#include "swarmres/criticality.hpp"
#include "swarmres/errors.hpp"
#include "swarmres/graph.hpp"
#include "swarmres/layered.hpp"
#include "swarmres/optimizer.hpp"
#include "swarmres/reliability.hpp"
#include "swarmres/scenario.hpp"
#include "swarmres/serialize.hpp"
#include "swarmres/spectral.hpp"

namespace swarmres::cli {
namespace {

using nlohmann::json;

struct CommonOpts {
    std::string out = "out";
    std::uint64_t seed = 42;
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--out", c.out, "output directory")->capture_default_str();
    sub->add_option("--seed", c.seed, "root RNG seed")->capture_default_str();
}

std::string read_input(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw std::invalid_argument("input file not found: " + path);
    return read_file(path);
}

Scenario load_scenario_file(const std::string& path) {
    return scenario_from_json(json::parse(read_input(path)));
}

// rank / calibrate-r / attack accept either a full scenario or a bare edge
// list (wrapped into a degenerate single-layer fleet).
struct NetSource {
    std::string scenario_path;
    std::string graph_path;
};

void add_net_source(CLI::App* sub, NetSource& src) {
    sub->add_option("--scenario", src.scenario_path, "scenario JSON file");
    sub->add_option("--graph", src.graph_path, "edge-list file");
}

Scenario load_net_source(const NetSource& src) {
    if (src.scenario_path.empty() == src.graph_path.empty())
        throw std::invalid_argument("exactly one of --scenario / --graph is required");
    if (!src.scenario_path.empty()) return load_scenario_file(src.scenario_path);
    Scenario sc;
    sc.net = LayeredNetwork::wrap(Graph::from_edge_list(read_input(src.graph_path)));
    return sc;
}

ScoreSource parse_method(const std::string& method) {
    if (method == "surbi") return ScoreSource::NI;
    if (method == "kshell") return ScoreSource::KShell;
    if (method == "katz") return ScoreSource::Katz;
    if (method == "random") return ScoreSource::NI;  // source unused
    throw std::invalid_argument("unknown --method: " + method +
                                " (surbi, kshell, katz, random)");
}

// ---------------------------------------------------------------- generate

struct GenerateOpts {
    CommonOpts common;
    std::string dataset;
    std::size_t nodes = 1000;
    std::size_t attachment = 2;
    std::size_t phases = 5;
    double rewire_rate = 0.15;
    std::size_t uavs = 30, usvs = 20;
    double bound = 1000.0, comm_range = 600.0;
    std::size_t payload_x = 2, payload_y = 3, payload_types = 2;
    double extra_fraction = 0.15;
    double d0 = 500.0, path_loss = 2.0;
};

int cmd_generate(const GenerateOpts& o) {
    RngStream root(o.common.seed);
    json config{{"dataset", o.dataset}};
    std::string headline;

    if (o.dataset == "pln") {
        config["nodes"] = o.nodes;
        config["attachment"] = o.attachment;
        RngStream rng = root.derive("pln");
        Graph g = gen_pln(o.nodes, o.attachment, rng);
        atomic_write(o.common.out + "/graph.edges", g.to_edge_list());
        headline = "graph.edges: " + std::to_string(g.node_count()) + " nodes, " +
                   std::to_string(g.edge_count()) + " edges";
    } else if (o.dataset == "multiphase") {
        config["nodes"] = o.nodes;
        config["attachment"] = o.attachment;
        config["phases"] = o.phases;
        config["rewire_rate"] = o.rewire_rate;
        RngStream base_rng = root.derive("base-graph");
        Graph base = gen_pln(o.nodes, o.attachment, base_rng);
        RngStream mp_rng = root.derive("multiphase");
        MultiphaseScenario ms = gen_multiphase(base, o.phases, mp_rng, o.rewire_rate);
        atomic_write(o.common.out + "/base.edges", base.to_edge_list());
        atomic_write(o.common.out + "/mission.json", mission_to_json(ms.plan).dump(2) + "\n");
        for (std::size_t j = 0; j < ms.phase_graphs.size(); ++j)
            atomic_write(o.common.out + "/phase_" + std::to_string(j + 1) + ".edges",
                         ms.phase_graphs[j].to_edge_list());
        headline = "base.edges + mission.json + " + std::to_string(ms.phase_graphs.size()) +
                   " phase graphs";
    } else if (o.dataset == "contested3d") {
        Contested3dConfig cfg;
        cfg.n_uav = o.uavs;
        cfg.n_usv = o.usvs;
        cfg.bound = o.bound;
        cfg.comm_range = o.comm_range;
        cfg.x = o.payload_x;
        cfg.y = o.payload_y;
        cfg.z_types = o.payload_types;
        cfg.extra_edge_fraction = o.extra_fraction;
        cfg.phases = o.phases;
        cfg.link.d0 = o.d0;
        cfg.link.n_exp = o.path_loss;
        config["uavs"] = o.uavs;
        config["usvs"] = o.usvs;
        config["bound"] = o.bound;
        config["comm_range"] = o.comm_range;
        config["payload_x"] = o.payload_x;
        config["payload_y"] = o.payload_y;
        config["payload_types"] = o.payload_types;
        config["extra_fraction"] = o.extra_fraction;
        config["phases"] = o.phases;
        config["d0"] = o.d0;
        config["path_loss"] = o.path_loss;
        Scenario sc = gen_contested3d(cfg, root);
        save_scenario(sc, o.common.out + "/scenario.json");
        headline = "scenario.json: " + std::to_string(sc.net.vehicle_count()) +
                   " vehicles, " + std::to_string(sc.net.structure().edge_count()) +
                   " links";
    } else {
        throw std::invalid_argument("unknown --dataset: " + o.dataset +
                                    " (pln, multiphase, contested3d)");
    }

    write_manifest(o.common.out, "generate", config, o.common.seed);
    std::cout << o.common.out << "/" << headline << "\n";
    return 0;
}

// -------------------------------------------------------------------- rank

struct RankOpts {
    CommonOpts common;
    NetSource src;
    double r = 0.3;
};

int cmd_rank(const RankOpts& o) {
    Scenario sc = load_net_source(o.src);
    const Graph& gs = sc.net.structure();
    if (gs.node_count() < 2)
        throw InfeasibleError("rank: need at least 2 nodes");
    CriticalityReport rep = surbi_rank(gs, o.r);
    atomic_write(o.common.out + "/nodes.csv", rep.node_csv());
    atomic_write(o.common.out + "/edges.csv", rep.edge_csv());

    json summary{{"r", o.r}, {"nodes", gs.node_count()}, {"notes", rep.notes}};
    json top = json::array();
    for (std::size_t i = 0; i < rep.ranking.size() && i < 10; ++i) {
        top.push_back(json{{"node", rep.ranking[i]}, {"ni", round12(rep.ni_of(rep.ranking[i]))}});
    }
    summary["top"] = top;
    atomic_write(o.common.out + "/summary.json", summary.dump(2) + "\n");
    write_manifest(o.common.out, "rank", json{{"r", o.r}}, o.common.seed);
    std::cout << o.common.out << "/nodes.csv: " << rep.ranking.size() << " nodes ranked\n";
    return 0;
}

// ------------------------------------------------------------- calibrate-r

struct CalibrateOpts {
    CommonOpts common;
    NetSource src;
    std::vector<double> r_grid;
    std::size_t group_size = 20;
    std::size_t groups = 5;
    double infection = 0.1;
    double recovery = 0.05;
    std::size_t reps = 30;
    std::size_t max_ticks = 1000;
};

int cmd_calibrate(const CalibrateOpts& o) {
    Scenario sc = load_net_source(o.src);
    std::vector<double> grid = o.r_grid;
    if (grid.empty())
        for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);

    SirConfig cfg;
    cfg.infection_prob = o.infection;
    cfg.recovery_prob = o.recovery;
    cfg.repetitions = o.reps;
    cfg.max_ticks = o.max_ticks;

    RngStream root(o.common.seed);
    CalibrationResult res =
        calibrate_r(sc.net.structure(), grid, o.group_size, o.groups, cfg, root);
    atomic_write(o.common.out + "/calibration.csv", res.to_csv());
    json summary{{"r_star", res.r_star}, {"flagged", res.flagged}};
    atomic_write(o.common.out + "/summary.json", summary.dump(2) + "\n");

    json config{{"r_grid", grid},           {"group_size", o.group_size},
                {"groups", o.groups},       {"infection", o.infection},
                {"recovery", o.recovery},   {"reps", o.reps},
                {"max_ticks", o.max_ticks}};
    write_manifest(o.common.out, "calibrate-r", config, o.common.seed);
    std::cout << "r* = " << fmt12(res.r_star) << (res.flagged ? " (flagged)" : "") << "\n";
    return 0;
}

// ------------------------------------------------------------------ attack

struct AttackOpts {
    CommonOpts common;
    NetSource src;
    std::string method = "surbi";
    std::string target = "nodes";
    double fraction = 0.02;
    std::size_t steps = 10;
    bool rerank = false;
    bool baselines = false;
    double r = 0.3;
};

AttackPlan make_attack_plan(const AttackOpts& o, const std::string& method,
                            std::uint64_t seed) {
    AttackPlan plan;
    plan.mode = method == "random" ? AttackMode::Random : AttackMode::Targeted;
    if (o.target == "nodes")
        plan.target = AttackTarget::Nodes;
    else if (o.target == "edges")
        plan.target = AttackTarget::Edges;
    else
        throw std::invalid_argument("unknown --target: " + o.target + " (nodes, edges)");
    plan.score_source = parse_method(method);
    plan.fraction_per_step = o.fraction;
    plan.steps = o.steps;
    plan.rerank = o.rerank;
    plan.surbi_r = o.r;
    plan.seed = seed;
    plan.validate();
    return plan;
}

int cmd_attack(const AttackOpts& o) {
    Scenario sc = load_net_source(o.src);
    AttackPlan plan = make_attack_plan(o, o.method, o.common.seed);
    AttackTrace trace = run_campaign(sc.net, plan);
    atomic_write(o.common.out + "/decay.csv", trace.to_csv());

    json summary{{"method", o.method},
                 {"target", o.target},
                 {"auc", round12(decay_auc(trace.phi_curve(), o.fraction))},
                 {"final_phi", round12(trace.steps.back().phi)},
                 {"survivors", sc.net.vehicle_count() > 0
                                   ? trace.compromised.vehicle_count()
                                   : 0}};

    if (o.baselines) {
        json base = json::object();
        for (const std::string& m : {"kshell", "katz", "random"}) {
            if (m == o.method) continue;
            AttackPlan bp = make_attack_plan(o, m, o.common.seed);
            AttackTrace bt = run_campaign(sc.net, bp);
            atomic_write(o.common.out + "/decay_" + m + ".csv", bt.to_csv());
            base[m] = round12(decay_auc(bt.phi_curve(), o.fraction));
        }
        summary["baseline_auc"] = base;
    }
    atomic_write(o.common.out + "/summary.json", summary.dump(2) + "\n");

    json config{{"method", o.method},     {"target", o.target},
                {"fraction", o.fraction}, {"steps", o.steps},
                {"rerank", o.rerank},     {"r", o.r},
                {"baselines", o.baselines}};
    write_manifest(o.common.out, "attack", config, o.common.seed);
    std::cout << o.common.out << "/decay.csv: auc " << fmt12(summary["auc"].get<double>())
              << "\n";
    return 0;
}

// ---------------------------------------------------------- phase-impact

struct PhaseImpactOpts {
    CommonOpts common;
    std::string scenario_path;
    std::string mission_path;
    std::string phases_dir;
    double fraction = 0.1;
    double r = 0.3;
};

int cmd_phase_impact(const PhaseImpactOpts& o) {
    MissionPlan plan;
    std::vector<Graph> phase_graphs;
    if (!o.scenario_path.empty()) {
        Scenario sc = load_scenario_file(o.scenario_path);
        if (sc.plan.phases.empty())
            throw std::invalid_argument("scenario carries no mission phases");
        plan = sc.plan;
        for (const Phase& ph : plan.phases)
            phase_graphs.push_back(sc.net.active_subgraph(ph.nodes));
    } else {
        if (o.mission_path.empty() || o.phases_dir.empty())
            throw std::invalid_argument(
                "pass --scenario, or --mission together with --phases-dir");
        plan = mission_from_json(json::parse(read_input(o.mission_path)));
        for (std::size_t j = 1; j <= plan.phases.size(); ++j)
            phase_graphs.push_back(Graph::from_edge_list(
                read_input(o.phases_dir + "/phase_" + std::to_string(j) + ".edges")));
    }

    PhaseImpact pi = phase_impact(phase_graphs, plan, o.fraction, o.r);
    atomic_write(o.common.out + "/impact.csv", pi.to_csv());

    json summary;
    summary["victims"] = json::array();
    for (const auto& vs : pi.victims) summary["victims"].push_back(vs);
    summary["victims_global"] = pi.victims_global;
    json reductions = json::array();
    for (std::size_t a = 0; a < pi.phi_after.size(); ++a) {
        json row = json::array();
        for (std::size_t k = 0; k < pi.phi_before.size(); ++k)
            row.push_back(round12(pi.reduction(a, k)));
        reductions.push_back(row);
    }
    summary["reduction"] = reductions;
    json grow = json::array();
    for (std::size_t k = 0; k < pi.phi_before.size(); ++k)
        grow.push_back(round12(pi.global_reduction(k)));
    summary["reduction_global"] = grow;
    atomic_write(o.common.out + "/summary.json", summary.dump(2) + "\n");

    write_manifest(o.common.out, "phase-impact",
                   json{{"fraction", o.fraction}, {"r", o.r}}, o.common.seed);
    std::cout << o.common.out << "/impact.csv: " << plan.phases.size() << " phases\n";
    return 0;
}

// --------------------------------------------------------- optimize-static

struct OptimizeOpts {
    CommonOpts common;
    std::string scenario_path;
    std::size_t edges = 0;
    std::size_t pop = 92;
    std::size_t gens = 200;
    std::size_t divisions = 0;
    double crossover = 0.9;
    double mutation = 0.0;
    double r = 0.3;
    std::string weights_path;
    double attack_fraction = 0.05;
    std::size_t attack_steps = 10;
    double comm_range = 0.0;
};

Nsga3Config make_nsga_config(const OptimizeOpts& o) {
    Nsga3Config cfg;
    cfg.population = o.pop;
    cfg.generations = o.gens;
    cfg.crossover_prob = o.crossover;
    cfg.mutation_prob = o.mutation;
    cfg.divisions = o.divisions;
    cfg.surbi_r = o.r;
    cfg.validate();
    return cfg;
}

std::vector<std::vector<double>> load_weight_grid(const std::string& path, std::size_t m) {
    if (path.empty()) return default_weight_grid(m);
    json j = json::parse(read_input(path));
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("weights grid: expected a non-empty JSON array");
    std::vector<std::vector<double>> grid;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != m)
            throw std::invalid_argument("weights grid: each entry needs " +
                                        std::to_string(m) + " weights");
        std::vector<double> w;
        for (const auto& x : row) {
            if (!x.is_number()) throw std::invalid_argument("weights grid: non-numeric weight");
            w.push_back(x.get<double>());
        }
        grid.push_back(std::move(w));
    }
    return grid;
}

json selection_to_json(const SelectionResult& sel) {
    auto choice = [](const WeightChoice& c) {
        return json{{"weights", c.weights},
                    {"solution_index", c.solution_index},
                    {"topsis_score", round12(c.topsis_score)},
                    {"decay_auc", round12(c.decay_auc)}};
    };
    json per = json::array();
    for (const WeightChoice& c : sel.per_weight) per.push_back(choice(c));
    return json{{"best", choice(sel.best)},
                {"per_weight", per},
                {"topsis_degenerate", sel.topsis_degenerate}};
}

int cmd_optimize(const OptimizeOpts& o) {
    Scenario sc = load_scenario_file(o.scenario_path);
    if (sc.plan.phases.empty())
        throw std::invalid_argument("scenario carries no mission phases");
    const double range = o.comm_range > 0 ? o.comm_range : sc.comm_range;
    if (!(range > 0) || !std::isfinite(range))
        throw std::invalid_argument("scenario has no comm range; pass --comm-range");

    CandidatePool pool = build_candidate_pool(sc.net, range);
    const std::size_t n_edges = o.edges ? o.edges : sc.net.structure().edge_count();

    ObjectiveContext ctx;
    ctx.net = &sc.net;
    ctx.plan = &sc.plan;
    ctx.link = sc.link;
    ctx.n_objectives = 3;
    ctx.baseline_edges = sc.net.structure().edges();

    RngStream root(o.common.seed);
    RngStream ga_rng = root.derive("nsga3");
    std::vector<ParetoSolution> front =
        nsga3(pool, n_edges, ctx, make_nsga_config(o), ga_rng);

    std::vector<std::vector<double>> grid = load_weight_grid(o.weights_path, 3);
    AttackPlan probe;
    probe.fraction_per_step = o.attack_fraction;
    probe.steps = o.attack_steps;
    probe.surbi_r = o.r;
    probe.seed = root.derive("selection-attack").root_seed();
    probe.validate();
    SelectionResult sel = select_by_attack(front, grid, sc.net, sc.plan, probe);

    atomic_write(o.common.out + "/front.json", front_to_json(front).dump(2) + "\n");
    atomic_write(o.common.out + "/selection.json", selection_to_json(sel).dump(2) + "\n");
    const ParetoSolution& best = front.at(sel.best.solution_index);
    atomic_write(o.common.out + "/best.edges", best.graph.to_edge_list());

    json config{{"edges", n_edges},
                {"pop", o.pop},
                {"gens", o.gens},
                {"divisions", o.divisions},
                {"crossover", o.crossover},
                {"mutation", o.mutation},
                {"r", o.r},
                {"attack_fraction", o.attack_fraction},
                {"attack_steps", o.attack_steps},
                {"comm_range", range},
                {"weights", o.weights_path.empty() ? "default" : o.weights_path}};
    write_manifest(o.common.out, "optimize-static", config, o.common.seed);
    std::cout << o.common.out << "/front.json: " << front.size()
              << " solutions, best index " << sel.best.solution_index << " (auc "
              << fmt12(sel.best.decay_auc) << ")\n";
    return 0;
}

// ------------------------------------------------------------- reconfigure

struct ReconfigureOpts {
    CommonOpts common;
    std::string scenario_path;
    double node_fraction = 0.1;
    double edge_fraction = 0.1;
    std::size_t attack_phase = 1;
    std::size_t edges = 0;
    std::size_t pop = 92;
    std::size_t gens = 200;
    std::size_t divisions = 0;
    double crossover = 0.9;
    double mutation = 0.0;
    double follow_fraction = 0.05;
    std::size_t follow_steps = 10;
    double r = 0.3;
    double comm_range = 0.0;
};

int cmd_reconfigure(const ReconfigureOpts& o) {
    Scenario sc = load_scenario_file(o.scenario_path);
    if (sc.plan.phases.empty())
        throw std::invalid_argument("scenario carries no mission phases");
    if (o.node_fraction < 0 || o.node_fraction > 1 || o.edge_fraction < 0 ||
        o.edge_fraction > 1)
        throw std::invalid_argument("attack fractions must be in [0, 1]");

    RngStream root(o.common.seed);
    LayeredNetwork net0 = sc.net;

    if (o.node_fraction > 0) {
        AttackPlan np;
        np.target = AttackTarget::Nodes;
        np.fraction_per_step = o.node_fraction;
        np.steps = 1;
        np.surbi_r = o.r;
        np.seed = root.derive("pre-attack", 0).root_seed();
        np.validate();
        AttackTrace tr = run_campaign(net0, np);
        net0 = tr.compromised;
        atomic_write(o.common.out + "/attack_nodes.csv", tr.to_csv());
    }
    if (o.edge_fraction > 0) {
        AttackPlan ep;
        ep.target = AttackTarget::Edges;
        ep.fraction_per_step = o.edge_fraction;
        ep.steps = 1;
        ep.surbi_r = o.r;
        ep.seed = root.derive("pre-attack", 1).root_seed();
        ep.validate();
        AttackTrace tr = run_campaign(net0, ep);
        net0 = tr.compromised;
        atomic_write(o.common.out + "/attack_edges.csv", tr.to_csv());
    }
    atomic_write(o.common.out + "/compromised.edges", net0.structure().to_edge_list());

    ReconfigureRequest req;
    req.attack_phase = o.attack_phase;
    req.n_edges = o.edges;
    req.comm_range = o.comm_range > 0 ? o.comm_range
                     : sc.comm_range > 0 ? sc.comm_range
                                         : std::numeric_limits<double>::infinity();
    req.link = sc.link;
    req.nsga.population = o.pop;
    req.nsga.generations = o.gens;
    req.nsga.crossover_prob = o.crossover;
    req.nsga.mutation_prob = o.mutation;
    req.nsga.divisions = o.divisions;
    req.nsga.surbi_r = o.r;
    req.nsga.validate();
    req.follow_up_fraction = o.follow_fraction;
    req.follow_up_steps = o.follow_steps;
    req.surbi_r = o.r;

    RngStream rec_rng = root.derive("reconfigure");
    ReconfigureResult res = reconfigure(net0, sc.plan, req, rec_rng);

    atomic_write(o.common.out + "/front.json", front_to_json(res.front).dump(2) + "\n");
    atomic_write(o.common.out + "/best.edges", res.best.graph.to_edge_list());
    json result{{"phi_g0", round12(res.phi_g0)},
                {"phi_best", round12(res.phi_best)},
                {"phi_ratio", round12(res.phi_ratio)},
                {"fallback_best_phi", res.fallback_best_phi},
                {"decay_auc", round12(res.best.decay_auc)},
                {"f1", round12(res.best.objectives.f1)},
                {"f2", round12(res.best.objectives.f2)},
                {"f3", round12(res.best.objectives.f3)},
                {"f4", res.best.objectives.f4}};
    atomic_write(o.common.out + "/result.json", result.dump(2) + "\n");

    json config{{"node_fraction", o.node_fraction},
                {"edge_fraction", o.edge_fraction},
                {"attack_phase", o.attack_phase},
                {"edges", o.edges},
                {"pop", o.pop},
                {"gens", o.gens},
                {"divisions", o.divisions},
                {"crossover", o.crossover},
                {"mutation", o.mutation},
                {"follow_fraction", o.follow_fraction},
                {"follow_steps", o.follow_steps},
                {"r", o.r},
                {"comm_range", req.comm_range}};
    write_manifest(o.common.out, "reconfigure", config, o.common.seed);
    std::cout << o.common.out << "/result.json: phi " << fmt12(res.phi_g0) << " -> "
              << fmt12(res.phi_best) << (res.fallback_best_phi ? " (fallback)" : "")
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOpts {
    CommonOpts common;
    std::string scenario_path;
    std::string topology_path;
    std::string baseline_path;
    bool dynamic = false;
    std::size_t attack_phase = 1;
};

int cmd_evaluate(const EvaluateOpts& o) {
    Scenario sc = load_scenario_file(o.scenario_path);
    if (sc.plan.phases.empty())
        throw std::invalid_argument("scenario carries no mission phases");
    Graph parsed = Graph::from_edge_list(read_input(o.topology_path));

    Graph g;
    for (NodeId v : sc.net.structure().nodes()) g.add_node(v);
    for (NodeId v : parsed.nodes())
        if (!g.has_node(v))
            throw std::invalid_argument("topology node " + std::to_string(v) +
                                        " is not a vehicle of the scenario");
    for (const EdgeKey& e : parsed.edges())
        g.add_edge(e.a, e.b, distance(sc.net.position(e.a), sc.net.position(e.b)));

    ObjectiveContext ctx;
    ctx.net = &sc.net;
    ctx.plan = &sc.plan;
    ctx.link = sc.link;
    ctx.n_objectives = o.dynamic ? 4 : 3;
    ctx.attack_phase = o.attack_phase;
    ctx.baseline_edges = o.baseline_path.empty()
                             ? sc.net.structure().edges()
                             : Graph::from_edge_list(read_input(o.baseline_path)).edges();
    ObjectiveVector ov = ctx.evaluate(g);

    json ev{{"f1", round12(ov.f1)},
            {"f2", round12(ov.f2)},
            {"f3", round12(ov.f3)},
            {"feasible", ov.feasible}};
    if (o.dynamic) {
        ev["f4"] = ov.f4;
        ev["attack_phase"] = o.attack_phase;
    }
    std::cout << ev.dump(2) << "\n";
    atomic_write(o.common.out + "/evaluation.json", ev.dump(2) + "\n");
    write_manifest(o.common.out, "evaluate",
                   json{{"dynamic", o.dynamic}, {"attack_phase", o.attack_phase}},
                   o.common.seed);
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
    CLI::App app{"resilience analysis and topology optimization for layered fleets"};
    app.require_subcommand(1);

    GenerateOpts gen;
    CLI::App* sgen = app.add_subcommand("generate", "emit a benchmark dataset");
    add_common(sgen, gen.common);
    sgen->add_option("--dataset", gen.dataset, "pln | multiphase | contested3d")
        ->required();
    sgen->add_option("--nodes", gen.nodes)->capture_default_str();
    sgen->add_option("--attachment", gen.attachment)->capture_default_str();
    sgen->add_option("--phases", gen.phases)->capture_default_str();
    sgen->add_option("--rewire-rate", gen.rewire_rate)->capture_default_str();
    sgen->add_option("--uavs", gen.uavs)->capture_default_str();
    sgen->add_option("--usvs", gen.usvs)->capture_default_str();
    sgen->add_option("--bound", gen.bound)->capture_default_str();
    sgen->add_option("--comm-range", gen.comm_range)->capture_default_str();
    sgen->add_option("--payload-x", gen.payload_x)->capture_default_str();
    sgen->add_option("--payload-y", gen.payload_y)->capture_default_str();
    sgen->add_option("--payload-types", gen.payload_types)->capture_default_str();
    sgen->add_option("--extra-fraction", gen.extra_fraction)->capture_default_str();
    sgen->add_option("--d0", gen.d0)->capture_default_str();
    sgen->add_option("--path-loss", gen.path_loss)->capture_default_str();

    RankOpts rank;
    CLI::App* srank = app.add_subcommand("rank", "criticality ranking of one graph");
    add_common(srank, rank.common);
    add_net_source(srank, rank.src);
    srank->add_option("--r", rank.r, "Birnbaum weight")->capture_default_str();

    CalibrateOpts cal;
    CLI::App* scal = app.add_subcommand("calibrate-r", "pick r by SIR spreading power");
    add_common(scal, cal.common);
    add_net_source(scal, cal.src);
    scal->add_option("--r-grid", cal.r_grid, "candidate r values");
    scal->add_option("--group-size", cal.group_size)->capture_default_str();
    scal->add_option("--groups", cal.groups)->capture_default_str();
    scal->add_option("--infection", cal.infection)->capture_default_str();
    scal->add_option("--recovery", cal.recovery)->capture_default_str();
    scal->add_option("--reps", cal.reps)->capture_default_str();
    scal->add_option("--max-ticks", cal.max_ticks)->capture_default_str();

    AttackOpts atk;
    CLI::App* satk = app.add_subcommand("attack", "sequential removal campaign");
    add_common(satk, atk.common);
    add_net_source(satk, atk.src);
    satk->add_option("--method", atk.method, "surbi | kshell | katz | random")
        ->capture_default_str();
    satk->add_option("--target", atk.target, "nodes | edges")->capture_default_str();
    satk->add_option("--fraction", atk.fraction, "fraction removed per step")
        ->capture_default_str();
    satk->add_option("--steps", atk.steps)->capture_default_str();
    satk->add_flag("--rerank", atk.rerank, "recompute scores after every step");
    satk->add_flag("--baselines", atk.baselines, "also run the other methods");
    satk->add_option("--r", atk.r, "Birnbaum weight")->capture_default_str();

    PhaseImpactOpts pim;
    CLI::App* spim = app.add_subcommand("phase-impact", "cross-phase damage localization");
    add_common(spim, pim.common);
    spim->add_option("--scenario", pim.scenario_path, "scenario JSON file");
    spim->add_option("--mission", pim.mission_path, "mission JSON file");
    spim->add_option("--phases-dir", pim.phases_dir, "directory with phase_<j>.edges");
    spim->add_option("--fraction", pim.fraction, "fraction of nodes removed")
        ->capture_default_str();
    spim->add_option("--r", pim.r, "Birnbaum weight")->capture_default_str();

    OptimizeOpts opt;
    CLI::App* sopt = app.add_subcommand("optimize-static", "pre-mission topology search");
    add_common(sopt, opt.common);
    sopt->add_option("--scenario", opt.scenario_path)->required();
    sopt->add_option("--edges", opt.edges, "edge budget (0 = current count)")
        ->capture_default_str();
    sopt->add_option("--pop", opt.pop)->capture_default_str();
    sopt->add_option("--gens", opt.gens)->capture_default_str();
    sopt->add_option("--divisions", opt.divisions, "reference-point divisions (0 = auto)")
        ->capture_default_str();
    sopt->add_option("--crossover", opt.crossover)->capture_default_str();
    sopt->add_option("--mutation", opt.mutation, "per-bit rate (0 = 2/|pool|)")
        ->capture_default_str();
    sopt->add_option("--r", opt.r, "Birnbaum weight")->capture_default_str();
    sopt->add_option("--weights-grid", opt.weights_path, "JSON array of weight vectors");
    sopt->add_option("--attack-fraction", opt.attack_fraction)->capture_default_str();
    sopt->add_option("--attack-steps", opt.attack_steps)->capture_default_str();
    sopt->add_option("--comm-range", opt.comm_range, "override the scenario's range")
        ->capture_default_str();

    ReconfigureOpts rec;
    CLI::App* srec = app.add_subcommand("reconfigure", "post-attack topology repair");
    add_common(srec, rec.common);
    srec->add_option("--scenario", rec.scenario_path)->required();
    srec->add_option("--node-fraction", rec.node_fraction, "vehicles removed up front")
        ->capture_default_str();
    srec->add_option("--edge-fraction", rec.edge_fraction, "comm links removed up front")
        ->capture_default_str();
    srec->add_option("--attack-phase", rec.attack_phase, "phase hit by the attack")
        ->capture_default_str();
    srec->add_option("--edges", rec.edges, "edge budget (0 = compromised count)")
        ->capture_default_str();
    srec->add_option("--pop", rec.pop)->capture_default_str();
    srec->add_option("--gens", rec.gens)->capture_default_str();
    srec->add_option("--divisions", rec.divisions)->capture_default_str();
    srec->add_option("--crossover", rec.crossover)->capture_default_str();
    srec->add_option("--mutation", rec.mutation)->capture_default_str();
    srec->add_option("--follow-fraction", rec.follow_fraction)->capture_default_str();
    srec->add_option("--follow-steps", rec.follow_steps)->capture_default_str();
    srec->add_option("--r", rec.r, "Birnbaum weight")->capture_default_str();
    srec->add_option("--comm-range", rec.comm_range, "override the scenario's range")
        ->capture_default_str();

    EvaluateOpts ev;
    CLI::App* sev = app.add_subcommand("evaluate", "objectives of one topology");
    add_common(sev, ev.common);
    sev->add_option("--scenario", ev.scenario_path)->required();
    sev->add_option("--topology", ev.topology_path, "edge-list file")->required();
    sev->add_option("--baseline", ev.baseline_path, "edge list for the rewiring cost");
    sev->add_flag("--dynamic", ev.dynamic, "4-objective post-attack evaluation");
    sev->add_option("--attack-phase", ev.attack_phase)->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sgen->parsed()) return cmd_generate(gen);
        if (srank->parsed()) return cmd_rank(rank);
        if (scal->parsed()) return cmd_calibrate(cal);
        if (satk->parsed()) return cmd_attack(atk);
        if (spim->parsed()) return cmd_phase_impact(pim);
        if (sopt->parsed()) return cmd_optimize(opt);
        if (srec->parsed()) return cmd_reconfigure(rec);
        if (sev->parsed()) return cmd_evaluate(ev);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace swarmres::cli
