// Python surface for the operations people actually script against:
// generation, spectral metrics, criticality ranking, attack decay, and the
// path-reliability model. The heavyweight optimizer stays C++/CLI-only.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swarmres/adversary.hpp"
#include "swarmres/criticality.hpp"
#include "swarmres/graph.hpp"
#include "swarmres/layered.hpp"
#include "swarmres/reliability.hpp"
#include "swarmres/rng.hpp"
#include "swarmres/scenario.hpp"
#include "swarmres/spectral.hpp"

namespace py = pybind11;
using namespace swarmres;

PYBIND11_MODULE(_swarmres, m) {
    m.doc() = "Swarm resilience core: spectral metrics, criticality ranking, attack decay";

    py::class_<Graph>(m, "Graph")
        .def(py::init<>())
        .def("add_node", &Graph::add_node, py::arg("id"))
        .def("add_edge", py::overload_cast<NodeId, NodeId>(&Graph::add_edge), py::arg("u"),
             py::arg("v"))
        .def("add_edge", py::overload_cast<NodeId, NodeId, double>(&Graph::add_edge),
             py::arg("u"), py::arg("v"), py::arg("length_m"))
        .def("remove_node", &Graph::remove_node, py::arg("id"))
        .def("remove_edge", &Graph::remove_edge, py::arg("u"), py::arg("v"))
        .def("has_node", &Graph::has_node, py::arg("id"))
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("nodes", [](const Graph& g) { return g.nodes(); })
        .def("edges",
             [](const Graph& g) {
                 std::vector<std::pair<NodeId, NodeId>> out;
                 for (const EdgeKey& e : g.edges()) out.emplace_back(e.a, e.b);
                 return out;
             })
        .def("degree", &Graph::degree, py::arg("id"))
        .def("connected", &Graph::connected)
        .def("to_edge_list", &Graph::to_edge_list)
        .def_static("from_edge_list", &Graph::from_edge_list, py::arg("text"))
        .def("__repr__", [](const Graph& g) {
            return "Graph(" + std::to_string(g.node_count()) + " nodes, " +
                   std::to_string(g.edge_count()) + " edges)";
        });

    m.def(
        "gen_pln",
        [](std::size_t n, std::size_t attachment, std::uint64_t seed) {
            RngStream rng(seed);
            return gen_pln(n, attachment, rng);
        },
        py::arg("n"), py::arg("attachment") = 2, py::arg("seed") = 42,
        "Preferential-attachment scale-free graph on nodes 0..n-1");

    m.def("natural_connectivity", &natural_connectivity, py::arg("graph"));
    m.def("algebraic_connectivity", &algebraic_connectivity, py::arg("graph"));

    m.def(
        "surbi_rank",
        [](const Graph& g, double r) {
            const CriticalityReport rep = surbi_rank(g, r);
            py::dict out;
            out["ranking"] = rep.ranking;
            out["ni"] = rep.ni_map();
            out["notes"] = rep.notes;
            return out;
        },
        py::arg("graph"), py::arg("r") = 0.3,
        "Node criticality: dict with 'ranking' (NI descending), 'ni' (per node), 'notes'");

    m.def(
        "attack_decay",
        [](const Graph& g, const std::string& method, double fraction, std::size_t steps,
           std::uint64_t seed, double r) {
            AttackPlan plan;
            plan.fraction_per_step = fraction;
            plan.steps = steps;
            plan.seed = seed;
            plan.surbi_r = r;
            if (method == "random")
                plan.mode = AttackMode::Random;
            else if (method == "surbi")
                plan.score_source = ScoreSource::NI;
            else if (method == "kshell")
                plan.score_source = ScoreSource::KShell;
            else if (method == "katz")
                plan.score_source = ScoreSource::Katz;
            else
                throw std::invalid_argument("attack_decay: unknown method " + method);
            const LayeredNetwork net = LayeredNetwork::wrap(g);
            const AttackTrace trace = plan.mode == AttackMode::Random
                                          ? run_campaign(net, plan, ScoreTable{})
                                          : run_campaign(net, plan);
            py::dict out;
            out["phi_curve"] = trace.phi_curve();
            out["auc"] = decay_auc(trace.phi_curve(), plan.fraction_per_step);
            return out;
        },
        py::arg("graph"), py::arg("method") = "surbi", py::arg("fraction") = 0.02,
        py::arg("steps") = 10, py::arg("seed") = 0, py::arg("r") = 0.3,
        "Multi-step node removal campaign; dict with 'phi_curve' and normalized decay 'auc'");

    m.def(
        "er_percolation",
        [](const Graph& g) {
            const Percolation p = er_percolation(g);
            return py::make_tuple(p.p_t, p.fragile);
        },
        py::arg("graph"), "Degree-moment percolation threshold: (p_t, fragile)");

    m.def(
        "comm_success",
        [](const Graph& g, NodeId s, NodeId t, double d0, double n_exp) {
            LinkModel lm;
            lm.d0 = d0;
            lm.n_exp = n_exp;
            return comm_success(g, lm, s, t);
        },
        py::arg("graph"), py::arg("s"), py::arg("t"), py::arg("d0") = 500.0,
        py::arg("n_exp") = 2.0,
        "Best-path delivery probability under the exponential link-failure model");

    m.attr("__version__") = "0.1.0";
}
