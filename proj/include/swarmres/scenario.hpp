#pragma once

#include <cstddef>
#include <vector>

#include "swarmres/graph.hpp"
#include "swarmres/layered.hpp"
#include "swarmres/reliability.hpp"
#include "swarmres/rng.hpp"

namespace swarmres {

// Preferential-attachment scale-free graph on nodes 0..n-1. Each new node
// wires to min(attachment, existing) distinct targets drawn with probability
// proportional to degree + 1. attachment = 1 yields a random tree.
Graph gen_pln(std::size_t n, std::size_t attachment, RngStream& rng);

struct MultiphaseScenario {
    MissionPlan plan;
    std::vector<Graph> phase_graphs;  // operational subgraph per phase
};

// Multi-phase mission over a fixed fleet: active sets of 30-50% of the
// nodes patched to guarantee coverage and pairwise overlap, per-phase
// topologies rewired from the induced subgraph by degree-preserving swaps
// (rewire_rate of the induced edges attempted), and only the largest
// connected component of each rewired graph operates.
MultiphaseScenario gen_multiphase(const Graph& base, std::size_t phases, RngStream& rng,
                                  double rewire_rate = 0.15);

struct Contested3dConfig {
    std::size_t n_uav = 30;
    std::size_t n_usv = 20;
    double bound = 1000.0;  // cube edge length, metres
    double uav_z_min = 50.0;
    double uav_z_max = 1000.0;
    double comm_range = 600.0;
    std::size_t x = 2;        // payloads per UAV
    std::size_t y = 3;        // payloads per USV
    std::size_t z_types = 2;  // payload type labels
    double extra_edge_fraction = 0.15;  // of the feasible edges beyond the MST
    std::size_t phases = 3;
    LinkModel link;
};

struct Scenario {
    LayeredNetwork net;
    MissionPlan plan;
    LinkModel link;
    double comm_range = 0.0;
};

// Aerial-marine fleet in a 3D box: UAVs aloft, USVs on the surface plane,
// initial topology = Euclidean MST over the feasible pool plus random extra
// in-range edges, and a default multi-phase plan over the vehicles.
Scenario gen_contested3d(const Contested3dConfig& cfg, RngStream& rng);

// Cross-phase damage localization study. For each phase j, delete the top
// `fraction` of that phase's nodes by per-phase NI and record the natural
// connectivity of every phase graph before and after; one extra row does the
// same with the mission-wide ranking (duration-weighted across phases).
struct PhaseImpact {
    std::vector<double> phi_before;                 // per measured phase
    std::vector<std::vector<double>> phi_after;     // [attacked phase][measured phase]
    std::vector<double> phi_after_global;           // [measured phase]
    std::vector<std::vector<NodeId>> victims;       // per attacked phase
    std::vector<NodeId> victims_global;

    // 1 - phi_after/phi_before, clamped to 0 when the phase was already flat.
    double reduction(std::size_t attacked, std::size_t measured) const;
    double global_reduction(std::size_t measured) const;
    // Long-form CSV "attack,phase,phi_before,phi_after,reduction" where
    // attack is "phase_k" or "global".
    std::string to_csv() const;
};

PhaseImpact phase_impact(const std::vector<Graph>& phase_graphs, const MissionPlan& plan,
                         double fraction, double r);

}  // namespace swarmres
