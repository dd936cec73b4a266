#pragma once

#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "swarmres/graph.hpp"

namespace swarmres {

enum class VehicleClass { UAV, USV };
enum class Layer { Comm, Struct, Task };

struct Vec3 {
    double x = 0, y = 0, z = 0;
    bool operator==(const Vec3&) const = default;
};

inline double distance(const Vec3& p, const Vec3& q) {
    return std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) +
                     (p.z - q.z) * (p.z - q.z));
}

struct DegreeEntry {
    Layer layer;
    NodeId id;
    std::size_t intra = 0;
    std::size_t cross = 0;
    std::size_t total = 0;  // intra + cross
};

struct DegreeReport {
    std::vector<DegreeEntry> entries;  // comm nodes, then struct, then task
    double average_degree = 0;         // sum of totals / node count over all layers
    // cumulative[k] = fraction of nodes (all layers) with total degree >= k;
    // cumulative[0] == 1 even for the empty network.
    std::vector<double> cumulative;
    // Sum over live nodes of the cross-layer coupling degree. The per-class
    // convention (payload 1; vehicle 1 + payload count, on both the comm and
    // struct twin) counts host-payload coupling from three node views, so
    // the sum is not always even and the implicit cross-link tally
    // (sum / 2) can be half-integral.
    double cross_degree_sum = 0;
    double cross_link_tally = 0;
};

// Three coupled layers over one fleet: a communication layer and a structure
// layer on the same vehicle ids (coupled by an explicit bijection), plus a
// task layer whose nodes are payload items hosted on vehicles.
//
// Id scheme used by build(): vehicles are 0..n+m-1 (first n UAV, then m
// USV); payload ids start at n+m, with UAV u hosting n+m + u*x .. +x-1 and
// USV s (vehicle n+s) hosting n+m + n*x + s*y .. +y-1.
class LayeredNetwork {
public:
    // z_types labels payloads round-robin by slot; it never enters degree
    // math, it is only carried through serialization.
    static LayeredNetwork build(std::size_t n_uav, std::size_t n_usv, std::size_t x,
                                std::size_t y, const std::vector<Vec3>& positions,
                                const std::vector<EdgeKey>& comm_edges,
                                const std::vector<EdgeKey>& struct_edges,
                                const std::vector<EdgeKey>& task_edges,
                                std::size_t z_types = 1);

    // Degenerate wrapper for plain single-layer datasets: comm = structure =
    // g (ids and lengths preserved), every node a surface vehicle at the
    // origin, no payloads.
    static LayeredNetwork wrap(const Graph& g);

    const Graph& comm() const { return comm_; }
    const Graph& structure() const { return struct_; }
    const Graph& task() const { return task_; }
    Graph& comm_mutable() { return comm_; }

    std::size_t x() const { return x_; }
    std::size_t y() const { return y_; }
    std::size_t z_types() const { return z_; }
    std::size_t payload_type(NodeId payload) const;
    std::size_t uav_count() const;
    std::size_t usv_count() const;
    std::size_t vehicle_count() const { return struct_.node_count(); }
    std::size_t initial_vehicle_count() const { return initial_vehicles_; }

    bool is_vehicle(NodeId id) const { return classes_.count(id) != 0; }
    bool is_payload(NodeId id) const { return host_.count(id) != 0; }
    VehicleClass vehicle_class(NodeId vehicle) const;
    const Vec3& position(NodeId vehicle) const;

    NodeId host_of(NodeId payload) const;
    const std::vector<NodeId>& payloads_of(NodeId vehicle) const;
    std::size_t payload_capacity(NodeId vehicle) const {
        return vehicle_class(vehicle) == VehicleClass::UAV ? x_ : y_;
    }

    // The comm<->structure coupling bijection and its inverse.
    NodeId comm_twin(NodeId struct_node) const;
    NodeId struct_twin(NodeId comm_node) const;

    // Cross-layer coupling degree of a node as seen from `layer`:
    // payload nodes couple only to their host (1); a vehicle seen from the
    // comm or structure layer couples to its twin plus its payloads
    // (1 + x for UAV, 1 + y for USV).
    std::size_t cross_degree(Layer layer, NodeId id) const;
    std::size_t intra_degree(Layer layer, NodeId id) const;
    std::size_t total_degree(Layer layer, NodeId id) const {
        return intra_degree(layer, id) + cross_degree(layer, id);
    }

    DegreeReport degree_report() const;

    // Structure-layer subgraph induced by the phase's node set, silently
    // intersected with surviving vehicles.
    Graph active_subgraph(std::span<const NodeId> phase_nodes) const;

    // Same fleet and coupling, structure and comm layers rebuilt from the
    // given vehicle edge set (lengths recomputed from positions).
    LayeredNetwork with_topology(const std::vector<EdgeKey>& vehicle_edges) const;

    // Throws std::runtime_error naming the first violated coupling invariant.
    void validate() const;

    // Mutations used by attack operations.
    void remove_comm_edge(NodeId u, NodeId v) { comm_.remove_edge(u, v); }
    void remove_vehicle(NodeId vehicle);

private:
    Graph comm_, struct_, task_;
    std::size_t x_ = 0, y_ = 0, z_ = 1;
    std::size_t initial_vehicles_ = 0;
    std::map<NodeId, VehicleClass> classes_;
    std::map<NodeId, Vec3> positions_;
    std::map<NodeId, NodeId> host_;                     // payload -> vehicle
    std::map<NodeId, std::size_t> payload_type_;        // payload -> type label
    std::map<NodeId, std::vector<NodeId>> payloads_;    // vehicle -> payloads
    std::map<NodeId, NodeId> phi_;                      // struct -> comm
    std::map<NodeId, NodeId> phi_inv_;                  // comm -> struct
};

}  // namespace swarmres
