#include "swarmres/layered.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace swarmres {

namespace {

[[noreturn]] void violated(const std::string& invariant) {
    throw std::runtime_error("layered network invariant violated: " + invariant);
}

}  // namespace

LayeredNetwork LayeredNetwork::build(std::size_t n_uav, std::size_t n_usv, std::size_t x,
                                     std::size_t y, const std::vector<Vec3>& positions,
                                     const std::vector<EdgeKey>& comm_edges,
                                     const std::vector<EdgeKey>& struct_edges,
                                     const std::vector<EdgeKey>& task_edges,
                                     std::size_t z_types) {
    const std::size_t nv = n_uav + n_usv;
    if (positions.size() != nv)
        throw std::invalid_argument("build: expected " + std::to_string(nv) +
                                    " positions, got " + std::to_string(positions.size()));
    LayeredNetwork net;
    net.x_ = x;
    net.y_ = y;
    net.z_ = z_types == 0 ? 1 : z_types;
    net.initial_vehicles_ = nv;
    for (std::size_t i = 0; i < nv; ++i) {
        NodeId id = static_cast<NodeId>(i);
        net.comm_.add_node(id);
        net.struct_.add_node(id);
        net.classes_[id] = i < n_uav ? VehicleClass::UAV : VehicleClass::USV;
        net.positions_[id] = positions[i];
        net.phi_[id] = id;
        net.phi_inv_[id] = id;
    }
    NodeId next = static_cast<NodeId>(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        NodeId v = static_cast<NodeId>(i);
        std::size_t cap = i < n_uav ? x : y;
        auto& list = net.payloads_[v];
        for (std::size_t t = 0; t < cap; ++t) {
            net.task_.add_node(next);
            net.host_[next] = v;
            net.payload_type_[next] = t % net.z_;
            list.push_back(next);
            ++next;
        }
    }
    auto add_vehicle_edge = [&](Graph& g, const EdgeKey& e, const char* layer) {
        if (!g.has_node(e.a) || !g.has_node(e.b))
            throw std::invalid_argument(std::string("build: ") + layer + " edge " +
                                        std::to_string(e.a) + "-" + std::to_string(e.b) +
                                        " references a non-vehicle id");
        g.add_edge(e.a, e.b, distance(net.positions_.at(e.a), net.positions_.at(e.b)));
    };
    for (const EdgeKey& e : comm_edges) add_vehicle_edge(net.comm_, e, "comm");
    for (const EdgeKey& e : struct_edges) add_vehicle_edge(net.struct_, e, "struct");
    for (const EdgeKey& e : task_edges) {
        if (!net.task_.has_node(e.a) || !net.task_.has_node(e.b))
            throw std::invalid_argument("build: task edge " + std::to_string(e.a) + "-" +
                                        std::to_string(e.b) + " references a non-payload id");
        net.task_.add_edge(e.a, e.b);
    }
    return net;
}

LayeredNetwork LayeredNetwork::wrap(const Graph& g) {
    LayeredNetwork net;
    net.comm_ = g;
    net.struct_ = g;
    net.x_ = 0;
    net.y_ = 0;
    net.z_ = 1;
    net.initial_vehicles_ = g.node_count();
    for (NodeId v : g.nodes()) {
        net.classes_[v] = VehicleClass::USV;
        net.positions_[v] = Vec3{};
        net.phi_[v] = v;
        net.phi_inv_[v] = v;
        net.payloads_[v];
    }
    return net;
}

std::size_t LayeredNetwork::payload_type(NodeId payload) const {
    auto it = payload_type_.find(payload);
    if (it == payload_type_.end())
        throw std::invalid_argument("payload_type: unknown payload " + std::to_string(payload));
    return it->second;
}

std::size_t LayeredNetwork::uav_count() const {
    std::size_t c = 0;
    for (const auto& [v, cls] : classes_)
        if (cls == VehicleClass::UAV) ++c;
    return c;
}

std::size_t LayeredNetwork::usv_count() const { return classes_.size() - uav_count(); }

VehicleClass LayeredNetwork::vehicle_class(NodeId vehicle) const {
    auto it = classes_.find(vehicle);
    if (it == classes_.end())
        throw std::invalid_argument("vehicle_class: unknown vehicle " + std::to_string(vehicle));
    return it->second;
}

const Vec3& LayeredNetwork::position(NodeId vehicle) const {
    auto it = positions_.find(vehicle);
    if (it == positions_.end())
        throw std::invalid_argument("position: unknown vehicle " + std::to_string(vehicle));
    return it->second;
}

NodeId LayeredNetwork::host_of(NodeId payload) const {
    auto it = host_.find(payload);
    if (it == host_.end())
        throw std::invalid_argument("host_of: unknown payload " + std::to_string(payload));
    return it->second;
}

const std::vector<NodeId>& LayeredNetwork::payloads_of(NodeId vehicle) const {
    auto it = payloads_.find(vehicle);
    if (it == payloads_.end())
        throw std::invalid_argument("payloads_of: unknown vehicle " + std::to_string(vehicle));
    return it->second;
}

NodeId LayeredNetwork::comm_twin(NodeId struct_node) const {
    auto it = phi_.find(struct_node);
    if (it == phi_.end())
        throw std::invalid_argument("comm_twin: unknown structure node " +
                                    std::to_string(struct_node));
    return it->second;
}

NodeId LayeredNetwork::struct_twin(NodeId comm_node) const {
    auto it = phi_inv_.find(comm_node);
    if (it == phi_inv_.end())
        throw std::invalid_argument("struct_twin: unknown comm node " +
                                    std::to_string(comm_node));
    return it->second;
}

std::size_t LayeredNetwork::cross_degree(Layer layer, NodeId id) const {
    if (layer == Layer::Task) {
        if (!task_.has_node(id))
            throw std::invalid_argument("cross_degree: unknown task node " + std::to_string(id));
        return 1;  // host only
    }
    const Graph& g = layer == Layer::Comm ? comm_ : struct_;
    if (!g.has_node(id))
        throw std::invalid_argument("cross_degree: unknown vehicle " + std::to_string(id));
    return 1 + payload_capacity(id);
}

std::size_t LayeredNetwork::intra_degree(Layer layer, NodeId id) const {
    const Graph& g = layer == Layer::Comm ? comm_ : layer == Layer::Struct ? struct_ : task_;
    return g.degree(id);
}

DegreeReport LayeredNetwork::degree_report() const {
    DegreeReport r;
    auto add_layer = [&](Layer layer, const Graph& g) {
        for (NodeId id : g.nodes()) {
            DegreeEntry e;
            e.layer = layer;
            e.id = id;
            e.intra = intra_degree(layer, id);
            e.cross = cross_degree(layer, id);
            e.total = e.intra + e.cross;
            r.cross_degree_sum += static_cast<double>(e.cross);
            r.entries.push_back(e);
        }
    };
    add_layer(Layer::Comm, comm_);
    add_layer(Layer::Struct, struct_);
    add_layer(Layer::Task, task_);
    r.cross_link_tally = r.cross_degree_sum / 2.0;

    std::size_t total_sum = 0, max_deg = 0;
    for (const DegreeEntry& e : r.entries) {
        total_sum += e.total;
        max_deg = std::max(max_deg, e.total);
    }
    r.average_degree = r.entries.empty()
                           ? 0.0
                           : static_cast<double>(total_sum) / static_cast<double>(r.entries.size());
    r.cumulative.assign(max_deg + 2, 0.0);
    if (r.entries.empty()) {
        r.cumulative = {1.0};
    } else {
        std::vector<std::size_t> at_least(max_deg + 2, 0);
        for (const DegreeEntry& e : r.entries)
            for (std::size_t k = 0; k <= e.total; ++k) ++at_least[k];
        for (std::size_t k = 0; k < r.cumulative.size(); ++k)
            r.cumulative[k] =
                static_cast<double>(at_least[k]) / static_cast<double>(r.entries.size());
    }
    return r;
}

Graph LayeredNetwork::active_subgraph(std::span<const NodeId> phase_nodes) const {
    std::vector<NodeId> live;
    for (NodeId v : phase_nodes)
        if (struct_.has_node(v)) live.push_back(v);
    return struct_.induced(live);
}

LayeredNetwork LayeredNetwork::with_topology(const std::vector<EdgeKey>& vehicle_edges) const {
    LayeredNetwork net = *this;
    Graph blank_comm, blank_struct;
    for (NodeId v : struct_.nodes()) blank_struct.add_node(v);
    for (NodeId v : comm_.nodes()) blank_comm.add_node(v);
    net.struct_ = std::move(blank_struct);
    net.comm_ = std::move(blank_comm);
    for (const EdgeKey& e : vehicle_edges) {
        double d = distance(position(e.a), position(e.b));
        net.struct_.add_edge(e.a, e.b, d);
        net.comm_.add_edge(e.a, e.b, d);
    }
    return net;
}

void LayeredNetwork::remove_vehicle(NodeId vehicle) {
    if (!struct_.has_node(vehicle))
        throw std::invalid_argument("remove_vehicle: unknown vehicle " + std::to_string(vehicle));
    comm_.remove_node(phi_.at(vehicle));
    struct_.remove_node(vehicle);
    for (NodeId p : payloads_.at(vehicle)) {
        task_.remove_node(p);
        host_.erase(p);
        payload_type_.erase(p);
    }
    payloads_.erase(vehicle);
    phi_inv_.erase(phi_.at(vehicle));
    phi_.erase(vehicle);
    classes_.erase(vehicle);
    positions_.erase(vehicle);
}

void LayeredNetwork::validate() const {
    if (comm_.node_count() != struct_.node_count())
        violated("comm and structure layers must hold the same number of vehicles");
    if (phi_.size() != struct_.node_count() || phi_inv_.size() != comm_.node_count())
        violated("comm<->structure coupling must map every vehicle exactly once");
    for (NodeId s : struct_.nodes()) {
        auto it = phi_.find(s);
        if (it == phi_.end()) violated("structure node " + std::to_string(s) + " has no comm twin");
        if (!comm_.has_node(it->second))
            violated("comm twin of structure node " + std::to_string(s) + " is missing");
        auto inv = phi_inv_.find(it->second);
        if (inv == phi_inv_.end() || inv->second != s)
            violated("comm<->structure coupling is not a bijection at node " + std::to_string(s));
    }
    for (NodeId v : struct_.nodes()) {
        if (!classes_.count(v)) violated("vehicle " + std::to_string(v) + " has no class");
        if (!positions_.count(v)) violated("vehicle " + std::to_string(v) + " has no position");
        if (classes_.at(v) == VehicleClass::USV && positions_.at(v).z != 0.0)
            violated("surface vehicle " + std::to_string(v) + " must sit at z = 0");
        auto it = payloads_.find(v);
        std::size_t count = it == payloads_.end() ? 0 : it->second.size();
        if (count != payload_capacity(v))
            violated("vehicle " + std::to_string(v) + " hosts " + std::to_string(count) +
                     " payloads, expected " + std::to_string(payload_capacity(v)));
        if (it != payloads_.end())
            for (NodeId p : it->second) {
                if (!task_.has_node(p))
                    violated("payload " + std::to_string(p) + " missing from task layer");
                if (host_.at(p) != v)
                    violated("payload " + std::to_string(p) + " host map mismatch");
            }
    }
    for (NodeId t : task_.nodes()) {
        auto it = host_.find(t);
        if (it == host_.end()) violated("task node " + std::to_string(t) + " has no host");
        if (!struct_.has_node(it->second))
            violated("task node " + std::to_string(t) + " hosted on a dead vehicle");
        if (struct_.has_node(t) || comm_.has_node(t))
            violated("payload id " + std::to_string(t) + " reused as a vehicle id");
    }
    if (host_.size() != task_.node_count())
        violated("host map size must match the task layer");
}

}  // namespace swarmres
