#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace swarmres {

using NodeId = std::uint32_t;

// Undirected edge with endpoints stored min-first so {u,v} == {v,u}.
struct EdgeKey {
    NodeId a = 0;
    NodeId b = 0;
    EdgeKey() = default;
    EdgeKey(NodeId u, NodeId v) : a(u < v ? u : v), b(u < v ? v : u) {}
    auto operator<=>(const EdgeKey&) const = default;
};

// Undirected simple graph over sparse integer ids. Node order is insertion
// order and fixes the row order of every vector/matrix derived from the
// graph. Edges may carry an optional physical length in metres.
class Graph {
public:
    Graph() = default;

    void add_node(NodeId id);
    bool has_node(NodeId id) const { return pos_.count(id) != 0; }
    void remove_node(NodeId id);

    void add_edge(NodeId u, NodeId v);
    void add_edge(NodeId u, NodeId v, double length_m);
    bool has_edge(NodeId u, NodeId v) const;
    void remove_edge(NodeId u, NodeId v);

    std::optional<double> edge_length(NodeId u, NodeId v) const;
    void set_edge_length(NodeId u, NodeId v, double length_m);

    std::size_t node_count() const { return order_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return order_.empty(); }

    const std::vector<NodeId>& nodes() const { return order_; }
    // Edges in ascending (a, b) order.
    std::vector<EdgeKey> edges() const;

    // Position of id in nodes(); throws if absent.
    std::size_t index_of(NodeId id) const;

    const std::vector<NodeId>& neighbors(NodeId id) const;
    std::size_t degree(NodeId id) const { return neighbors(id).size(); }

    bool connected() const;
    // Connected components; component order and member order follow nodes().
    std::vector<std::vector<NodeId>> components() const;
    std::vector<NodeId> largest_component() const;

    // Induced subgraph; kept nodes preserve their relative order in nodes().
    Graph induced(std::span<const NodeId> keep) const;

    // Bridge edges (removal disconnects their component).
    std::vector<EdgeKey> bridges() const;

    // Text form: one "u v [length_m]" line per edge (ascending), then one
    // bare "u" line per node with no incident edge. Lengths print with %.17g
    // so doubles round-trip exactly. The parser inserts nodes in ascending
    // id order, so a parsed graph is always in canonical order.
    std::string to_edge_list() const;
    static Graph from_edge_list(const std::string& text);

    bool operator==(const Graph& other) const;

private:
    void check_node(NodeId id, const char* op) const;

    std::vector<NodeId> order_;
    std::unordered_map<NodeId, std::size_t> pos_;
    std::unordered_map<NodeId, std::vector<NodeId>> adj_;  // sorted ascending
    std::map<EdgeKey, std::optional<double>> edges_;
};

}  // namespace swarmres
