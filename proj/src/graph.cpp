#include "swarmres/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace swarmres {

void Graph::check_node(NodeId id, const char* op) const {
    if (!has_node(id))
        throw std::invalid_argument(std::string(op) + ": unknown node " + std::to_string(id));
}

void Graph::add_node(NodeId id) {
    if (has_node(id))
        throw std::invalid_argument("add_node: duplicate node " + std::to_string(id));
    pos_[id] = order_.size();
    order_.push_back(id);
    adj_[id];
}

void Graph::remove_node(NodeId id) {
    check_node(id, "remove_node");
    std::vector<NodeId> nb = adj_[id];
    for (NodeId v : nb) remove_edge(id, v);
    adj_.erase(id);
    order_.erase(order_.begin() + static_cast<std::ptrdiff_t>(pos_[id]));
    pos_.erase(id);
    for (std::size_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = i;
}

void Graph::add_edge(NodeId u, NodeId v) {
    check_node(u, "add_edge");
    check_node(v, "add_edge");
    if (u == v) throw std::invalid_argument("add_edge: self loop at node " + std::to_string(u));
    EdgeKey k(u, v);
    if (edges_.count(k))
        throw std::invalid_argument("add_edge: duplicate edge " + std::to_string(u) + "-" +
                                    std::to_string(v));
    edges_[k] = std::nullopt;
    auto& au = adj_[u];
    au.insert(std::lower_bound(au.begin(), au.end(), v), v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

void Graph::add_edge(NodeId u, NodeId v, double length_m) {
    if (length_m < 0.0)
        throw std::invalid_argument("add_edge: negative length on edge " + std::to_string(u) +
                                    "-" + std::to_string(v));
    add_edge(u, v);
    edges_[EdgeKey(u, v)] = length_m;
}

bool Graph::has_edge(NodeId u, NodeId v) const { return edges_.count(EdgeKey(u, v)) != 0; }

void Graph::remove_edge(NodeId u, NodeId v) {
    EdgeKey k(u, v);
    auto it = edges_.find(k);
    if (it == edges_.end())
        throw std::invalid_argument("remove_edge: no edge " + std::to_string(u) + "-" +
                                    std::to_string(v));
    edges_.erase(it);
    auto& au = adj_[u];
    au.erase(std::lower_bound(au.begin(), au.end(), v));
    auto& av = adj_[v];
    av.erase(std::lower_bound(av.begin(), av.end(), u));
}

std::optional<double> Graph::edge_length(NodeId u, NodeId v) const {
    auto it = edges_.find(EdgeKey(u, v));
    if (it == edges_.end())
        throw std::invalid_argument("edge_length: no edge " + std::to_string(u) + "-" +
                                    std::to_string(v));
    return it->second;
}

void Graph::set_edge_length(NodeId u, NodeId v, double length_m) {
    if (length_m < 0.0)
        throw std::invalid_argument("set_edge_length: negative length on edge " +
                                    std::to_string(u) + "-" + std::to_string(v));
    auto it = edges_.find(EdgeKey(u, v));
    if (it == edges_.end())
        throw std::invalid_argument("set_edge_length: no edge " + std::to_string(u) + "-" +
                                    std::to_string(v));
    it->second = length_m;
}

std::vector<EdgeKey> Graph::edges() const {
    std::vector<EdgeKey> out;
    out.reserve(edges_.size());
    for (const auto& [k, len] : edges_) out.push_back(k);
    return out;
}

std::size_t Graph::index_of(NodeId id) const {
    auto it = pos_.find(id);
    if (it == pos_.end())
        throw std::invalid_argument("index_of: unknown node " + std::to_string(id));
    return it->second;
}

const std::vector<NodeId>& Graph::neighbors(NodeId id) const {
    auto it = adj_.find(id);
    if (it == adj_.end())
        throw std::invalid_argument("neighbors: unknown node " + std::to_string(id));
    return it->second;
}

std::vector<std::vector<NodeId>> Graph::components() const {
    std::vector<std::vector<NodeId>> comps;
    std::unordered_map<NodeId, bool> seen;
    for (NodeId s : order_) {
        if (seen[s]) continue;
        std::vector<NodeId> comp, stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (NodeId v : neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end(),
                  [this](NodeId a, NodeId b) { return index_of(a) < index_of(b); });
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool Graph::connected() const {
    if (order_.size() <= 1) return true;
    return components().size() == 1;
}

std::vector<NodeId> Graph::largest_component() const {
    std::vector<NodeId> best;
    for (auto& c : components())
        if (c.size() > best.size()) best = c;
    return best;
}

Graph Graph::induced(std::span<const NodeId> keep) const {
    std::set<NodeId> want(keep.begin(), keep.end());
    Graph g;
    for (NodeId id : order_)
        if (want.count(id)) {
            if (!has_node(id)) continue;
            g.add_node(id);
        }
    for (NodeId id : want)
        if (!has_node(id))
            throw std::invalid_argument("induced: unknown node " + std::to_string(id));
    for (const auto& [k, len] : edges_)
        if (want.count(k.a) && want.count(k.b)) {
            if (len)
                g.add_edge(k.a, k.b, *len);
            else
                g.add_edge(k.a, k.b);
        }
    return g;
}

namespace {

struct BridgeState {
    const Graph* g;
    std::unordered_map<NodeId, int> disc, low;
    int timer = 0;
    std::vector<EdgeKey> out;

    void dfs(NodeId u, NodeId parent, bool has_parent) {
        disc[u] = low[u] = timer++;
        bool skipped_parent = false;
        for (NodeId v : g->neighbors(u)) {
            if (has_parent && v == parent && !skipped_parent) {
                skipped_parent = true;  // one parent edge only; graph is simple
                continue;
            }
            auto it = disc.find(v);
            if (it == disc.end()) {
                dfs(v, u, true);
                low[u] = std::min(low[u], low[v]);
                if (low[v] > disc[u]) out.emplace_back(u, v);
            } else {
                low[u] = std::min(low[u], it->second);
            }
        }
    }
};

}  // namespace

std::vector<EdgeKey> Graph::bridges() const {
    BridgeState st;
    st.g = this;
    for (NodeId s : order_)
        if (!st.disc.count(s)) st.dfs(s, 0, false);
    std::sort(st.out.begin(), st.out.end());
    return st.out;
}

std::string Graph::to_edge_list() const {
    std::string out;
    char buf[80];
    for (const auto& [k, len] : edges_) {
        if (len)
            std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", k.a, k.b, *len);
        else
            std::snprintf(buf, sizeof(buf), "%u %u\n", k.a, k.b);
        out += buf;
    }
    for (NodeId id : order_)
        if (degree(id) == 0) {
            std::snprintf(buf, sizeof(buf), "%u\n", id);
            out += buf;
        }
    return out;
}

Graph Graph::from_edge_list(const std::string& text) {
    struct Line {
        NodeId u, v;
        std::optional<double> len;
        bool lone;
    };
    std::vector<Line> lines;
    std::set<NodeId> ids;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view sv(raw);
        if (auto p = sv.find('#'); p != std::string_view::npos) sv = sv.substr(0, p);
        std::istringstream ls{std::string(sv)};
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        auto parse_id = [&](const std::string& s) -> NodeId {
            std::size_t used = 0;
            long long v = -1;
            try {
                v = std::stoll(s, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != s.size() || v < 0 || v > 0xffffffffLL)
                throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                            ": bad node id '" + s + "'");
            return static_cast<NodeId>(v);
        };
        Line ln{};
        if (tok.size() == 1) {
            ln.u = ln.v = parse_id(tok[0]);
            ln.lone = true;
        } else if (tok.size() == 2 || tok.size() == 3) {
            ln.u = parse_id(tok[0]);
            ln.v = parse_id(tok[1]);
            ln.lone = false;
            if (ln.u == ln.v)
                throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                            ": self loop");
            if (tok.size() == 3) {
                std::size_t used = 0;
                double d = 0.0;
                try {
                    d = std::stod(tok[2], &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != tok[2].size())
                    throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                                ": bad length '" + tok[2] + "'");
                ln.len = d;
            }
        } else {
            throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                        ": expected 1-3 fields, got " +
                                        std::to_string(tok.size()));
        }
        ids.insert(ln.u);
        ids.insert(ln.v);
        lines.push_back(ln);
    }
    Graph g;
    for (NodeId id : ids) g.add_node(id);
    for (const auto& ln : lines) {
        if (ln.lone) continue;
        if (g.has_edge(ln.u, ln.v))
            throw std::invalid_argument("edge list: duplicate edge " + std::to_string(ln.u) +
                                        "-" + std::to_string(ln.v));
        if (ln.len)
            g.add_edge(ln.u, ln.v, *ln.len);
        else
            g.add_edge(ln.u, ln.v);
    }
    return g;
}

bool Graph::operator==(const Graph& other) const {
    return order_ == other.order_ && edges_ == other.edges_;
}

}  // namespace swarmres
