#include "swarmres/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace swarmres {

void GcnModel::validate() const {
    if (weights.empty()) throw std::invalid_argument("GcnModel: need at least one layer");
    for (std::size_t l = 1; l < weights.size(); ++l)
        if (weights[l - 1].cols() != weights[l].rows())
            throw std::invalid_argument("GcnModel: layer " + std::to_string(l) +
                                        " input dim " + std::to_string(weights[l].rows()) +
                                        " does not match previous output " +
                                        std::to_string(weights[l - 1].cols()));
    if (!fanouts.empty() && fanouts.size() != weights.size())
        throw std::invalid_argument("GcnModel: fanouts must be empty or one per layer");
}

GcnModel make_gcn(const std::vector<std::size_t>& dims, RngStream& rng,
                  const std::vector<std::size_t>& fanouts) {
    if (dims.size() < 2) throw std::invalid_argument("make_gcn: need at least in/out dims");
    GcnModel m;
    m.fanouts = fanouts;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        auto rows = static_cast<Eigen::Index>(dims[l]);
        auto cols = static_cast<Eigen::Index>(dims[l + 1]);
        double bound = std::sqrt(6.0 / static_cast<double>(dims[l] + dims[l + 1]));
        Eigen::MatrixXd w(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) w(i, j) = rng.uniform(-bound, bound);
        m.weights.push_back(std::move(w));
    }
    m.validate();
    return m;
}

namespace {

// Normalized aggregation H' = D^-1/2 (A+I) D^-1/2 H over an explicit
// neighbor-list view, so the implementation route differs from a dense
// matrix-product oracle.
Eigen::MatrixXd aggregate(const std::vector<std::vector<std::size_t>>& adj,
                          const Eigen::MatrixXd& h) {
    const std::size_t n = adj.size();
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_sqrt[i] = 1.0 / std::sqrt(static_cast<double>(adj[i].size() + 1));
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(h.rows(), h.cols());
    for (std::size_t i = 0; i < n; ++i) {
        auto ei = static_cast<Eigen::Index>(i);
        out.row(ei) = inv_sqrt[i] * inv_sqrt[i] * h.row(ei);  // self loop
        for (std::size_t j : adj[i]) out.row(ei) += inv_sqrt[i] * inv_sqrt[j] * h.row(static_cast<Eigen::Index>(j));
    }
    return out;
}

std::vector<std::vector<std::size_t>> index_adjacency(const Graph& g) {
    const auto& nodes = g.nodes();
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (NodeId v : g.neighbors(nodes[i])) adj[i].push_back(g.index_of(v));
    return adj;
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& z) {
    Eigen::MatrixXd p(z.rows(), z.cols());
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        double mx = z.row(i).maxCoeff();
        Eigen::ArrayXd e = (z.row(i).array() - mx).exp();
        p.row(i) = (e / e.sum()).matrix();
    }
    return p;
}

void check_features(const GcnModel& model, const Graph& g, const Eigen::MatrixXd& features) {
    model.validate();
    if (static_cast<std::size_t>(features.rows()) != g.node_count())
        throw std::invalid_argument("gcn: feature rows " + std::to_string(features.rows()) +
                                    " != node count " + std::to_string(g.node_count()));
    if (static_cast<std::size_t>(features.cols()) != model.in_dim())
        throw std::invalid_argument("gcn: feature dim " + std::to_string(features.cols()) +
                                    " != model input dim " + std::to_string(model.in_dim()));
}

}  // namespace

Eigen::MatrixXd gcn_forward(const GcnModel& model, const Graph& g,
                            const Eigen::MatrixXd& features) {
    check_features(model, g, features);
    auto adj = index_adjacency(g);
    Eigen::MatrixXd h = features;
    for (const Eigen::MatrixXd& w : model.weights)
        h = (aggregate(adj, h) * w).cwiseMax(0.0);
    return h;
}

std::vector<NodeId> neighbor_sample(const Graph& g, NodeId v, std::size_t k, RngStream& rng) {
    const auto& nb = g.neighbors(v);
    if (k >= nb.size()) return nb;
    std::vector<std::size_t> pick = rng.sample_indices(nb.size(), k);
    std::vector<NodeId> out;
    out.reserve(k);
    for (std::size_t i : pick) out.push_back(nb[i]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> gcn_predict(const GcnModel& model, const Graph& g,
                             const Eigen::MatrixXd& features) {
    Eigen::MatrixXd h = gcn_forward(model, g, features);
    std::vector<int> out(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        Eigen::Index best;
        h.row(i).maxCoeff(&best);
        out[i] = static_cast<int>(best);
    }
    return out;
}

namespace {

double train_loss(const GcnModel& model, const Graph& g, const Eigen::MatrixXd& features,
                  const std::vector<int>& labels) {
    Eigen::MatrixXd p = softmax_rows(gcn_forward(model, g, features));
    double loss = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0) continue;
        loss -= std::log(std::max(p(static_cast<Eigen::Index>(i), labels[i]), 1e-300));
        ++count;
    }
    return count ? loss / static_cast<double>(count) : 0.0;
}

// Sampled symmetric adjacency for one batch and one layer: u keeps v if v
// was among u's draws or u among v's; self loops are implicit in aggregate().
std::vector<std::vector<std::size_t>> sampled_adjacency(const Graph& g, std::size_t fanout,
                                                        RngStream& rng) {
    const auto& nodes = g.nodes();
    std::vector<std::set<std::size_t>> keep(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (NodeId v : neighbor_sample(g, nodes[i], fanout, rng)) {
            std::size_t j = g.index_of(v);
            keep[i].insert(j);
            keep[j].insert(i);
        }
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) adj[i].assign(keep[i].begin(), keep[i].end());
    return adj;
}

}  // namespace

GcnTrainResult gcn_train(const GcnModel& model, const Graph& g,
                         const Eigen::MatrixXd& features, const std::vector<int>& labels,
                         std::size_t epochs, std::size_t batch, double lr, double momentum,
                         RngStream& rng) {
    check_features(model, g, features);
    if (labels.size() != g.node_count())
        throw std::invalid_argument("gcn_train: one label per node required");
    const int classes = static_cast<int>(model.classes());
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0) continue;
        if (labels[i] >= classes)
            throw std::invalid_argument("gcn_train: label " + std::to_string(labels[i]) +
                                        " outside 0.." + std::to_string(classes - 1));
        train_idx.push_back(i);
    }
    if (train_idx.empty()) throw std::invalid_argument("gcn_train: empty training set");
    if (batch == 0) batch = train_idx.size();

    GcnTrainResult res;
    res.model = model;
    res.initial_loss = train_loss(res.model, g, features, labels);

    const std::size_t L = res.model.layer_count();
    auto full_adj = index_adjacency(g);
    std::size_t max_deg = 0;
    for (const auto& a : full_adj) max_deg = std::max(max_deg, a.size());

    std::vector<Eigen::MatrixXd> velocity;
    for (const auto& w : res.model.weights) velocity.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));

    RngStream order_rng = rng.derive("batch-order");
    RngStream sample_rng = rng.derive("neighbor-sampling");

    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        std::vector<std::size_t> order = train_idx;
        order_rng.shuffle(order);
        for (std::size_t start = 0; start < order.size(); start += batch) {
            std::size_t stop = std::min(order.size(), start + batch);

            // Per-layer propagation views for this batch.
            std::vector<const std::vector<std::vector<std::size_t>>*> adj_views(L, &full_adj);
            std::vector<std::vector<std::vector<std::size_t>>> sampled;
            sampled.reserve(L);
            for (std::size_t l = 0; l < L; ++l) {
                std::size_t fan = res.model.fanouts.empty() ? 0 : res.model.fanouts[l];
                if (fan > 0 && fan < max_deg) {
                    sampled.push_back(sampled_adjacency(g, fan, sample_rng));
                    adj_views[l] = &sampled.back();
                }
            }

            // Forward, keeping pre-activations for backprop.
            std::vector<Eigen::MatrixXd> h(L + 1), z(L);
            h[0] = features;
            for (std::size_t l = 0; l < L; ++l) {
                z[l] = aggregate(*adj_views[l], h[l]) * res.model.weights[l];
                h[l + 1] = z[l].cwiseMax(0.0);
            }

            Eigen::MatrixXd p = softmax_rows(h[L]);
            Eigen::MatrixXd grad_h = Eigen::MatrixXd::Zero(p.rows(), p.cols());
            double inv_b = 1.0 / static_cast<double>(stop - start);
            for (std::size_t t = start; t < stop; ++t) {
                auto i = static_cast<Eigen::Index>(order[t]);
                grad_h.row(i) = p.row(i) * inv_b;
                grad_h(i, labels[order[t]]) -= inv_b;
            }

            for (std::size_t l = L; l-- > 0;) {
                Eigen::MatrixXd grad_z =
                    grad_h.cwiseProduct((z[l].array() > 0.0).cast<double>().matrix());
                Eigen::MatrixXd agg_h = aggregate(*adj_views[l], h[l]);
                Eigen::MatrixXd grad_w = agg_h.transpose() * grad_z;
                if (l > 0)  // the propagation matrix is symmetric
                    grad_h = aggregate(*adj_views[l], grad_z * res.model.weights[l].transpose());
                velocity[l] = momentum * velocity[l] - lr * grad_w;
                res.model.weights[l] += velocity[l];
            }
        }
        res.epoch_loss.push_back(train_loss(res.model, g, features, labels));
    }
    res.final_loss = res.epoch_loss.empty() ? res.initial_loss : res.epoch_loss.back();
    return res;
}

std::vector<int> ni_quantile_labels(const CriticalityReport& report, std::size_t classes) {
    if (classes == 0) throw std::invalid_argument("ni_quantile_labels: need classes >= 1");
    const std::size_t n = report.nodes.size();
    std::vector<int> labels(n, 0);
    // ranking is NI-descending; bucket by position so class counts are even.
    for (std::size_t pos = 0; pos < report.ranking.size(); ++pos) {
        std::size_t i = std::find(report.nodes.begin(), report.nodes.end(), report.ranking[pos]) -
                        report.nodes.begin();
        std::size_t from_bottom = n - 1 - pos;
        labels[i] = static_cast<int>(std::min(classes - 1, from_bottom * classes / n));
    }
    return labels;
}

GcnModel GcnModel::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    GcnModel m;
    for (const auto& layer : j.at("layers")) {
        auto rows = layer.at("rows").get<Eigen::Index>();
        auto cols = layer.at("cols").get<Eigen::Index>();
        const auto& data = layer.at("data");
        if (static_cast<Eigen::Index>(data.size()) != rows * cols)
            throw std::invalid_argument("GcnModel: weight payload size mismatch");
        Eigen::MatrixXd w(rows, cols);
        std::size_t k = 0;
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index jx = 0; jx < cols; ++jx) w(i, jx) = data[k++].get<double>();
        m.weights.push_back(std::move(w));
    }
    if (j.contains("fanouts")) m.fanouts = j.at("fanouts").get<std::vector<std::size_t>>();
    m.validate();
    return m;
}

std::string GcnModel::to_json() const {
    nlohmann::json j;
    j["layers"] = nlohmann::json::array();
    for (const auto& w : weights) {
        nlohmann::json layer;
        layer["rows"] = w.rows();
        layer["cols"] = w.cols();
        nlohmann::json data = nlohmann::json::array();
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index jx = 0; jx < w.cols(); ++jx) data.push_back(w(i, jx));
        layer["data"] = std::move(data);
        j["layers"].push_back(std::move(layer));
    }
    j["fanouts"] = fanouts;
    return j.dump(2);
}

}  // namespace swarmres
