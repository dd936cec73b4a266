#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "swarmres/criticality.hpp"
#include "swarmres/graph.hpp"
#include "swarmres/rng.hpp"

namespace swarmres {

// Plain graph-convolution stack: H^(l+1) = relu(D^-1/2 (A+I) D^-1/2 H^(l) W^(l))
// applied once per weight matrix. The last layer's width is the class count;
// training puts a softmax on the final (rectified) embeddings. fanouts[l]
// caps the neighbors aggregated per node during training batches (0 = no
// sampling); inference always uses the full neighborhood.
struct GcnModel {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<std::size_t> fanouts;

    std::size_t layer_count() const { return weights.size(); }
    std::size_t in_dim() const { return weights.empty() ? 0 : weights.front().rows(); }
    std::size_t classes() const { return weights.empty() ? 0 : weights.back().cols(); }
    void validate() const;

    std::string to_json() const;
    static GcnModel from_json(const std::string& text);
};

// Glorot-uniform initialization; dims = {in, hidden..., classes}.
GcnModel make_gcn(const std::vector<std::size_t>& dims, RngStream& rng,
                  const std::vector<std::size_t>& fanouts = {});

// Deterministic full-neighborhood forward pass; rows follow g.nodes().
Eigen::MatrixXd gcn_forward(const GcnModel& model, const Graph& g,
                            const Eigen::MatrixXd& features);

// Uniform sample without replacement of min(k, deg) neighbors, ascending ids.
std::vector<NodeId> neighbor_sample(const Graph& g, NodeId v, std::size_t k, RngStream& rng);

// argmax class per node from the softmax over final embeddings.
std::vector<int> gcn_predict(const GcnModel& model, const Graph& g,
                             const Eigen::MatrixXd& features);

struct GcnTrainResult {
    GcnModel model;
    std::vector<double> epoch_loss;  // full-propagation train loss per epoch
    double initial_loss = 0.0;
    double final_loss = 0.0;
};

// Mini-batch momentum SGD on softmax cross-entropy. labels are 0-based
// classes aligned with g.nodes(); entries < 0 are excluded from training
// (held-out). Per-batch neighbor sampling follows model.fanouts.
GcnTrainResult gcn_train(const GcnModel& model, const Graph& g,
                         const Eigen::MatrixXd& features, const std::vector<int>& labels,
                         std::size_t epochs, std::size_t batch, double lr, double momentum,
                         RngStream& rng);

// Synthetic teacher labels: NI quantile buckets (0 = lowest quartile band).
std::vector<int> ni_quantile_labels(const CriticalityReport& report, std::size_t classes);

}  // namespace swarmres
