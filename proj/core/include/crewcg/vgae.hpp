#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <utility>
#include <vector>

#include "crewcg/graph_features.hpp"

namespace crewcg {

struct VgaeConfig {
    int hidden_dim = 32;
    int latent_dim = 16;
    int epochs = 100;
    double learning_rate = 0.03;
    double early_stop_roc = 0.9;
    unsigned seed = 1;
    bool use_adam = true;          // plain gradient descent when false
    double holdout_fraction = 0.1; // share of positive edges held out for ROC

    void validate() const;
};

/// Two-layer GCN encoder to a diagonal Gaussian over node embeddings, plus
/// the posterior produced by the last encode. Weights: W0 (input x hidden),
/// Wmu / Wlogsigma (hidden x latent).
struct VgaeModel {
    Eigen::MatrixXd w0;
    Eigen::MatrixXd w_mu;
    Eigen::MatrixXd w_logsigma;
    Eigen::MatrixXd norm_adj;   // symmetric propagation matrix
    Eigen::MatrixXd mu;         // |F| x latent
    Eigen::MatrixXd logsigma;   // |F| x latent
    double roc = 0.0;           // held-out ROC after training
    int epochs_run = 0;

    void dump_weights(std::ostream& out) const;
};

struct ScoredPair {
    int i = 0;
    int j = 0;
    double score = 0.0;  // strictly inside (0, 1)
};

/// Decoder scores over negative pairs, sorted by descending score (ties by
/// pair order).
struct PredictionSet {
    std::vector<ScoredPair> pairs;
};

/// D^{-1/2} (S + I) D^{-1/2} where S symmetrizes the global adjacency and D
/// is the degree of S + I. An empty graph yields the identity.
Eigen::MatrixXd normalize_adjacency(const GlobalAdjacency& global);

/// H = relu(A F W0); mu = A H Wmu; logsigma = A H Wlogsigma. Fills
/// model.mu / model.logsigma. Throws on shape mismatch.
void encode(VgaeModel& model, const Eigen::MatrixXd& features);

/// Inner-product decoder: sigmoid(z z^T), entries in (0, 1), symmetric.
Eigen::MatrixXd decode(const Eigen::MatrixXd& z);

/// Reconstruction target and loss weighting for one training problem.
struct VgaeProblem {
    Eigen::MatrixXd norm_adj;
    Eigen::MatrixXd features;
    Eigen::MatrixXd labels;  // 0/1; only entries of `domain` are read
    std::vector<std::pair<int, int>> domain;
    double pos_weight = 1.0;   // BCE weight on label-1 pairs
    double recon_scale = 1.0;  // usually 1/|domain|
};

struct VgaeGradients {
    Eigen::MatrixXd w0;
    Eigen::MatrixXd w_mu;
    Eigen::MatrixXd w_logsigma;
};

struct LossBreakdown {
    double total = 0.0;
    double recon = 0.0;
    double kl = 0.0;  // always >= 0
};

/// Positive-weighted binary cross-entropy over the pair domain plus
/// KL(q(z) || N(0, I)) scaled by 0.5/|F|^2, evaluated at the given posterior
/// and sample z.
LossBreakdown vgae_loss(const VgaeProblem& problem, const Eigen::MatrixXd& mu,
                        const Eigen::MatrixXd& logsigma, const Eigen::MatrixXd& z);

/// Full forward pass from the model weights with reparameterized sample
/// z = mu + exp(logsigma) .* eps; when `grads` is non-null, fills the
/// backpropagated gradient of the loss for every weight block.
LossBreakdown vgae_forward(const VgaeModel& model, const VgaeProblem& problem,
                           const Eigen::MatrixXd& eps, VgaeGradients* grads);

struct TrainOptions {
    std::ostream* epoch_log = nullptr;  // CSV: epoch,loss,recon,kl,roc
    const std::vector<std::pair<int, int>>* domain = nullptr;  // default: full upper triangle
};

/// Trains a fresh model on the global adjacency: seeded Glorot init, one
/// gradient step per epoch, held-out ROC after each epoch, early stop at
/// config.early_stop_roc. Deterministic for a fixed seed.
VgaeModel train(const VgaeConfig& config, const GlobalAdjacency& global, const FeatureMatrix& features,
                const TrainOptions& options = {});

/// Area under the ROC curve by rank statistic; ties count half.
double auc_score(const std::vector<double>& positive_scores, const std::vector<double>& negative_scores);

/// ROC of the model's (deterministic, mu-based) scores on held-out positive
/// pairs versus sampled negative pairs. Throws if either set is empty.
double evaluate_roc(const VgaeModel& model, const std::vector<std::pair<int, int>>& held_out_positives,
                    const std::vector<std::pair<int, int>>& sampled_negatives);

/// Scores every pair of `negatives` from the posterior mean, sorted
/// descending. No sampling, so repeat calls agree.
PredictionSet predict_negatives(const VgaeModel& model, const std::vector<std::pair<int, int>>& negatives);

}  // namespace crewcg
