#include "crewcg/vgae.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

namespace crewcg {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

Eigen::MatrixXd glorot_init(Eigen::Index rows, Eigen::Index cols, std::mt19937& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> dist(-limit, limit);
    Eigen::MatrixXd w(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) w(i, j) = dist(rng);
    }
    return w;
}

Eigen::MatrixXd standard_normal(Eigen::Index rows, Eigen::Index cols, std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    }
    return m;
}

struct AdamState {
    Eigen::MatrixXd m;
    Eigen::MatrixXd v;

    explicit AdamState(const Eigen::MatrixXd& like)
        : m(Eigen::MatrixXd::Zero(like.rows(), like.cols())),
          v(Eigen::MatrixXd::Zero(like.rows(), like.cols())) {}

    void step(Eigen::MatrixXd& w, const Eigen::MatrixXd& grad, double lr, long t) {
        constexpr double beta1 = 0.9;
        constexpr double beta2 = 0.999;
        constexpr double eps = 1e-8;
        m = beta1 * m + (1.0 - beta1) * grad;
        v = beta2 * v.array().matrix() + (1.0 - beta2) * grad.array().square().matrix();
        const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
        const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
        w.array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + eps);
    }
};

double mu_pair_score(const VgaeModel& model, int i, int j) {
    return sigmoid(model.mu.row(i).dot(model.mu.row(j)));
}

}  // namespace

void VgaeConfig::validate() const {
    if (hidden_dim <= 0 || latent_dim <= 0) {
        throw std::invalid_argument("vgae config: dims must be > 0");
    }
    if (epochs <= 0) throw std::invalid_argument("vgae config: epochs must be > 0");
    if (learning_rate < 0.0 || learning_rate >= 1.0) {
        throw std::invalid_argument("vgae config: learning rate must be in [0, 1)");
    }
    if (early_stop_roc <= 0.0 || early_stop_roc > 1.0) {
        throw std::invalid_argument("vgae config: early_stop_roc must be in (0, 1]");
    }
    if (holdout_fraction < 0.0 || holdout_fraction >= 1.0) {
        throw std::invalid_argument("vgae config: holdout_fraction must be in [0, 1)");
    }
}

void VgaeModel::dump_weights(std::ostream& out) const {
    out << "w0 " << w0.rows() << ' ' << w0.cols() << '\n';
    write_matrix(out, w0);
    out << "w_mu " << w_mu.rows() << ' ' << w_mu.cols() << '\n';
    write_matrix(out, w_mu);
    out << "w_logsigma " << w_logsigma.rows() << ' ' << w_logsigma.cols() << '\n';
    write_matrix(out, w_logsigma);
}

Eigen::MatrixXd normalize_adjacency(const GlobalAdjacency& global) {
    if (global.values.rows() != global.values.cols()) {
        throw std::invalid_argument("normalize_adjacency: matrix not square");
    }
    const Eigen::Index n = global.values.rows();
    Eigen::MatrixXd with_loops =
        global.values + global.values.transpose() + Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd inv_sqrt_deg = with_loops.rowwise().sum().array().rsqrt();
    return inv_sqrt_deg.asDiagonal() * with_loops * inv_sqrt_deg.asDiagonal();
}

void encode(VgaeModel& model, const Eigen::MatrixXd& features) {
    if (features.cols() != model.w0.rows()) {
        throw std::invalid_argument("encode: feature width does not match W0");
    }
    if (features.rows() != model.norm_adj.rows()) {
        throw std::invalid_argument("encode: feature rows do not match adjacency");
    }
    const Eigen::MatrixXd hidden =
        (model.norm_adj * features * model.w0).cwiseMax(0.0);
    const Eigen::MatrixXd propagated = model.norm_adj * hidden;
    model.mu = propagated * model.w_mu;
    model.logsigma = propagated * model.w_logsigma;
}

Eigen::MatrixXd decode(const Eigen::MatrixXd& z) {
    Eigen::MatrixXd logits = z * z.transpose();
    return logits.unaryExpr([](double v) { return sigmoid(v); });
}

LossBreakdown vgae_loss(const VgaeProblem& problem, const Eigen::MatrixXd& mu,
                        const Eigen::MatrixXd& logsigma, const Eigen::MatrixXd& z) {
    LossBreakdown loss;
    for (const auto& [i, j] : problem.domain) {
        const double logit = z.row(i).dot(z.row(j));
        const double label = problem.labels(i, j);
        const double weight = label > 0.5 ? problem.pos_weight : 1.0;
        loss.recon += weight * (softplus(logit) - label * logit);
    }
    loss.recon *= problem.recon_scale;

    const double n = static_cast<double>(mu.rows());
    loss.kl = 0.5 / (n * n) *
              (mu.array().square() + (2.0 * logsigma.array()).exp() - 1.0 - 2.0 * logsigma.array())
                  .sum();
    loss.total = loss.recon + loss.kl;
    return loss;
}

LossBreakdown vgae_forward(const VgaeModel& model, const VgaeProblem& problem,
                           const Eigen::MatrixXd& eps, VgaeGradients* grads) {
    const Eigen::MatrixXd propagated_input = problem.norm_adj * problem.features;
    const Eigen::MatrixXd pre_hidden = propagated_input * model.w0;
    const Eigen::MatrixXd hidden = pre_hidden.cwiseMax(0.0);
    const Eigen::MatrixXd propagated_hidden = problem.norm_adj * hidden;
    const Eigen::MatrixXd mu = propagated_hidden * model.w_mu;
    const Eigen::MatrixXd logsigma = propagated_hidden * model.w_logsigma;
    const Eigen::MatrixXd sigma = logsigma.array().exp();
    const Eigen::MatrixXd z = mu + sigma.cwiseProduct(eps);

    LossBreakdown loss = vgae_loss(problem, mu, logsigma, z);
    if (grads == nullptr) return loss;

    const Eigen::Index n = mu.rows();
    const double n_sq = static_cast<double>(n) * static_cast<double>(n);

    // d recon / d logits, nonzero only on domain pairs (logit (i,j) with i<j).
    Eigen::MatrixXd g_logits = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [i, j] : problem.domain) {
        const double logit = z.row(i).dot(z.row(j));
        const double label = problem.labels(i, j);
        const double weight = label > 0.5 ? problem.pos_weight : 1.0;
        g_logits(i, j) = problem.recon_scale * weight * (sigmoid(logit) - label);
    }

    const Eigen::MatrixXd g_z = (g_logits + g_logits.transpose()) * z;
    const Eigen::MatrixXd g_mu = g_z + mu / n_sq;
    const Eigen::MatrixXd g_logsigma =
        g_z.cwiseProduct(sigma).cwiseProduct(eps) +
        ((2.0 * logsigma.array()).exp() - 1.0).matrix() / n_sq;

    grads->w_mu = propagated_hidden.transpose() * g_mu;
    grads->w_logsigma = propagated_hidden.transpose() * g_logsigma;

    const Eigen::MatrixXd g_propagated = g_mu * model.w_mu.transpose() +
                                         g_logsigma * model.w_logsigma.transpose();
    const Eigen::MatrixXd g_hidden = problem.norm_adj.transpose() * g_propagated;
    const Eigen::MatrixXd g_pre_hidden =
        g_hidden.cwiseProduct((pre_hidden.array() > 0.0).cast<double>().matrix());
    grads->w0 = propagated_input.transpose() * g_pre_hidden;
    return loss;
}

VgaeModel train(const VgaeConfig& config, const GlobalAdjacency& global, const FeatureMatrix& features,
                const TrainOptions& options) {
    config.validate();
    const Eigen::Index n = global.values.rows();
    if (features.values.rows() != n) {
        throw std::invalid_argument("train: feature rows do not match adjacency");
    }

    const std::vector<std::pair<int, int>> domain =
        options.domain != nullptr ? *options.domain : upper_triangle_domain(static_cast<int>(n));
    auto [positives, negatives] = partition_edges(global, domain);
    if (positives.empty()) {
        throw std::invalid_argument("train: global adjacency has no positive edge in the domain");
    }

    std::mt19937 rng(config.seed);

    // Hold out a slice of the positives (and as many negatives) for ROC;
    // held-out positives are hidden from the reconstruction target.
    std::vector<std::pair<int, int>> shuffled = positives;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::size_t holdout = positives.size() >= 2
        ? std::clamp<std::size_t>(
              static_cast<std::size_t>(std::llround(config.holdout_fraction *
                                                    static_cast<double>(positives.size()))),
              1, positives.size() - 1)
        : 0;
    const std::vector<std::pair<int, int>> held_out(shuffled.begin(),
                                                    shuffled.begin() + static_cast<std::ptrdiff_t>(holdout));
    const std::vector<std::pair<int, int>> train_positives(
        shuffled.begin() + static_cast<std::ptrdiff_t>(holdout), shuffled.end());

    std::vector<std::pair<int, int>> negative_sample = negatives;
    std::shuffle(negative_sample.begin(), negative_sample.end(), rng);
    if (negative_sample.size() > held_out.size()) negative_sample.resize(held_out.size());
    const bool can_score = !held_out.empty() && !negative_sample.empty();

    VgaeProblem problem;
    problem.norm_adj = normalize_adjacency(global);
    problem.features = features.values;
    problem.domain = domain;
    problem.labels = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [i, j] : train_positives) problem.labels(i, j) = 1.0;
    const double num_pos = static_cast<double>(train_positives.size());
    problem.pos_weight = (static_cast<double>(domain.size()) - num_pos) / num_pos;
    problem.recon_scale = 1.0 / static_cast<double>(domain.size());

    VgaeModel model;
    model.norm_adj = problem.norm_adj;
    model.w0 = glorot_init(features.values.cols(), config.hidden_dim, rng);
    model.w_mu = glorot_init(config.hidden_dim, config.latent_dim, rng);
    model.w_logsigma = glorot_init(config.hidden_dim, config.latent_dim, rng);

    AdamState adam_w0(model.w0);
    AdamState adam_mu(model.w_mu);
    AdamState adam_logsigma(model.w_logsigma);

    model.roc = 0.5;
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const Eigen::MatrixXd eps = standard_normal(n, config.latent_dim, rng);
        VgaeGradients grads;
        const LossBreakdown loss = vgae_forward(model, problem, eps, &grads);
        if (!std::isfinite(loss.total)) {
            throw std::runtime_error("vgae train: non-finite loss at epoch " + std::to_string(epoch) +
                                     " (recon=" + std::to_string(loss.recon) +
                                     ", kl=" + std::to_string(loss.kl) + ")");
        }
        if (config.use_adam) {
            adam_w0.step(model.w0, grads.w0, config.learning_rate, epoch);
            adam_mu.step(model.w_mu, grads.w_mu, config.learning_rate, epoch);
            adam_logsigma.step(model.w_logsigma, grads.w_logsigma, config.learning_rate, epoch);
        } else {
            model.w0 -= config.learning_rate * grads.w0;
            model.w_mu -= config.learning_rate * grads.w_mu;
            model.w_logsigma -= config.learning_rate * grads.w_logsigma;
        }

        encode(model, features.values);
        if (can_score) model.roc = evaluate_roc(model, held_out, negative_sample);
        model.epochs_run = epoch;
        if (options.epoch_log != nullptr) {
            *options.epoch_log << epoch << ',' << loss.total << ',' << loss.recon << ','
                               << loss.kl << ',' << model.roc << '\n';
        }
        if (can_score && model.roc >= config.early_stop_roc) break;
    }
    return model;
}

double auc_score(const std::vector<double>& positive_scores, const std::vector<double>& negative_scores) {
    if (positive_scores.empty() || negative_scores.empty()) {
        throw std::invalid_argument("auc_score: empty score set");
    }
    struct Entry {
        double score;
        bool positive;
    };
    std::vector<Entry> entries;
    entries.reserve(positive_scores.size() + negative_scores.size());
    for (double s : positive_scores) entries.push_back({s, true});
    for (double s : negative_scores) entries.push_back({s, false});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.score < b.score; });

    // Midrank sum of the positives.
    double rank_sum = 0.0;
    std::size_t idx = 0;
    while (idx < entries.size()) {
        std::size_t end = idx;
        while (end < entries.size() && entries[end].score == entries[idx].score) ++end;
        const double midrank = 0.5 * static_cast<double>(idx + 1 + end);  // ranks are 1-based
        for (std::size_t k = idx; k < end; ++k) {
            if (entries[k].positive) rank_sum += midrank;
        }
        idx = end;
    }
    const double n_pos = static_cast<double>(positive_scores.size());
    const double n_neg = static_cast<double>(negative_scores.size());
    return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

double evaluate_roc(const VgaeModel& model, const std::vector<std::pair<int, int>>& held_out_positives,
                    const std::vector<std::pair<int, int>>& sampled_negatives) {
    if (held_out_positives.empty() || sampled_negatives.empty()) {
        throw std::invalid_argument("evaluate_roc: empty edge set");
    }
    std::vector<double> pos;
    pos.reserve(held_out_positives.size());
    for (const auto& [i, j] : held_out_positives) pos.push_back(mu_pair_score(model, i, j));
    std::vector<double> neg;
    neg.reserve(sampled_negatives.size());
    for (const auto& [i, j] : sampled_negatives) neg.push_back(mu_pair_score(model, i, j));
    return auc_score(pos, neg);
}

PredictionSet predict_negatives(const VgaeModel& model, const std::vector<std::pair<int, int>>& negatives) {
    PredictionSet out;
    out.pairs.reserve(negatives.size());
    for (const auto& [i, j] : negatives) {
        out.pairs.push_back({i, j, mu_pair_score(model, i, j)});
    }
    std::sort(out.pairs.begin(), out.pairs.end(), [](const ScoredPair& a, const ScoredPair& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return out;
}

}  // namespace crewcg
