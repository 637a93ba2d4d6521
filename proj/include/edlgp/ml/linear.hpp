#pragma once

#include <optional>
#include <span>
#include <vector>

#include "edlgp/ml/classifier.hpp"

namespace edlgp::ml {

// Per-feature z-scoring fitted on training data. Zero-variance features map
// to 0 and are thereby ignored.
class Standardizer {
public:
    Standardizer() = default;
    explicit Standardizer(FeatureMatrix const& x);

    [[nodiscard]] FeatureMatrix apply(FeatureMatrix const& x) const;
    [[nodiscard]] std::span<double const> mean() const noexcept { return mean_; }
    [[nodiscard]] std::span<double const> scale() const noexcept { return scale_; }

    bool operator==(Standardizer const&) const = default;

private:
    std::vector<double> mean_;
    std::vector<double> scale_; // 1/std, or 0 for constant features
};

struct SoftmaxObjective {
    double loss { 0.0 };
    Matrix grad_w;               // dim x C
    std::vector<double> grad_b;  // C
};

// Mean cross-entropy of softmax(z W + b) plus (l2/2)||W||^2 (bias unpenalised).
[[nodiscard]] SoftmaxObjective softmax_objective(FeatureMatrix const& z, std::span<int const> y, int num_classes, Matrix const& w, std::span<double const> b, double l2);

class LogisticRegression final : public Classifier {
public:
    LogisticRegression(Standardizer standardizer, Matrix weights, std::vector<double> bias, int num_classes, std::optional<int> constant_class, std::vector<double> loss_history)
        : standardizer_(std::move(standardizer))
        , weights_(std::move(weights))
        , bias_(std::move(bias))
        , num_classes_(num_classes)
        , constant_class_(constant_class)
        , loss_history_(std::move(loss_history))
    {
    }

    [[nodiscard]] Family family() const noexcept override { return Family::LR; }
    [[nodiscard]] std::size_t input_dim() const noexcept override { return standardizer_.mean().size(); }
    [[nodiscard]] int num_classes() const noexcept override { return num_classes_; }

    [[nodiscard]] Standardizer const& standardizer() const noexcept { return standardizer_; }
    [[nodiscard]] Matrix const& weights() const noexcept { return weights_; }
    [[nodiscard]] std::vector<double> const& bias() const noexcept { return bias_; }
    // Objective after every accepted step (first entry: at initialisation).
    [[nodiscard]] std::vector<double> const& loss_history() const noexcept { return loss_history_; }

    void dump(std::ostream& os) const override;

protected:
    [[nodiscard]] ProbabilityMatrix predict_checked(FeatureMatrix const& x) const override;

private:
    Standardizer standardizer_;
    Matrix weights_;
    std::vector<double> bias_;
    int num_classes_;
    std::optional<int> constant_class_;
    std::vector<double> loss_history_;
};

// Multinomial softmax regression, full-batch gradient descent. A rejected
// step (objective increased) halves the learning rate.
[[nodiscard]] std::shared_ptr<LogisticRegression> fit_logistic_regression(FeatureMatrix const& x, std::span<int const> y, int num_classes, LogisticOptions const& options = {});

class LinearSvm final : public Classifier {
public:
    LinearSvm(Standardizer standardizer, Matrix weights, std::vector<double> bias, int num_classes, std::optional<int> constant_class)
        : standardizer_(std::move(standardizer))
        , weights_(std::move(weights))
        , bias_(std::move(bias))
        , num_classes_(num_classes)
        , constant_class_(constant_class)
    {
    }

    [[nodiscard]] Family family() const noexcept override { return Family::SVM; }
    [[nodiscard]] std::size_t input_dim() const noexcept override { return standardizer_.mean().size(); }
    [[nodiscard]] int num_classes() const noexcept override { return num_classes_; }

    [[nodiscard]] Standardizer const& standardizer() const noexcept { return standardizer_; }
    // Standardised-space weights (dim x C) and biases of the one-vs-rest models.
    [[nodiscard]] Matrix const& weights() const noexcept { return weights_; }
    [[nodiscard]] std::vector<double> const& bias() const noexcept { return bias_; }

    void dump(std::ostream& os) const override;

protected:
    [[nodiscard]] ProbabilityMatrix predict_checked(FeatureMatrix const& x) const override;

private:
    Standardizer standardizer_;
    Matrix weights_;
    std::vector<double> bias_;
    int num_classes_;
    std::optional<int> constant_class_;
};

// One-vs-rest Pegasos-style subgradient descent on the hinge loss with a
// regularised bias feature, full batch, step 1/(l2 * epoch).
[[nodiscard]] std::shared_ptr<LinearSvm> fit_linear_svm(FeatureMatrix const& x, std::span<int const> y, int num_classes, SvmOptions const& options = {});

} // namespace edlgp::ml
