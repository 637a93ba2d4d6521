#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "edlgp/core/matrix.hpp"

namespace edlgp::ml {

using Labels = std::vector<int>;

enum class Family { RF, ERF, LR, SVM };

[[nodiscard]] std::string_view family_name(Family f) noexcept;

// A fitted model. Immutable after construction; safe for concurrent predict.
class Classifier {
public:
    virtual ~Classifier() = default;

    [[nodiscard]] virtual Family family() const noexcept = 0;
    [[nodiscard]] virtual std::size_t input_dim() const noexcept = 0;
    [[nodiscard]] virtual int num_classes() const noexcept = 0;

    // One row of C class scores per input row. Soft families return
    // probabilities summing to 1, SVM returns one-hot rows.
    [[nodiscard]] ProbabilityMatrix predict_proba(FeatureMatrix const& x) const;

    // Human-readable dump of the learned state; equal dumps mean equal models.
    virtual void dump(std::ostream& os) const = 0;

protected:
    [[nodiscard]] virtual ProbabilityMatrix predict_checked(FeatureMatrix const& x) const = 0;
};

using ClassifierPtr = std::shared_ptr<Classifier const>;

struct ForestParams {
    int trees { 100 };
    int max_depth { 10 };
};

struct LogisticOptions {
    double l2 { 1e-4 };
    double learning_rate { 0.1 };
    int max_epochs { 500 };
    double gradient_tolerance { 1e-6 };
    // Optimise in the span of the training rows when dim > rows. Both forms
    // follow the same iterates; the dual one is O(n^2 C) per epoch.
    bool allow_dual { true };
};

struct SvmOptions {
    double l2 { 1e-4 };
    int epochs { 500 };
    bool allow_dual { true };
};

// Fixed optimiser settings shared by every LR/SVM node of a run.
struct LinearOptions {
    LogisticOptions lr;
    SvmOptions svm;
};

// Dispatch on family. `forest` is ignored by LR/SVM.
[[nodiscard]] ClassifierPtr fit_classifier(Family family, FeatureMatrix const& x, std::span<int const> y, int num_classes, ForestParams forest, std::uint64_t seed, LinearOptions const& linear = {});

// Per-row predictions for training rows from models that never saw them
// (stratified `folds`-fold split). Falls back to in-sample predictions of
// `full_model` when there are fewer rows than folds.
[[nodiscard]] ProbabilityMatrix out_of_fold_predictions(Family family, FeatureMatrix const& x, std::span<int const> y, int num_classes, ForestParams forest, std::uint64_t seed, Classifier const& full_model, LinearOptions const& linear = {}, int folds = 3);

// [x | appended], where appended = oof when given, else clf's predictions on x.
[[nodiscard]] FeatureMatrix cascade_transform(Classifier const& clf, FeatureMatrix const& x, ProbabilityMatrix const* oof = nullptr);

[[nodiscard]] ProbabilityMatrix sum_probabilities(std::span<ProbabilityMatrix const* const> parts);

// Index of the maximum; ties go to the lowest index.
[[nodiscard]] int argmax_label(std::span<double const> v);

[[nodiscard]] Labels argmax_rows(ProbabilityMatrix const& p);

// Fold id in [0, k) for every position. Each class's positions are shuffled,
// then dealt round-robin, continuing the deal across classes.
[[nodiscard]] std::vector<int> stratified_fold_assignment(std::span<int const> labels, int k, std::uint64_t seed);

} // namespace edlgp::ml
