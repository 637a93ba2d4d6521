#include "edlgp/ml/classifier.hpp"

#include <map>

#include "edlgp/core/error.hpp"
#include "edlgp/core/random.hpp"
#include "edlgp/ml/forest.hpp"
#include "edlgp/ml/linear.hpp"

namespace edlgp::ml {

std::string_view family_name(Family f) noexcept
{
    switch (f) {
    case Family::RF:
        return "RF";
    case Family::ERF:
        return "ERF";
    case Family::LR:
        return "LR";
    case Family::SVM:
        return "SVM";
    }
    return "?";
}

ProbabilityMatrix Classifier::predict_proba(FeatureMatrix const& x) const
{
    if (x.cols() != input_dim()) {
        throw UsageError(std::string(family_name(family())) + ": input width " + std::to_string(x.cols()) + " != fitted width " + std::to_string(input_dim()));
    }
    return predict_checked(x);
}

ClassifierPtr fit_classifier(Family family, FeatureMatrix const& x, std::span<int const> y, int num_classes, ForestParams forest, std::uint64_t seed, LinearOptions const& linear)
{
    switch (family) {
    case Family::RF:
    case Family::ERF: {
        Rng rng(seed);
        return fit_forest(x, y, num_classes, forest.trees, forest.max_depth, family == Family::RF ? SplitMode::Standard : SplitMode::Extra, rng);
    }
    case Family::LR:
        return fit_logistic_regression(x, y, num_classes, linear.lr);
    case Family::SVM:
        return fit_linear_svm(x, y, num_classes, linear.svm);
    }
    throw InternalError("unknown classifier family");
}

ProbabilityMatrix out_of_fold_predictions(Family family, FeatureMatrix const& x, std::span<int const> y, int num_classes, ForestParams forest, std::uint64_t seed, Classifier const& full_model, LinearOptions const& linear, int folds)
{
    if (x.rows() < static_cast<std::size_t>(folds) || folds < 2) {
        return full_model.predict_proba(x);
    }
    auto const assignment = stratified_fold_assignment(y, folds, derive_seed(seed, "oof"));
    ProbabilityMatrix out(x.rows(), static_cast<std::size_t>(num_classes));
    for (int f = 0; f < folds; ++f) {
        std::vector<std::size_t> train;
        std::vector<std::size_t> held;
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            (assignment[i] == f ? held : train).push_back(i);
        }
        if (held.empty()) {
            continue;
        }
        auto const xt = gather_rows(x, train);
        Labels yt;
        yt.reserve(train.size());
        for (auto i : train) {
            yt.push_back(y[i]);
        }
        auto model = fit_classifier(family, xt, yt, num_classes, forest, derive_seed(seed, static_cast<std::uint64_t>(f) + 1), linear);
        auto const p = model->predict_proba(gather_rows(x, held));
        for (std::size_t r = 0; r < held.size(); ++r) {
            auto src = p.row(r);
            std::copy(src.begin(), src.end(), out.row(held[r]).begin());
        }
    }
    return out;
}

FeatureMatrix cascade_transform(Classifier const& clf, FeatureMatrix const& x, ProbabilityMatrix const* oof)
{
    if (oof != nullptr) {
        if (oof->rows() != x.rows() || oof->cols() != static_cast<std::size_t>(clf.num_classes())) {
            throw InternalError("cascade_transform: out-of-fold block shape mismatch");
        }
        return hconcat(x, *oof);
    }
    return hconcat(x, clf.predict_proba(x));
}

ProbabilityMatrix sum_probabilities(std::span<ProbabilityMatrix const* const> parts)
{
    if (parts.empty()) {
        throw InternalError("sum_probabilities: no inputs");
    }
    ProbabilityMatrix out = *parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) {
        auto const& p = *parts[k];
        if (p.rows() != out.rows() || p.cols() != out.cols()) {
            throw InternalError("sum_probabilities: shape mismatch");
        }
        auto dst = out.data();
        auto src = p.data();
        for (std::size_t i = 0; i < dst.size(); ++i) {
            dst[i] += src[i];
        }
    }
    return out;
}

int argmax_label(std::span<double const> v)
{
    if (v.empty()) {
        throw InternalError("argmax_label: empty vector");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) {
            best = i;
        }
    }
    return static_cast<int>(best);
}

Labels argmax_rows(ProbabilityMatrix const& p)
{
    Labels out(p.rows());
    for (std::size_t r = 0; r < p.rows(); ++r) {
        out[r] = argmax_label(p.row(r));
    }
    return out;
}

std::vector<int> stratified_fold_assignment(std::span<int const> labels, int k, std::uint64_t seed)
{
    if (k < 1) {
        throw UsageError("fold count must be positive");
    }
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i]].push_back(i);
    }
    Rng rng(seed);
    std::vector<int> fold(labels.size(), 0);
    int next = 0;
    for (auto& [cls, positions] : by_class) {
        shuffle(positions.begin(), positions.end(), rng);
        for (auto p : positions) {
            fold[p] = next;
            next = (next + 1) % k;
        }
    }
    return fold;
}

} // namespace edlgp::ml
