#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edlgp/core/random.hpp"
#include "edlgp/ml/classifier.hpp"

namespace edlgp::ml {

enum class SplitMode {
    Standard, // best Gini over midpoints of sorted unique values
    Extra     // one uniform threshold per candidate feature
};

class DecisionTree {
public:
    struct Node {
        int feature { -1 }; // -1 marks a leaf
        double threshold { 0.0 };
        int left { -1 };
        int right { -1 };
        std::size_t distribution { 0 }; // offset into distributions(), leaves only
    };

    DecisionTree() = default;
    DecisionTree(std::vector<Node> nodes, std::vector<double> distributions, int num_classes, std::size_t input_dim, int depth)
        : nodes_(std::move(nodes))
        , distributions_(std::move(distributions))
        , num_classes_(num_classes)
        , input_dim_(input_dim)
        , depth_(depth)
    {
    }

    // Class distribution of the leaf reached by x.
    [[nodiscard]] std::span<double const> predict_row(std::span<double const> x) const noexcept;

    [[nodiscard]] std::vector<Node> const& nodes() const noexcept { return nodes_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] std::size_t leaf_count() const noexcept;
    [[nodiscard]] int num_classes() const noexcept { return num_classes_; }
    [[nodiscard]] std::size_t input_dim() const noexcept { return input_dim_; }
    [[nodiscard]] std::span<double const> distributions() const noexcept { return distributions_; }

    bool operator==(DecisionTree const& other) const;

private:
    std::vector<Node> nodes_;
    std::vector<double> distributions_;
    int num_classes_ { 0 };
    std::size_t input_dim_ { 0 };
    int depth_ { 0 };
};

// Greedy binary tree. `samples` lists training rows (duplicates allowed, as
// produced by bootstrapping); empty means every row once. Candidate features
// per node: floor(sqrt(dim)) non-constant ones.
[[nodiscard]] DecisionTree fit_decision_tree(FeatureMatrix const& x, std::span<int const> y, int num_classes, int max_depth, SplitMode mode, Rng& rng, std::span<std::size_t const> samples = {});

[[nodiscard]] std::vector<std::size_t> bootstrap_indices(std::size_t n, Rng& rng);

class Forest final : public Classifier {
public:
    Forest(Family family, std::vector<DecisionTree> trees, int num_classes, std::size_t input_dim)
        : family_(family)
        , trees_(std::move(trees))
        , num_classes_(num_classes)
        , input_dim_(input_dim)
    {
    }

    [[nodiscard]] Family family() const noexcept override { return family_; }
    [[nodiscard]] std::size_t input_dim() const noexcept override { return input_dim_; }
    [[nodiscard]] int num_classes() const noexcept override { return num_classes_; }
    [[nodiscard]] std::vector<DecisionTree> const& trees() const noexcept { return trees_; }

    void dump(std::ostream& os) const override;

protected:
    [[nodiscard]] ProbabilityMatrix predict_checked(FeatureMatrix const& x) const override;

private:
    Family family_;
    std::vector<DecisionTree> trees_;
    int num_classes_;
    std::size_t input_dim_;
};

// RF (Standard): bootstrap per tree. ERF (Extra): full sample per tree.
// Tree i draws from Rng(derive_seed(base, i)) with base = rng().
[[nodiscard]] std::shared_ptr<Forest> fit_forest(FeatureMatrix const& x, std::span<int const> y, int num_classes, int trees, int max_depth, SplitMode mode, Rng& rng);

} // namespace edlgp::ml
