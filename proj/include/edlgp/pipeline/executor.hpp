#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "edlgp/data/dataset.hpp"
#include "edlgp/gp/primitive_set.hpp"
#include "edlgp/gp/tree.hpp"
#include "edlgp/ml/classifier.hpp"
#include "edlgp/pipeline/cache.hpp"

namespace edlgp::pipeline {

struct ExecOptions {
    bool cascade_oof { true };
    ml::LinearOptions linear;
};

// A genotype with the fitted model of every classifier and cascade node,
// keyed by prefix node index.
struct Phenotype {
    gp::Tree genotype;
    std::map<std::size_t, ml::ClassifierPtr> models;
    data::Signature signature;
    std::uint64_t seed { 0 };
    ExecOptions options;
};

struct FitResult {
    Phenotype phenotype;
    ProbabilityMatrix root; // in-sample root output on the fit data
    std::vector<std::string> notes;
};

struct PredictResult {
    std::vector<int> labels;
    ProbabilityMatrix root;
    std::vector<std::string> notes;
};

// Seed of the classifier at a subtree: derived from the run seed and the
// subtree's canonical text, so equal subtrees train identically.
[[nodiscard]] std::uint64_t node_seed(std::uint64_t run_seed, std::string const& subtree_text) noexcept;

// "0.1.0"-style child-slot path of node i ("" for the root).
[[nodiscard]] std::string node_path(gp::Tree const& tree, std::size_t i);

// Executes one genotype on one or two datasets. Fit rows train every
// classifier node; eval rows receive the frozen models' outputs.
class Executor {
public:
    Executor(gp::PrimitiveSet const& pset, gp::Tree const& tree, std::uint64_t run_seed, ExecOptions options, SubtreeCache* cache = nullptr);

    struct Side {
        data::Dataset const* dataset { nullptr };
        std::span<std::size_t const> rows;
    };

    // Root outputs for fit rows (when need_fit) and eval rows. When `record`
    // is given, every fitted model is stored in it and the classifier cache
    // is bypassed.
    [[nodiscard]] FoldValue run(Side fit, Side eval, bool need_fit, Phenotype* record = nullptr);

    // Frozen-model traversal over every instance of ds.
    [[nodiscard]] ProbabilityMatrix predict(Phenotype const& phenotype, data::Dataset const& ds);

    // Output of every function node under frozen models, one row per
    // instance of ds; image batches are flattened row-major.
    [[nodiscard]] std::map<std::size_t, Matrix> node_outputs(Phenotype const& phenotype, data::Dataset const& ds);

    [[nodiscard]] std::vector<std::string> const& notes() const noexcept { return notes_; }

    // Whole-dataset output of a label-independent node (IMAGE or FEATURES
    // without classifiers below it).
    [[nodiscard]] std::shared_ptr<PureResult const> pure_value(std::size_t node, data::Dataset const& ds);
    [[nodiscard]] bool is_pure(std::size_t node) const { return pure_[node]; }
    [[nodiscard]] std::string const& subtree_text(std::size_t node) const { return texts_[node]; }

private:
    FoldValue run_node(std::size_t node, Side fit, std::span<int const> fit_labels, Side eval, bool need_fit, Phenotype* record);
    FoldValue run_classifier(std::size_t node, Side fit, std::span<int const> fit_labels, Side eval, bool need_fit, Phenotype* record);
    Matrix predict_node(std::size_t node, Phenotype const& phenotype, data::Dataset const& ds);
    Matrix predict_value(std::size_t node, Phenotype const& phenotype, data::Dataset const& ds);
    PureResult compute_pure(std::size_t node, data::Dataset const& ds);
    [[nodiscard]] double param(std::size_t node) const;


    gp::PrimitiveSet const& pset_;
    gp::Tree tree_;
    std::uint64_t seed_;
    ExecOptions options_;
    SubtreeCache* cache_;
    std::vector<std::string> texts_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<bool> pure_;
    std::vector<std::string> notes_;
    // FEATURES values already computed by this executor (reused across folds)
    std::map<std::pair<std::size_t, std::uint64_t>, std::shared_ptr<PureResult const>> local_;
    std::map<std::size_t, Matrix>* capture_ { nullptr };
};

// Trains every classifier node on all of ds.
[[nodiscard]] FitResult execute_fit(gp::PrimitiveSet const& pset, gp::Tree const& genotype, data::Dataset const& ds, std::uint64_t seed, ExecOptions const& options = {});

// Throws UsageError when ds's signature differs from the fit signature.
[[nodiscard]] PredictResult execute_predict(gp::PrimitiveSet const& pset, Phenotype const& phenotype, data::Dataset const& ds);

} // namespace edlgp::pipeline
