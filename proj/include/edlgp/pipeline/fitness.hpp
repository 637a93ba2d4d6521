#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edlgp/data/dataset.hpp"
#include "edlgp/gp/primitive_set.hpp"
#include "edlgp/gp/tree.hpp"
#include "edlgp/pipeline/executor.hpp"

namespace edlgp::pipeline {

struct FitnessReport {
    double fitness { 0.0 }; // percentage
    std::vector<double> fold_accuracies;
    int k { 0 };            // folds used; 1 means training accuracy
    double seconds { 0.0 };
    std::optional<std::string> failure;
    std::vector<std::string> notes;

    bool operator==(FitnessReport const& o) const
    {
        return fitness == o.fitness && fold_accuracies == o.fold_accuracies && k == o.k && failure == o.failure && notes == o.notes;
    }
};

// Percentage of positions where predicted == truth.
[[nodiscard]] double accuracy_percent(std::span<int const> predicted, std::span<int const> truth);

// Smallest nonzero class count.
[[nodiscard]] int smallest_class_count(std::span<int const> labels);

// k = min(3, nc) stratified folds (nc = smallest class count), mean held-out
// accuracy. nc = 1 reports training accuracy. Execution failures give fitness
// 0 and set `failure`.
[[nodiscard]] FitnessReport evaluate_fitness(gp::PrimitiveSet const& pset, gp::Tree const& genotype, data::Dataset const& train, std::uint64_t seed, ExecOptions const& options = {}, SubtreeCache* cache = nullptr);

struct TestReport {
    double accuracy { 0.0 };
    std::vector<double> per_class_accuracy; // NaN for classes absent from the test set
    std::vector<std::vector<std::size_t>> confusion; // [truth][predicted]
    std::vector<int> predictions;
    FitResult fit;
};

[[nodiscard]] TestReport retrain_and_test(gp::PrimitiveSet const& pset, gp::Tree const& genotype, data::Dataset const& train, data::Dataset const& test, std::uint64_t seed, ExecOptions const& options = {});

} // namespace edlgp::pipeline
