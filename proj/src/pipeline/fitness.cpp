#include "edlgp/pipeline/fitness.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "edlgp/core/error.hpp"
#include "edlgp/core/random.hpp"

namespace edlgp::pipeline {

double accuracy_percent(std::span<int const> predicted, std::span<int const> truth)
{
    if (predicted.size() != truth.size()) {
        throw InternalError("accuracy: length mismatch");
    }
    if (truth.empty()) {
        return 0.0;
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        correct += predicted[i] == truth[i] ? 1 : 0;
    }
    return 100.0 * static_cast<double>(correct) / static_cast<double>(truth.size());
}

int smallest_class_count(std::span<int const> labels)
{
    std::map<int, int> counts;
    for (int l : labels) {
        ++counts[l];
    }
    int nc = 0;
    for (auto const& [label, c] : counts) {
        nc = nc == 0 ? c : std::min(nc, c);
    }
    return nc;
}

FitnessReport evaluate_fitness(gp::PrimitiveSet const& pset, gp::Tree const& genotype, data::Dataset const& train, std::uint64_t seed, ExecOptions const& options, SubtreeCache* cache)
{
    auto const start = std::chrono::steady_clock::now();
    if (train.empty()) {
        throw UsageError("evaluate_fitness on an empty training set");
    }
    FitnessReport report;
    auto const& labels = train.labels();
    int const nc = smallest_class_count(labels);
    report.k = std::min(3, nc);
    try {
        Executor ex(pset, genotype, seed, options, cache);
        if (report.k <= 1) {
            std::vector<std::size_t> all(train.size());
            std::iota(all.begin(), all.end(), 0);
            auto v = ex.run({ &train, all }, { &train, {} }, true);
            report.fold_accuracies.push_back(accuracy_percent(ml::argmax_rows(v.fit), labels));
            report.notes = ex.notes();
        } else {
            auto const folds = ml::stratified_fold_assignment(labels, report.k, derive_seed(seed, "folds"));
            for (int f = 0; f < report.k; ++f) {
                std::vector<std::size_t> fit_rows;
                std::vector<std::size_t> held;
                std::vector<int> held_labels;
                for (std::size_t i = 0; i < folds.size(); ++i) {
                    if (folds[i] == f) {
                        held.push_back(i);
                        held_labels.push_back(labels[i]);
                    } else {
                        fit_rows.push_back(i);
                    }
                }
                auto v = ex.run({ &train, fit_rows }, { &train, held }, false);
                report.fold_accuracies.push_back(accuracy_percent(ml::argmax_rows(v.eval), held_labels));
                for (auto const& n : ex.notes()) {
                    if (std::find(report.notes.begin(), report.notes.end(), n) == report.notes.end()) {
                        report.notes.push_back(n);
                    }
                }
            }
        }
        report.fitness = std::accumulate(report.fold_accuracies.begin(), report.fold_accuracies.end(), 0.0) / static_cast<double>(report.fold_accuracies.size());
    } catch (Error const& e) {
        report.fitness = 0.0;
        report.failure = e.what();
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

TestReport retrain_and_test(gp::PrimitiveSet const& pset, gp::Tree const& genotype, data::Dataset const& train, data::Dataset const& test, std::uint64_t seed, ExecOptions const& options)
{
    TestReport report;
    report.fit = execute_fit(pset, genotype, train, seed, options);
    auto const pred = execute_predict(pset, report.fit.phenotype, test);
    report.predictions = pred.labels;
    report.accuracy = accuracy_percent(pred.labels, test.labels());
    auto const classes = static_cast<std::size_t>(test.num_classes());
    report.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
    for (std::size_t i = 0; i < test.size(); ++i) {
        ++report.confusion[static_cast<std::size_t>(test.labels()[i])][static_cast<std::size_t>(pred.labels[i])];
    }
    report.per_class_accuracy.assign(classes, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t c = 0; c < classes; ++c) {
        auto const total = std::accumulate(report.confusion[c].begin(), report.confusion[c].end(), std::size_t(0));
        if (total > 0) {
            report.per_class_accuracy[c] = 100.0 * static_cast<double>(report.confusion[c][c]) / static_cast<double>(total);
        }
    }
    return report;
}

} // namespace edlgp::pipeline
