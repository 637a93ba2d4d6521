#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "edlgp/core/matrix.hpp"
#include "edlgp/image/plane.hpp"
#include "edlgp/ml/classifier.hpp"

namespace edlgp::pipeline {

using ImageBatch = std::vector<image::ImagePlane>;

// Whole-dataset output of a label-independent IMAGE or FEATURES subtree.
using PureValue = std::variant<ImageBatch, FeatureMatrix>;

// A pure value plus the trace notes raised anywhere in its subtree.
struct PureResult {
    PureValue value;
    std::vector<std::string> notes;
};

// Outputs of a classifier-bearing subtree for one (fit rows, eval rows) pair.
struct FoldValue {
    Matrix fit;  // empty when the fit-side output was not requested
    Matrix eval;
    bool has_fit { false };
    std::vector<std::string> notes;
};

struct CacheStats {
    std::size_t hits { 0 };
    std::size_t misses { 0 };
    std::size_t bytes { 0 };
    std::size_t entries { 0 };
};

// Byte-bounded memo shared by concurrent evaluations. Oldest entries are
// evicted first. Values are immutable once stored.
class SubtreeCache {
public:
    explicit SubtreeCache(std::size_t byte_budget = std::size_t(512) << 20);

    [[nodiscard]] std::shared_ptr<PureResult const> find_pure(std::string const& key);
    void store_pure(std::string const& key, std::shared_ptr<PureResult const> value);

    [[nodiscard]] std::shared_ptr<FoldValue const> find_fold(std::string const& key);
    void store_fold(std::string const& key, std::shared_ptr<FoldValue const> value);

    void clear();
    // Drops pure entries only; fold outputs stay valid across generations.
    void clear_pure();
    [[nodiscard]] CacheStats stats() const;
    [[nodiscard]] std::size_t byte_budget() const noexcept { return budget_; }

private:
    struct Entry {
        std::shared_ptr<PureResult const> pure;
        std::shared_ptr<FoldValue const> fold;
        std::size_t bytes { 0 };
    };

    void insert(std::string const& key, Entry entry);

    std::size_t budget_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, Entry> entries_;
    std::deque<std::string> order_;
    CacheStats stats_;
};

[[nodiscard]] std::size_t value_bytes(PureValue const& v) noexcept;

} // namespace edlgp::pipeline
