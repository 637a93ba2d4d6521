#include "edlgp/pipeline/cache.hpp"

namespace edlgp::pipeline {

std::size_t value_bytes(PureValue const& v) noexcept
{
    if (auto const* m = std::get_if<FeatureMatrix>(&v)) {
        return m->memory_bytes() + sizeof(FeatureMatrix);
    }
    std::size_t total = 0;
    for (auto const& img : std::get<ImageBatch>(v)) {
        total += img.size() * sizeof(double) + sizeof(image::ImagePlane);
    }
    return total;
}

SubtreeCache::SubtreeCache(std::size_t byte_budget)
    : budget_(byte_budget)
{
}

std::shared_ptr<PureResult const> SubtreeCache::find_pure(std::string const& key)
{
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end() || !it->second.pure) {
        ++stats_.misses;
        return nullptr;
    }
    ++stats_.hits;
    return it->second.pure;
}

std::shared_ptr<FoldValue const> SubtreeCache::find_fold(std::string const& key)
{
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end() || !it->second.fold) {
        ++stats_.misses;
        return nullptr;
    }
    ++stats_.hits;
    return it->second.fold;
}

void SubtreeCache::store_pure(std::string const& key, std::shared_ptr<PureResult const> value)
{
    auto const bytes = value_bytes(value->value) + key.size();
    insert(key, Entry { std::move(value), nullptr, bytes });
}

void SubtreeCache::store_fold(std::string const& key, std::shared_ptr<FoldValue const> value)
{
    auto const bytes = value->fit.memory_bytes() + value->eval.memory_bytes() + key.size() + sizeof(FoldValue);
    insert(key, Entry { nullptr, std::move(value), bytes });
}

void SubtreeCache::insert(std::string const& key, Entry entry)
{
    std::lock_guard lock(mutex_);
    if (entry.bytes > budget_ || entries_.contains(key)) {
        return;
    }
    while (stats_.bytes + entry.bytes > budget_ && !order_.empty()) {
        auto it = entries_.find(order_.front());
        if (it != entries_.end()) {
            stats_.bytes -= it->second.bytes;
            entries_.erase(it);
        }
        order_.pop_front();
    }
    stats_.bytes += entry.bytes;
    entries_.emplace(key, std::move(entry));
    order_.push_back(key);
    stats_.entries = entries_.size();
}

void SubtreeCache::clear()
{
    std::lock_guard lock(mutex_);
    entries_.clear();
    order_.clear();
    stats_.bytes = 0;
    stats_.entries = 0;
}

void SubtreeCache::clear_pure()
{
    std::lock_guard lock(mutex_);
    std::deque<std::string> kept;
    for (auto& key : order_) {
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            continue;
        }
        if (it->second.pure) {
            stats_.bytes -= it->second.bytes;
            entries_.erase(it);
        } else {
            kept.push_back(std::move(key));
        }
    }
    order_ = std::move(kept);
    stats_.entries = entries_.size();
}

CacheStats SubtreeCache::stats() const
{
    std::lock_guard lock(mutex_);
    return stats_;
}

} // namespace edlgp::pipeline
