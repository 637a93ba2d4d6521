#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "edlgp/data/dataset.hpp"
#include "edlgp/gp/evolve.hpp"
#include "edlgp/gp/registry.hpp"
#include "edlgp/ml/classifier.hpp"

namespace edlgp::cli {

// "format:arg,arg,..." where format is idx (images,labels), cifar (batch
// files), pgm (manifest), dump (file) or bars (per_class,side,noise,seed).
struct DataSource {
    std::string format;
    std::vector<std::string> args;

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] bool empty() const noexcept { return format.empty(); }
};

// Throws ConfigError on an unknown format or wrong argument count.
[[nodiscard]] DataSource parse_source(std::string_view text);

// Relative file arguments are taken relative to base.
[[nodiscard]] DataSource resolve_paths(DataSource src, std::filesystem::path const& base);

// Throws DataError.
[[nodiscard]] data::Dataset load_source(DataSource const& src, std::string const& name);

struct DatasetConfig {
    DataSource train;
    DataSource test;
    int per_class { 0 };      // 0 keeps the whole training set
    int test_per_class { 0 }; // 0 keeps the whole test set
    std::uint64_t subsample_seed { 0 };
};

struct RunConfig {
    DatasetConfig dataset;
    gp::EvolutionConfig evolution;
    gp::RegistryOptions registry;
    ml::LinearOptions linear;
    int repeats { 1 };
    std::filesystem::path output_dir { "runs/latest" };
    bool cache { true };
    std::size_t cache_mb { 512 };

    // Throws ConfigError.
    void validate() const;
};

struct ConfigKey {
    std::string section;
    std::string name;
};

// Every recognised key, in resolved-config order.
[[nodiscard]] std::vector<ConfigKey> const& config_keys();

// Throws ConfigError for unknown keys or unparsable values. Relative data
// paths are resolved against base.
void set_value(RunConfig& config, std::string_view key, std::string_view value, std::filesystem::path const& base = {});
[[nodiscard]] std::string get_value(RunConfig const& config, std::string_view key);

// Flat "key = value" lines under [dataset], [evolution] and [run] headers;
// '#' starts a comment. Errors name the line.
[[nodiscard]] RunConfig parse_config(std::string_view text, std::filesystem::path const& base = {});
[[nodiscard]] RunConfig load_config(std::filesystem::path const& path);

// Re-parsing the result yields an identical configuration.
[[nodiscard]] std::string render_config(RunConfig const& config);

[[nodiscard]] std::string format_double(double v);

struct Datasets {
    data::Dataset train;
    data::Dataset test;
};

// Loads both sides and applies the per-class subsampling.
[[nodiscard]] Datasets load_datasets(DatasetConfig const& config);

} // namespace edlgp::cli
