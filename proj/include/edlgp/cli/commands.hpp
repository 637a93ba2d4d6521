#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "edlgp/cli/config.hpp"
#include "edlgp/data/dataset.hpp"
#include "edlgp/gp/evolve.hpp"
#include "edlgp/gp/primitive_set.hpp"
#include "edlgp/pipeline/executor.hpp"

namespace edlgp::cli {

// Everything needed to re-fit a stored genotype: best_tree.meta.
struct TreeMeta {
    std::uint64_t seed { 0 };
    data::Signature signature;
    gp::RegistryOptions registry;
    pipeline::ExecOptions exec;
    int max_depth { 10 };
    double fitness { 0.0 };
};

[[nodiscard]] std::string render_meta(TreeMeta const& meta);
// Throws ConfigError.
[[nodiscard]] TreeMeta parse_meta(std::string_view text);

struct RepeatOutcome {
    int index { 0 };
    std::uint64_t seed { 0 };
    gp::Individual best;
    std::string best_text;
    std::optional<double> test_accuracy;
    std::vector<gp::GenerationStats> log;
    std::vector<std::string> warnings;
    std::size_t evaluations { 0 };
    double seconds { 0.0 };
};

struct EvolveOutcome {
    std::vector<RepeatOutcome> runs;
    std::optional<double> mean_accuracy;
    std::optional<double> std_accuracy; // sample standard deviation, 0 for one run
    std::optional<double> best_accuracy;
    std::filesystem::path directory;
};

// Runs config.repeats seeded evolutions (seed + i) and writes the run
// directory: resolved.cfg, summary.json and run_<i>/{generations.csv,
// timing.csv, best_tree.sexp, best_tree.meta, warnings.log}. Progress lines go
// to `progress` when given.
[[nodiscard]] EvolveOutcome run_evolve(RunConfig const& config, std::ostream* progress = nullptr);

// Same, on already loaded data; the dataset section is only echoed.
[[nodiscard]] EvolveOutcome run_evolve(RunConfig const& config, Datasets const& data, std::ostream* progress = nullptr);

// One node per line, indented by depth, with GpType and layer.
[[nodiscard]] std::string render_indented(gp::Tree const& tree, gp::PrimitiveSet const& pset);
[[nodiscard]] std::string render_dot(gp::Tree const& tree, gp::PrimitiveSet const& pset);

// CSV rows "node_id,instance_index,f0,f1,..." for every function node.
void write_node_outputs(std::ostream& os, std::size_t node, Matrix const& m);

// 0 success, 2 configuration (or parse) error, 3 data error, 4 runtime failure.
[[nodiscard]] int exit_code_for(std::exception const& e) noexcept;

// Command-line entry: evolve, evaluate, inspect.
int main(int argc, char** argv);

} // namespace edlgp::cli
