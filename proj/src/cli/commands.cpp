#include "edlgp/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "edlgp/core/error.hpp"
#include "edlgp/gp/registry.hpp"
#include "edlgp/gp/sexpr.hpp"
#include "edlgp/pipeline/cache.hpp"
#include "edlgp/pipeline/fitness.hpp"

namespace edlgp::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(fs::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(fs::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error("cannot write " + path.string());
    }
}

std::string trim(std::string s)
{
    auto const b = s.find_first_not_of(" \t\r\n");
    auto const e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string {} : s.substr(b, e - b + 1);
}

// Meta keys shared with the run config reuse its parser.
constexpr std::string_view kSharedMetaKeys[] = { "frequency_grid", "cascade_oof", "max_depth", "lr_l2", "lr_learning_rate",
    "lr_max_epochs", "lr_gradient_tolerance", "svm_l2", "svm_epochs" };

RunConfig as_config(TreeMeta const& m)
{
    RunConfig c;
    c.registry = m.registry;
    c.evolution.cascade_oof = m.exec.cascade_oof;
    c.evolution.max_depth = m.max_depth;
    c.linear = m.exec.linear;
    return c;
}

std::string format_optional(std::optional<double> v)
{
    return v ? format_double(*v) : std::string("n/a");
}

} // namespace

std::string render_meta(TreeMeta const& meta)
{
    auto const c = as_config(meta);
    std::string out;
    out += "seed = " + std::to_string(meta.seed) + "\n";
    out += "width = " + std::to_string(meta.signature.width) + "\n";
    out += "height = " + std::to_string(meta.signature.height) + "\n";
    out += "channels = " + std::to_string(meta.signature.channels) + "\n";
    out += "classes = " + std::to_string(meta.signature.classes) + "\n";
    for (auto key : kSharedMetaKeys) {
        out += std::string(key) + " = " + get_value(c, key) + "\n";
    }
    out += "fitness = " + format_double(meta.fitness) + "\n";
    return out;
}

TreeMeta parse_meta(std::string_view text)
{
    TreeMeta meta;
    RunConfig c;
    std::map<std::string, std::string> seen;
    std::istringstream in { std::string(text) };
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("meta: expected key = value in '" + line + "'");
        }
        seen[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto integer = [&](std::string const& key) -> long long {
        auto it = seen.find(key);
        if (it == seen.end()) {
            throw ConfigError("meta: missing " + key);
        }
        try {
            std::size_t used = 0;
            auto const v = std::stoll(it->second, &used);
            if (used != it->second.size()) {
                throw std::invalid_argument(key);
            }
            return v;
        } catch (std::exception const&) {
            throw ConfigError("meta: bad value for " + key);
        }
    };
    if (!seen.contains("seed")) {
        throw ConfigError("meta: missing seed");
    }
    try {
        meta.seed = std::stoull(seen["seed"]);
    } catch (std::exception const&) {
        throw ConfigError("meta: bad value for seed");
    }
    meta.signature = { static_cast<int>(integer("width")), static_cast<int>(integer("height")), static_cast<int>(integer("channels")), static_cast<int>(integer("classes")) };
    for (auto key : kSharedMetaKeys) {
        if (auto it = seen.find(std::string(key)); it != seen.end()) {
            set_value(c, key, it->second);
        }
    }
    for (auto const& [key, value] : seen) {
        bool const known = key == "seed" || key == "width" || key == "height" || key == "channels" || key == "classes" || key == "fitness"
            || std::find(std::begin(kSharedMetaKeys), std::end(kSharedMetaKeys), key) != std::end(kSharedMetaKeys);
        if (!known) {
            throw ConfigError("meta: unknown key '" + key + "'");
        }
    }
    meta.registry = c.registry;
    meta.exec = { c.evolution.cascade_oof, c.linear };
    meta.max_depth = c.evolution.max_depth;
    if (seen.contains("fitness")) {
        meta.fitness = std::stod(seen["fitness"]);
    }
    return meta;
}

EvolveOutcome run_evolve(RunConfig const& config, std::ostream* progress)
{
    config.validate();
    auto const data = load_datasets(config.dataset);
    return run_evolve(config, data, progress);
}

EvolveOutcome run_evolve(RunConfig const& config, Datasets const& data, std::ostream* progress)
{
    config.validate();
    if (data.train.empty()) {
        throw DataError("training set is empty");
    }
    auto const pset = gp::register_primitives(data.train.channels(), data.train.num_classes(), config.registry);
    EvolveOutcome outcome;
    outcome.directory = config.output_dir;
    fs::create_directories(config.output_dir);
    write_text(config.output_dir / "resolved.cfg", render_config(config));

    for (int rep = 0; rep < config.repeats; ++rep) {
        auto const start = std::chrono::steady_clock::now();
        RepeatOutcome run;
        run.index = rep;
        auto evo = config.evolution;
        evo.seed = config.evolution.seed + static_cast<std::uint64_t>(rep);
        run.seed = evo.seed;
        pipeline::ExecOptions const exec { evo.cascade_oof, config.linear };
        std::optional<pipeline::SubtreeCache> cache;
        if (config.cache) {
            cache.emplace(config.cache_mb << 20U);
        }
        auto* cache_ptr = cache ? &*cache : nullptr;

        // Classifier and fold seeds come from the run seed and subtree text,
        // so the per-genotype seed is not needed here.
        gp::FitnessFunction fitness = [&](gp::Tree const& t, std::uint64_t) {
            auto r = pipeline::evaluate_fitness(pset, t, data.train, evo.seed, exec, cache_ptr);
            if (r.failure) {
                throw Error(*r.failure);
            }
            return r.fitness;
        };
        std::vector<double> elapsed;
        gp::EvolveHooks hooks;
        hooks.on_generation_start = [&](int) {
            if (cache) {
                cache->clear_pure();
            }
        };
        hooks.on_generation_end = [&](gp::GenerationStats const& s) {
            elapsed.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
            if (progress) {
                *progress << "run " << rep << " generation " << s.generation << ": best " << format_double(s.best_fitness) << " mean "
                          << format_double(s.mean_fitness) << " mean size " << format_double(s.mean_tree_size) << " (" << elapsed.back() << " s)"
                          << std::endl;
            }
        };
        auto result = gp::evolve(evo, pset, fitness, hooks);
        run.best = result.best;
        run.best_text = gp::render(result.best.genotype, pset);
        run.log = result.log;
        run.warnings = result.warnings;
        run.evaluations = result.evaluations;

        if (!data.test.empty()) {
            auto const report = pipeline::retrain_and_test(pset, run.best.genotype, data.train, data.test, evo.seed, exec);
            run.test_accuracy = report.accuracy;
        }
        run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        auto const dir = config.output_dir / ("run_" + std::to_string(rep));
        fs::create_directories(dir);
        std::string gens = "generation,best_fitness,mean_fitness,mean_tree_size,best_tree_size\n";
        std::string timing = "generation,elapsed_s\n";
        for (std::size_t g = 0; g < run.log.size(); ++g) {
            auto const& s = run.log[g];
            gens += std::to_string(s.generation) + "," + format_double(s.best_fitness) + "," + format_double(s.mean_fitness) + ","
                + format_double(s.mean_tree_size) + "," + std::to_string(s.best_tree_size) + "\n";
            timing += std::to_string(s.generation) + "," + format_double(g < elapsed.size() ? elapsed[g] : s.elapsed_s) + "\n";
        }
        write_text(dir / "generations.csv", gens);
        write_text(dir / "timing.csv", timing);
        write_text(dir / "best_tree.sexp", run.best_text + "\n");
        TreeMeta meta;
        meta.seed = evo.seed;
        meta.signature = data.train.signature();
        meta.registry = config.registry;
        meta.exec = exec;
        meta.max_depth = evo.max_depth;
        meta.fitness = run.best.fitness.value_or(0.0);
        write_text(dir / "best_tree.meta", render_meta(meta));
        std::string warn;
        for (auto const& w : run.warnings) {
            warn += w + "\n";
        }
        write_text(dir / "warnings.log", warn);
        if (progress) {
            *progress << "run " << rep << " done: fitness " << format_double(meta.fitness) << " test accuracy " << format_optional(run.test_accuracy)
                      << " size " << run.best.genotype.size() << " (" << run.seconds << " s)" << std::endl;
        }
        outcome.runs.push_back(std::move(run));
    }

    std::vector<double> acc;
    for (auto const& r : outcome.runs) {
        if (r.test_accuracy) {
            acc.push_back(*r.test_accuracy);
        }
    }
    if (!acc.empty()) {
        double const mean = std::accumulate(acc.begin(), acc.end(), 0.0) / static_cast<double>(acc.size());
        double ss = 0.0;
        for (double a : acc) {
            ss += (a - mean) * (a - mean);
        }
        outcome.mean_accuracy = mean;
        outcome.std_accuracy = acc.size() > 1 ? std::sqrt(ss / static_cast<double>(acc.size() - 1)) : 0.0;
        outcome.best_accuracy = *std::max_element(acc.begin(), acc.end());
    }

    nlohmann::ordered_json summary;
    summary["train_size"] = data.train.size();
    summary["test_size"] = data.test.size();
    summary["signature"] = data.train.signature().to_string();
    summary["repeats"] = config.repeats;
    auto opt = [](std::optional<double> v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
    summary["test_accuracy"] = { { "mean", opt(outcome.mean_accuracy) }, { "std", opt(outcome.std_accuracy) }, { "best", opt(outcome.best_accuracy) } };
    summary["runs"] = nlohmann::ordered_json::array();
    for (auto const& r : outcome.runs) {
        summary["runs"].push_back({ { "run", r.index }, { "seed", r.seed }, { "best_fitness", r.best.fitness.value_or(0.0) },
            { "test_accuracy", opt(r.test_accuracy) }, { "tree_size", r.best.genotype.size() }, { "tree_depth", r.best.genotype.height() },
            { "tree", r.best_text }, { "evaluations", r.evaluations }, { "warnings", r.warnings.size() }, { "seconds", r.seconds } });
    }
    write_text(config.output_dir / "summary.json", summary.dump(2) + "\n");
    return outcome;
}

namespace {

// (parent, slot) for each node.
std::vector<std::pair<std::size_t, std::size_t>> parents(gp::Tree const& tree)
{
    std::vector<std::pair<std::size_t, std::size_t>> out(tree.size(), { tree.size(), 0 });
    for (std::size_t i = 0; i < tree.size(); ++i) {
        auto const kids = tree.children(i);
        for (std::size_t k = 0; k < kids.size(); ++k) {
            out[kids[k]] = { i, k };
        }
    }
    return out;
}

std::string node_label(gp::Tree const& tree, gp::PrimitiveSet const& pset, std::size_t i, std::vector<std::pair<std::size_t, std::size_t>> const& up)
{
    auto const& n = tree[i];
    switch (n.kind) {
    case gp::NodeKind::Function:
        return pset.primitive(n.value).name;
    case gp::NodeKind::Channel:
        return std::string(gp::channel_name(static_cast<gp::Channel>(n.value)));
    case gp::NodeKind::Param: {
        auto const* d = pset.param_domain(n.type);
        std::string label = d != nullptr && n.value < d->labels.size() ? d->labels[n.value] : std::to_string(n.value);
        auto const [parent, slot] = up[i];
        if (parent < tree.size()) {
            return pset.child_key(tree[parent].value, slot) + "=" + label;
        }
        return label;
    }
    }
    return "?";
}

std::string layer_of(gp::Tree const& tree, gp::PrimitiveSet const& pset, std::size_t i)
{
    auto const& n = tree[i];
    if (n.kind == gp::NodeKind::Function) {
        return std::string(gp::layer_name(pset.primitive(n.value).layer));
    }
    return n.kind == gp::NodeKind::Channel ? std::string(gp::layer_name(gp::Layer::Input)) : std::string("Parameter");
}

} // namespace

std::string render_indented(gp::Tree const& tree, gp::PrimitiveSet const& pset)
{
    auto const up = parents(tree);
    auto const depth = tree.depths();
    std::string out;
    for (std::size_t i = 0; i < tree.size(); ++i) {
        out += std::string(static_cast<std::size_t>(depth[i]) * 2, ' ') + node_label(tree, pset, i, up) + " : " + std::string(gp::type_name(tree[i].type))
            + " [" + layer_of(tree, pset, i) + "]\n";
    }
    return out;
}

std::string render_dot(gp::Tree const& tree, gp::PrimitiveSet const& pset)
{
    auto const up = parents(tree);
    std::string out = "digraph edlgp {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < tree.size(); ++i) {
        out += "  n" + std::to_string(i) + " [label=\"" + node_label(tree, pset, i, up) + "\\n" + std::string(gp::type_name(tree[i].type)) + "\"];\n";
    }
    for (std::size_t i = 0; i < tree.size(); ++i) {
        for (auto c : tree.children(i)) {
            out += "  n" + std::to_string(i) + " -> n" + std::to_string(c) + ";\n";
        }
    }
    out += "}\n";
    return out;
}

void write_node_outputs(std::ostream& os, std::size_t node, Matrix const& m)
{
    os << "node_id,instance_index";
    for (std::size_t c = 0; c < m.cols(); ++c) {
        os << ",f" << c;
    }
    os << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << node << ',' << r;
        for (double v : m.row(r)) {
            os << ',' << format_double(v);
        }
        os << '\n';
    }
}

int exit_code_for(std::exception const& e) noexcept
{
    if (dynamic_cast<ConfigError const*>(&e) != nullptr || dynamic_cast<ParseError const*>(&e) != nullptr) {
        return 2;
    }
    if (dynamic_cast<DataError const*>(&e) != nullptr || dynamic_cast<UsageError const*>(&e) != nullptr) {
        return 3;
    }
    return 4;
}

namespace {

struct DataFlags {
    std::string config;
    std::string train;
    std::string test;
    std::optional<int> per_class;
    std::optional<int> test_per_class;
    std::optional<std::uint64_t> subsample_seed;

    void add_to(CLI::App* app, bool with_test)
    {
        app->add_option("-c,--config", config, "Run config whose [dataset] section supplies the data");
        app->add_option("--train", train, "Training data source, e.g. idx:images,labels");
        if (with_test) {
            app->add_option("--test", test, "Test data source");
            app->add_option("--test-per-class", test_per_class, "Stratified test subset size per class");
        }
        app->add_option("--per-class", per_class, "Stratified training subset size per class");
        app->add_option("--subsample-seed", subsample_seed, "Seed of the stratified subsets");
    }

    [[nodiscard]] DatasetConfig resolve() const
    {
        DatasetConfig d = config.empty() ? DatasetConfig {} : load_config(config).dataset;
        auto const cwd = fs::current_path();
        if (!train.empty()) {
            d.train = resolve_paths(parse_source(train), cwd);
        }
        if (!test.empty()) {
            d.test = resolve_paths(parse_source(test), cwd);
        }
        d.per_class = per_class.value_or(d.per_class);
        d.test_per_class = test_per_class.value_or(d.test_per_class);
        d.subsample_seed = subsample_seed.value_or(d.subsample_seed);
        if (d.train.empty()) {
            throw ConfigError("no training data given (use --train or --config)");
        }
        return d;
    }
};

std::optional<TreeMeta> read_meta(std::string const& meta_path, std::string const& tree_path)
{
    fs::path p = meta_path.empty() ? fs::path(tree_path).replace_extension(".meta") : fs::path(meta_path);
    if (!fs::exists(p)) {
        if (!meta_path.empty()) {
            throw ConfigError("meta file " + p.string() + " not found");
        }
        return std::nullopt;
    }
    return parse_meta(read_text(p));
}

int cmd_evaluate(std::string const& tree_path, std::string const& meta_path, std::optional<std::uint64_t> seed, DataFlags const& flags,
    std::string const& confusion_path)
{
    auto const text = read_text(tree_path);
    auto meta = read_meta(meta_path, tree_path);
    if (!meta && !seed) {
        throw ConfigError("no " + fs::path(tree_path).replace_extension(".meta").string() + "; pass --meta or --seed");
    }
    auto dcfg = flags.resolve();
    if (dcfg.test.empty()) {
        throw ConfigError("no test data given (use --test or --config)");
    }
    auto const data = load_datasets(dcfg);
    TreeMeta m = meta.value_or(TreeMeta {});
    if (seed) {
        m.seed = *seed;
    }
    if (meta && m.signature != data.train.signature()) {
        throw UsageError("training data signature " + data.train.signature().to_string() + " differs from the stored " + m.signature.to_string());
    }
    auto const pset = gp::register_primitives(data.train.channels(), data.train.num_classes(), m.registry);
    auto const tree = gp::parse(text, pset);
    auto const report = pipeline::retrain_and_test(pset, tree, data.train, data.test, m.seed, m.exec);

    std::cout << "test accuracy " << format_double(report.accuracy) << " (" << data.test.size() << " instances)\n";
    for (std::size_t c = 0; c < report.per_class_accuracy.size(); ++c) {
        std::cout << "class " << c << " accuracy " << (std::isnan(report.per_class_accuracy[c]) ? std::string("n/a") : format_double(report.per_class_accuracy[c])) << '\n';
    }
    std::ostringstream csv;
    csv << "truth\\predicted";
    for (std::size_t c = 0; c < report.confusion.size(); ++c) {
        csv << ',' << c;
    }
    csv << '\n';
    for (std::size_t t = 0; t < report.confusion.size(); ++t) {
        csv << t;
        for (auto v : report.confusion[t]) {
            csv << ',' << v;
        }
        csv << '\n';
    }
    std::cout << "confusion matrix (rows truth, columns predicted)\n" << csv.str();
    if (!confusion_path.empty()) {
        write_text(confusion_path, csv.str());
    }
    return 0;
}

int cmd_inspect(std::string const& tree_path, std::string const& meta_path, std::optional<std::uint64_t> seed, std::optional<int> channels,
    std::string const& dot_path, std::string const& dump_source, std::string const& dump_dir, DataFlags const& flags)
{
    auto const text = read_text(tree_path);
    auto const meta = read_meta(meta_path, tree_path);
    TreeMeta m = meta.value_or(TreeMeta {});
    if (seed) {
        m.seed = *seed;
    }
    std::optional<data::Dataset> ds;
    if (!dump_source.empty()) {
        DataFlags f = flags;
        f.train = dump_source;
        auto const dcfg = f.resolve();
        ds = load_datasets(DatasetConfig { dcfg.train, {}, dcfg.per_class, 0, dcfg.subsample_seed }).train;
    }
    int const ch = ds ? ds->channels() : channels.value_or(meta ? m.signature.channels : 3);
    int const classes = ds ? ds->num_classes() : (meta ? m.signature.classes : 2);
    auto const pset = gp::register_primitives(ch, classes, m.registry);
    auto const tree = gp::parse(text, pset);

    std::cout << render_indented(tree, pset);
    std::cout << "size " << tree.size() << "\ndepth " << tree.height() << '\n';
    if (!dot_path.empty()) {
        write_text(dot_path, render_dot(tree, pset));
        std::cout << "wrote " << dot_path << '\n';
    }
    if (ds) {
        auto const fit = pipeline::execute_fit(pset, tree, *ds, m.seed, m.exec);
        pipeline::Executor ex(pset, tree, m.seed, m.exec);
        auto const outputs = ex.node_outputs(fit.phenotype, *ds);
        fs::create_directories(dump_dir);
        for (auto const& [node, matrix] : outputs) {
            auto const path = fs::path(dump_dir) / ("node_" + std::to_string(node) + ".csv");
            std::ofstream out(path);
            write_node_outputs(out, node, matrix);
            if (!out) {
                throw Error("cannot write " + path.string());
            }
            std::cout << "node " << node << " " << pset.primitive(tree[node].value).name << " -> " << matrix.rows() << "x" << matrix.cols() << " " << path.string() << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app { "Evolve, evaluate and inspect typed GP image-classification pipelines" };
    app.name("edlgp");
    app.require_subcommand(1);

    auto* evolve = app.add_subcommand("evolve", "Run seeded evolutions and write a run directory");
    std::string config_path;
    evolve->add_option("-c,--config", config_path, "Run configuration file")->required();
    std::map<std::string, std::string> override_values;
    std::vector<std::pair<std::string, CLI::Option*>> overrides;
    for (auto const& key : config_keys()) {
        std::string dashed = key.name;
        std::replace(dashed.begin(), dashed.end(), '_', '-');
        overrides.emplace_back(key.name, evolve->add_option("--" + dashed, override_values[key.name], "Override [" + key.section + "] " + key.name));
    }
    bool quiet = false;
    evolve->add_flag("-q,--quiet", quiet, "No per-generation progress");

    auto* evaluate = app.add_subcommand("evaluate", "Re-fit a stored tree on training data and score it on test data");
    std::string eval_tree;
    std::string eval_meta;
    std::string confusion_path;
    std::optional<std::uint64_t> eval_seed;
    DataFlags eval_data;
    evaluate->add_option("-t,--tree", eval_tree, "best_tree.sexp")->required();
    evaluate->add_option("-m,--meta", eval_meta, "best_tree.meta (default: next to the tree)");
    evaluate->add_option("--seed", eval_seed, "Override the stored run seed");
    evaluate->add_option("--confusion", confusion_path, "Also write the confusion matrix CSV here");
    eval_data.add_to(evaluate, true);

    auto* inspect = app.add_subcommand("inspect", "Render a stored tree and optionally dump node outputs");
    std::string insp_tree;
    std::string insp_meta;
    std::string dot_path;
    std::string dump_source;
    std::string dump_dir = "features";
    std::optional<std::uint64_t> insp_seed;
    std::optional<int> insp_channels;
    DataFlags insp_data;
    inspect->add_option("-t,--tree", insp_tree, "best_tree.sexp")->required();
    inspect->add_option("-m,--meta", insp_meta, "best_tree.meta (default: next to the tree)");
    inspect->add_option("--dot", dot_path, "Write a DOT graph here");
    inspect->add_option("--dump-features", dump_source, "Data source whose per-node outputs are written as CSV");
    inspect->add_option("--dump-dir", dump_dir, "Directory for node_<id>.csv files")->capture_default_str();
    inspect->add_option("--seed", insp_seed, "Override the stored run seed");
    inspect->add_option("--channels", insp_channels, "Channel count used to parse the tree when no meta or data is given");
    inspect->add_option("--per-class", insp_data.per_class, "Stratified subset of the dump data per class");
    inspect->add_option("--subsample-seed", insp_data.subsample_seed, "Seed of the subset");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (evolve->parsed()) {
            auto config = load_config(config_path);
            auto const cwd = fs::current_path();
            for (auto const& [key, opt] : overrides) {
                if (opt->count() > 0) {
                    set_value(config, key, override_values[key], cwd);
                }
            }
            config.validate();
            auto const outcome = run_evolve(config, quiet ? nullptr : &std::cout);
            std::cout << "test accuracy mean " << format_optional(outcome.mean_accuracy) << " std " << format_optional(outcome.std_accuracy) << " best "
                      << format_optional(outcome.best_accuracy) << "\nrun directory " << outcome.directory.string() << '\n';
            return 0;
        }
        if (evaluate->parsed()) {
            return cmd_evaluate(eval_tree, eval_meta, eval_seed, eval_data, confusion_path);
        }
        if (inspect->parsed()) {
            return cmd_inspect(insp_tree, insp_meta, insp_seed, insp_channels, dot_path, dump_source, dump_dir, insp_data);
        }
    } catch (std::exception const& e) {
        std::cerr << "edlgp: error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return 0;
}

} // namespace edlgp::cli
