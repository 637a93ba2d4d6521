#include "edlgp/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>

#include "edlgp/core/error.hpp"
#include "edlgp/core/random.hpp"
#include "edlgp/data/synthetic.hpp"

namespace edlgp::cli {

namespace {

std::string trim(std::string_view s)
{
    auto const b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto const e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto const pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

template <typename T>
T parse_number(std::string_view key, std::string_view text)
{
    auto const s = trim(text);
    T v {};
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc {} || ptr != s.data() + s.size()) {
        throw ConfigError(std::string(key) + ": cannot parse '" + s + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    auto const s = trim(text);
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    throw ConfigError(std::string(key) + ": expected true or false, got '" + s + "'");
}

struct KeyDef {
    ConfigKey key;
    std::function<void(RunConfig&, std::string_view, std::filesystem::path const&)> set;
    std::function<std::string(RunConfig const&)> get;
};

// ref maps a (const or mutable) RunConfig to the field.
template <typename Ref>
KeyDef scalar_key(std::string section, std::string name, Ref ref)
{
    using T = std::remove_cvref_t<decltype(ref(std::declval<RunConfig&>()))>;
    return { { section, name },
        [name, ref](RunConfig& c, std::string_view v, std::filesystem::path const&) {
            if constexpr (std::is_same_v<T, bool>) {
                ref(c) = parse_bool(name, v);
            } else {
                ref(c) = parse_number<T>(name, v);
            }
        },
        [ref](RunConfig const& c) -> std::string {
            if constexpr (std::is_same_v<T, bool>) {
                return ref(c) ? "true" : "false";
            } else if constexpr (std::is_floating_point_v<T>) {
                return format_double(ref(c));
            } else {
                return std::to_string(ref(c));
            }
        } };
}

std::vector<KeyDef> const& key_defs()
{
    static std::vector<KeyDef> const defs = [] {
        std::vector<KeyDef> d;
        d.push_back({ { "dataset", "train" },
            [](RunConfig& c, std::string_view v, std::filesystem::path const& base) { c.dataset.train = resolve_paths(parse_source(v), base); },
            [](RunConfig const& c) { return c.dataset.train.to_string(); } });
        d.push_back({ { "dataset", "test" },
            [](RunConfig& c, std::string_view v, std::filesystem::path const& base) { c.dataset.test = resolve_paths(parse_source(v), base); },
            [](RunConfig const& c) { return c.dataset.test.to_string(); } });
        d.push_back(scalar_key("dataset", "per_class", [](auto& c) -> auto& { return c.dataset.per_class; }));
        d.push_back(scalar_key("dataset", "test_per_class", [](auto& c) -> auto& { return c.dataset.test_per_class; }));
        d.push_back(scalar_key("dataset", "subsample_seed", [](auto& c) -> auto& { return c.dataset.subsample_seed; }));

        d.push_back(scalar_key("evolution", "population_size", [](auto& c) -> auto& { return c.evolution.population_size; }));
        d.push_back(scalar_key("evolution", "generations", [](auto& c) -> auto& { return c.evolution.generations; }));
        d.push_back(scalar_key("evolution", "crossover_rate", [](auto& c) -> auto& { return c.evolution.crossover_rate; }));
        d.push_back(scalar_key("evolution", "mutation_rate", [](auto& c) -> auto& { return c.evolution.mutation_rate; }));
        d.push_back(scalar_key("evolution", "elitism_rate", [](auto& c) -> auto& { return c.evolution.elitism_rate; }));
        d.push_back(scalar_key("evolution", "tournament_size", [](auto& c) -> auto& { return c.evolution.tournament_size; }));
        d.push_back(scalar_key("evolution", "init_depth_min", [](auto& c) -> auto& { return c.evolution.init_depth_min; }));
        d.push_back(scalar_key("evolution", "init_depth_max", [](auto& c) -> auto& { return c.evolution.init_depth_max; }));
        d.push_back(scalar_key("evolution", "max_depth", [](auto& c) -> auto& { return c.evolution.max_depth; }));
        d.push_back(scalar_key("evolution", "seed", [](auto& c) -> auto& { return c.evolution.seed; }));
        d.push_back(scalar_key("evolution", "cascade_oof", [](auto& c) -> auto& { return c.evolution.cascade_oof; }));
        d.push_back(scalar_key("evolution", "crossover_retry_limit", [](auto& c) -> auto& { return c.evolution.crossover_retry_limit; }));
        d.push_back(scalar_key("evolution", "mutation_extra_depth", [](auto& c) -> auto& { return c.evolution.mutation_extra_depth; }));
        d.push_back({ { "evolution", "frequency_grid" },
            [](RunConfig& c, std::string_view v, auto const&) {
                auto const s = trim(v);
                if (s == "additive") {
                    c.registry.frequency_grid = gp::FrequencyGrid::Additive;
                } else if (s == "geometric") {
                    c.registry.frequency_grid = gp::FrequencyGrid::Geometric;
                } else {
                    throw ConfigError("frequency_grid: expected additive or geometric, got '" + s + "'");
                }
            },
            [](RunConfig const& c) { return std::string(c.registry.frequency_grid == gp::FrequencyGrid::Additive ? "additive" : "geometric"); } });
        d.push_back(scalar_key("evolution", "lr_l2", [](auto& c) -> auto& { return c.linear.lr.l2; }));
        d.push_back(scalar_key("evolution", "lr_learning_rate", [](auto& c) -> auto& { return c.linear.lr.learning_rate; }));
        d.push_back(scalar_key("evolution", "lr_max_epochs", [](auto& c) -> auto& { return c.linear.lr.max_epochs; }));
        d.push_back(scalar_key("evolution", "lr_gradient_tolerance", [](auto& c) -> auto& { return c.linear.lr.gradient_tolerance; }));
        d.push_back(scalar_key("evolution", "svm_l2", [](auto& c) -> auto& { return c.linear.svm.l2; }));
        d.push_back(scalar_key("evolution", "svm_epochs", [](auto& c) -> auto& { return c.linear.svm.epochs; }));

        d.push_back(scalar_key("run", "repeats", [](auto& c) -> auto& { return c.repeats; }));
        d.push_back({ { "run", "output_dir" },
            [](RunConfig& c, std::string_view v, std::filesystem::path const& base) {
                std::filesystem::path p(trim(v));
                c.output_dir = p.is_relative() && !base.empty() ? (base / p).lexically_normal() : p;
            },
            [](RunConfig const& c) { return c.output_dir.string(); } });
        d.push_back(scalar_key("run", "parallel", [](auto& c) -> auto& { return c.evolution.parallel; }));
        d.push_back(scalar_key("run", "cache", [](auto& c) -> auto& { return c.cache; }));
        d.push_back(scalar_key("run", "cache_mb", [](auto& c) -> auto& { return c.cache_mb; }));
        return d;
    }();
    return defs;
}

KeyDef const& find_key(std::string_view key)
{
    for (auto const& d : key_defs()) {
        if (d.key.name == key) {
            return d;
        }
    }
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

bool is_file_format(std::string const& f)
{
    return f == "idx" || f == "cifar" || f == "pgm" || f == "dump";
}

} // namespace

std::string format_double(double v)
{
    char buf[64];
    auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc {} ? std::string(buf, ptr) : std::to_string(v);
}

std::string DataSource::to_string() const
{
    if (format.empty()) {
        return {};
    }
    std::string out = format + ":";
    for (std::size_t i = 0; i < args.size(); ++i) {
        out += (i ? "," : "") + args[i];
    }
    return out;
}

DataSource parse_source(std::string_view text)
{
    auto const s = trim(text);
    if (s.empty()) {
        return {};
    }
    auto const colon = s.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("data source '" + s + "' lacks a format prefix (idx:, cifar:, pgm:, dump: or bars:)");
    }
    DataSource src { trim(std::string_view(s).substr(0, colon)), split(std::string_view(s).substr(colon + 1), ',') };
    std::size_t const n = src.args.size();
    bool ok = false;
    if (src.format == "idx") {
        ok = n == 2;
    } else if (src.format == "cifar") {
        ok = n >= 1;
    } else if (src.format == "pgm" || src.format == "dump") {
        ok = n == 1;
    } else if (src.format == "bars") {
        ok = n == 4;
    } else {
        throw ConfigError("unknown data format '" + src.format + "'");
    }
    for (auto const& a : src.args) {
        ok = ok && !a.empty();
    }
    if (!ok) {
        throw ConfigError("data source '" + s + "': wrong number of arguments for " + src.format);
    }
    if (src.format == "bars") {
        (void)parse_number<int>("bars per_class", src.args[0]);
        (void)parse_number<int>("bars side", src.args[1]);
        (void)parse_number<double>("bars noise", src.args[2]);
        (void)parse_number<std::uint64_t>("bars seed", src.args[3]);
    }
    return src;
}

DataSource resolve_paths(DataSource src, std::filesystem::path const& base)
{
    if (!is_file_format(src.format) || base.empty()) {
        return src;
    }
    for (auto& a : src.args) {
        std::filesystem::path p(a);
        if (p.is_relative()) {
            a = (base / p).lexically_normal().string();
        }
    }
    return src;
}

data::Dataset load_source(DataSource const& src, std::string const& name)
{
    auto const& a = src.args;
    if (src.format == "idx") {
        return data::load_idx(a[0], a[1]);
    }
    if (src.format == "cifar") {
        return data::load_cifar_binary({ a.begin(), a.end() });
    }
    if (src.format == "pgm") {
        return data::load_pgm_manifest(a[0]);
    }
    if (src.format == "dump") {
        return data::read_dump(a[0]);
    }
    if (src.format == "bars") {
        return data::make_bars(parse_number<int>("bars per_class", a[0]), parse_number<int>("bars side", a[1]),
            parse_number<double>("bars noise", a[2]), parse_number<std::uint64_t>("bars seed", a[3]), name);
    }
    throw ConfigError("unknown data format '" + src.format + "'");
}

void RunConfig::validate() const
{
    evolution.validate();
    if (dataset.train.empty()) {
        throw ConfigError("dataset: train source is required");
    }
    if (dataset.per_class < 0 || dataset.test_per_class < 0) {
        throw ConfigError("dataset: per_class values must be >= 0");
    }
    if (repeats < 1) {
        throw ConfigError("repeats must be >= 1");
    }
    if (cache_mb < 1) {
        throw ConfigError("cache_mb must be >= 1");
    }
    if (!(linear.lr.l2 >= 0.0) || !(linear.svm.l2 > 0.0)) {
        throw ConfigError("lr_l2 must be >= 0 and svm_l2 > 0");
    }
    if (!(linear.lr.learning_rate > 0.0) || !(linear.lr.gradient_tolerance >= 0.0)) {
        throw ConfigError("lr_learning_rate must be > 0 and lr_gradient_tolerance >= 0");
    }
    if (linear.lr.max_epochs < 0 || linear.svm.epochs < 1) {
        throw ConfigError("lr_max_epochs must be >= 0 and svm_epochs >= 1");
    }
}

std::vector<ConfigKey> const& config_keys()
{
    static std::vector<ConfigKey> const keys = [] {
        std::vector<ConfigKey> k;
        for (auto const& d : key_defs()) {
            k.push_back(d.key);
        }
        return k;
    }();
    return keys;
}

void set_value(RunConfig& config, std::string_view key, std::string_view value, std::filesystem::path const& base)
{
    find_key(key).set(config, value, base);
}

std::string get_value(RunConfig const& config, std::string_view key)
{
    return find_key(key).get(config);
}

RunConfig parse_config(std::string_view text, std::filesystem::path const& base)
{
    RunConfig config;
    std::string section;
    std::istringstream in { std::string(text) };
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto const hash = raw.find('#');
        auto const line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        try {
            if (line.front() == '[') {
                if (line.back() != ']') {
                    throw ConfigError("unterminated section header");
                }
                section = trim(std::string_view(line).substr(1, line.size() - 2));
                if (section != "dataset" && section != "evolution" && section != "run") {
                    throw ConfigError("unknown section [" + section + "]");
                }
                continue;
            }
            auto const eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("expected key = value");
            }
            auto const key = trim(std::string_view(line).substr(0, eq));
            auto const& def = find_key(key);
            if (!section.empty() && def.key.section != section) {
                throw ConfigError("key '" + key + "' belongs to [" + def.key.section + "], not [" + section + "]");
            }
            def.set(config, std::string_view(line).substr(eq + 1), base);
        } catch (ConfigError const& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

RunConfig load_config(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::filesystem::absolute(path).parent_path());
}

std::string render_config(RunConfig const& config)
{
    std::string out;
    std::string section;
    for (auto const& d : key_defs()) {
        if (d.key.section != section) {
            out += (section.empty() ? "[" : "\n[") + d.key.section + "]\n";
            section = d.key.section;
        }
        out += d.key.name + " = " + d.get(config) + "\n";
    }
    return out;
}

Datasets load_datasets(DatasetConfig const& config)
{
    Datasets out;
    out.train = load_source(config.train, "train");
    if (config.per_class > 0) {
        out.train = data::stratified_subsample(out.train, config.per_class, config.subsample_seed);
    }
    if (!config.test.empty()) {
        out.test = load_source(config.test, "test");
        if (config.test_per_class > 0) {
            out.test = data::stratified_subsample(out.test, config.test_per_class, derive_seed(config.subsample_seed, "test"));
        }
        auto const a = out.train.signature();
        auto const b = out.test.signature();
        if (a.width != b.width || a.height != b.height || a.channels != b.channels) {
            throw DataError("train signature " + a.to_string() + " and test signature " + b.to_string() + " differ");
        }
    }
    return out;
}

} // namespace edlgp::cli
