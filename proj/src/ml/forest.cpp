#include "edlgp/ml/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "edlgp/core/error.hpp"

namespace edlgp::ml {

std::span<double const> DecisionTree::predict_row(std::span<double const> x) const noexcept
{
    int i = 0;
    while (nodes_[static_cast<std::size_t>(i)].feature >= 0) {
        auto const& n = nodes_[static_cast<std::size_t>(i)];
        i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return { distributions_.data() + nodes_[static_cast<std::size_t>(i)].distribution, static_cast<std::size_t>(num_classes_) };
}

std::size_t DecisionTree::leaf_count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](Node const& n) { return n.feature < 0; }));
}

bool DecisionTree::operator==(DecisionTree const& other) const
{
    if (nodes_.size() != other.nodes_.size() || distributions_ != other.distributions_) {
        return false;
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        auto const& a = nodes_[i];
        auto const& b = other.nodes_[i];
        if (a.feature != b.feature || a.threshold != b.threshold || a.left != b.left || a.right != b.right || a.distribution != b.distribution) {
            return false;
        }
    }
    return true;
}

namespace {

class TreeBuilder {
public:
    // cols holds x column-major: cols[f * rows + s].
    TreeBuilder(FeatureMatrix const& x, std::vector<double> const& cols, std::span<int const> y, int num_classes, int max_depth, SplitMode mode, Rng& rng)
        : x_(x)
        , cols_(cols)
        , y_(y)
        , classes_(static_cast<std::size_t>(num_classes))
        , max_depth_(max_depth)
        , mode_(mode)
        , rng_(rng)
        , features_(x.cols())
        , mtry_(std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(x.cols()))))))
    {
        std::iota(features_.begin(), features_.end(), std::size_t { 0 });
    }

    DecisionTree build(std::vector<std::size_t> samples)
    {
        samples_ = std::move(samples);
        build_node(0, samples_.size(), 0, 0);
        return { std::move(nodes_), std::move(dists_), static_cast<int>(classes_), x_.cols(), depth_ };
    }

private:
    struct Split {
        std::size_t feature { 0 };
        double threshold { 0.0 };
        double score { -std::numeric_limits<double>::infinity() };
        bool found { false };
    };

    int make_leaf(std::vector<double> const& counts, std::size_t n)
    {
        Node node;
        node.distribution = dists_.size();
        for (double c : counts) {
            dists_.push_back(c / static_cast<double>(n));
        }
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size() - 1);
    }

    using Node = DecisionTree::Node;

    // features_[0, known) are constant on every sample reaching this node.
    int build_node(std::size_t begin, std::size_t end, int depth, std::size_t known)
    {
        depth_ = std::max(depth_, depth);
        std::size_t const n = end - begin;
        std::vector<double> counts(classes_, 0.0);
        for (std::size_t i = begin; i < end; ++i) {
            counts[static_cast<std::size_t>(y_[samples_[i]])] += 1.0;
        }
        bool const pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0.0; }) <= 1;
        if (pure || depth >= max_depth_ || n < 2) {
            return make_leaf(counts, n);
        }

        Split best = find_split(begin, end, counts, known);
        if (!best.found) {
            return make_leaf(counts, n);
        }

        auto mid_it = std::partition(samples_.begin() + static_cast<std::ptrdiff_t>(begin), samples_.begin() + static_cast<std::ptrdiff_t>(end),
            [&, col = cols_.data() + best.feature * x_.rows()](std::size_t s) { return col[s] <= best.threshold; });
        auto const mid = static_cast<std::size_t>(mid_it - samples_.begin());
        if (mid == begin || mid == end) {
            return make_leaf(counts, n);
        }

        nodes_.push_back(Node { static_cast<int>(best.feature), best.threshold, -1, -1, 0 });
        auto const self = nodes_.size() - 1;
        int const left = build_node(begin, mid, depth + 1, known);
        int const right = build_node(mid, end, depth + 1, known);
        nodes_[self].left = left;
        nodes_[self].right = right;
        return static_cast<int>(self);
    }

    // Draws candidates without replacement from the non-constant features
    // until mtry of them have been scored. Constants found here are moved to
    // the front and `known` grows to cover them.
    Split find_split(std::size_t begin, std::size_t end, std::vector<double> const& total, std::size_t& known)
    {
        std::size_t const n = end - begin;
        std::size_t const dim = features_.size();
        Split best;
        std::size_t evaluated = 0;
        values_.resize(n);
        for (std::size_t k = known; k < dim && evaluated < mtry_; ++k) {
            std::size_t const j = k + uniform_index(rng_, dim - k);
            std::swap(features_[k], features_[j]);
            std::size_t const f = features_[k];
            double const* col = cols_.data() + f * x_.rows();

            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t const s = samples_[begin + i];
                double const v = col[s];
                values_[i] = { v, y_[s] };
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (!(hi > lo)) {
                std::swap(features_[k], features_[known]);
                ++known;
                continue;
            }
            ++evaluated;
            if (mode_ == SplitMode::Extra) {
                double thr = uniform_real(rng_, lo, hi);
                if (thr >= hi) {
                    thr = lo;
                }
                evaluate_threshold(f, thr, n, best);
            } else {
                scan_sorted(f, n, total, best);
            }
        }
        return best;
    }

    // Score = sum_c cL^2/nL + sum_c cR^2/nR (maximising it minimises weighted Gini).
    void scan_sorted(std::size_t f, std::size_t n, std::vector<double> const& total, Split& best)
    {
        std::sort(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n),
            [](auto const& a, auto const& b) { return a.first < b.first; });
        left_.assign(classes_, 0.0);
        right_ = total;
        double sq_left = 0.0;
        double sq_right = 0.0;
        for (double c : total) {
            sq_right += c * c;
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            auto const c = static_cast<std::size_t>(values_[i].second);
            sq_left += 2.0 * left_[c] + 1.0;
            left_[c] += 1.0;
            sq_right -= 2.0 * right_[c] - 1.0;
            right_[c] -= 1.0;
            double const v0 = values_[i].first;
            double const v1 = values_[i + 1].first;
            if (!(v1 > v0)) {
                continue;
            }
            auto const nl = static_cast<double>(i + 1);
            auto const nr = static_cast<double>(n - i - 1);
            double const score = sq_left / nl + sq_right / nr;
            if (score > best.score) {
                double thr = 0.5 * (v0 + v1);
                if (!(thr < v1)) {
                    thr = v0;
                }
                best = { f, thr, score, true };
            }
        }
    }

    void evaluate_threshold(std::size_t f, double thr, std::size_t n, Split& best)
    {
        left_.assign(classes_, 0.0);
        right_.assign(classes_, 0.0);
        double nl = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto const c = static_cast<std::size_t>(values_[i].second);
            if (values_[i].first <= thr) {
                left_[c] += 1.0;
                nl += 1.0;
            } else {
                right_[c] += 1.0;
            }
        }
        double const nr = static_cast<double>(n) - nl;
        if (nl == 0.0 || nr == 0.0) {
            return;
        }
        double sl = 0.0;
        double sr = 0.0;
        for (std::size_t c = 0; c < classes_; ++c) {
            sl += left_[c] * left_[c];
            sr += right_[c] * right_[c];
        }
        double const score = sl / nl + sr / nr;
        if (score > best.score) {
            best = { f, thr, score, true };
        }
    }

    FeatureMatrix const& x_;
    std::vector<double> const& cols_;
    std::span<int const> y_;
    std::size_t classes_;
    int max_depth_;
    SplitMode mode_;
    Rng& rng_;
    std::vector<std::size_t> features_;
    std::size_t mtry_;
    std::vector<std::size_t> samples_;
    std::vector<std::pair<double, int>> values_;
    std::vector<double> left_;
    std::vector<double> right_;
    std::vector<Node> nodes_;
    std::vector<double> dists_;
    int depth_ { 0 };
};

std::vector<double> column_major(FeatureMatrix const& x)
{
    std::vector<double> out(x.rows() * x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        auto row = x.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            out[c * x.rows() + r] = row[c];
        }
    }
    return out;
}

DecisionTree fit_tree(FeatureMatrix const& x, std::vector<double> const& cols, std::span<int const> y, int num_classes, int max_depth, SplitMode mode, Rng& rng, std::span<std::size_t const> samples)
{
    std::vector<std::size_t> idx;
    if (samples.empty()) {
        idx.resize(x.rows());
        std::iota(idx.begin(), idx.end(), std::size_t { 0 });
    } else {
        idx.assign(samples.begin(), samples.end());
    }
    return TreeBuilder(x, cols, y, num_classes, max_depth, mode, rng).build(std::move(idx));
}

} // namespace

DecisionTree fit_decision_tree(FeatureMatrix const& x, std::span<int const> y, int num_classes, int max_depth, SplitMode mode, Rng& rng, std::span<std::size_t const> samples)
{
    if (x.rows() == 0 || x.cols() == 0) {
        throw UsageError("fit_decision_tree: empty training matrix");
    }
    if (y.size() != x.rows()) {
        throw UsageError("fit_decision_tree: label count does not match rows");
    }
    return fit_tree(x, column_major(x), y, num_classes, max_depth, mode, rng, samples);
}

std::vector<std::size_t> bootstrap_indices(std::size_t n, Rng& rng)
{
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) {
        i = uniform_index(rng, n);
    }
    return idx;
}

std::shared_ptr<Forest> fit_forest(FeatureMatrix const& x, std::span<int const> y, int num_classes, int trees, int max_depth, SplitMode mode, Rng& rng)
{
    if (trees < 1) {
        throw DomainError("fit_forest: tree count must be positive");
    }
    if (x.rows() == 0 || x.cols() == 0) {
        throw UsageError("fit_decision_tree: empty training matrix");
    }
    if (y.size() != x.rows()) {
        throw UsageError("fit_decision_tree: label count does not match rows");
    }
    std::uint64_t const base = rng();
    auto const cols = column_major(x);
    std::vector<DecisionTree> out;
    out.reserve(static_cast<std::size_t>(trees));
    for (int t = 0; t < trees; ++t) {
        Rng tree_rng(derive_seed(base, static_cast<std::uint64_t>(t)));
        if (mode == SplitMode::Standard) {
            auto const sample = bootstrap_indices(x.rows(), tree_rng);
            out.push_back(fit_tree(x, cols, y, num_classes, max_depth, mode, tree_rng, sample));
        } else {
            out.push_back(fit_tree(x, cols, y, num_classes, max_depth, mode, tree_rng, {}));
        }
    }
    auto const family = mode == SplitMode::Standard ? Family::RF : Family::ERF;
    return std::make_shared<Forest>(family, std::move(out), num_classes, x.cols());
}

ProbabilityMatrix Forest::predict_checked(FeatureMatrix const& x) const
{
    ProbabilityMatrix out(x.rows(), static_cast<std::size_t>(num_classes_));
    double const inv = 1.0 / static_cast<double>(trees_.size());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        auto row = x.row(r);
        auto dst = out.row(r);
        for (auto const& tree : trees_) {
            auto dist = tree.predict_row(row);
            for (std::size_t c = 0; c < dst.size(); ++c) {
                dst[c] += dist[c];
            }
        }
        for (double& v : dst) {
            v *= inv;
        }
    }
    return out;
}

void Forest::dump(std::ostream& os) const
{
    os.precision(17);
    os << family_name(family_) << " trees=" << trees_.size() << " dim=" << input_dim_ << " classes=" << num_classes_ << '\n';
    for (std::size_t t = 0; t < trees_.size(); ++t) {
        os << "tree " << t;
        for (auto const& n : trees_[t].nodes()) {
            if (n.feature < 0) {
                os << " [leaf";
                for (int c = 0; c < num_classes_; ++c) {
                    os << ' ' << trees_[t].distributions()[n.distribution + static_cast<std::size_t>(c)];
                }
                os << ']';
            } else {
                os << " [x" << n.feature << "<=" << n.threshold << " " << n.left << " " << n.right << ']';
            }
        }
        os << '\n';
    }
}

} // namespace edlgp::ml
