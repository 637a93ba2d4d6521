#include "edlgp/pipeline/executor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "edlgp/core/error.hpp"
#include "edlgp/core/random.hpp"
#include "edlgp/features/features.hpp"
#include "edlgp/gp/registry.hpp"
#include "edlgp/gp/sexpr.hpp"
#include "edlgp/image/filters.hpp"

namespace edlgp::pipeline {

using gp::Op;

namespace {

bool is_classifier(Op op)
{
    switch (op) {
    case Op::CcRf:
    case Op::CcErf:
    case Op::CcLr:
    case Op::CcSvm:
    case Op::Rf:
    case Op::Erf:
    case Op::Lr:
    case Op::Svm:
        return true;
    default:
        return false;
    }
}

bool is_cascade(Op op)
{
    return op == Op::CcRf || op == Op::CcErf || op == Op::CcLr || op == Op::CcSvm;
}

ml::Family family_of(Op op)
{
    switch (op) {
    case Op::CcRf:
    case Op::Rf:
        return ml::Family::RF;
    case Op::CcErf:
    case Op::Erf:
        return ml::Family::ERF;
    case Op::CcLr:
    case Op::Lr:
        return ml::Family::LR;
    case Op::CcSvm:
    case Op::Svm:
        return ml::Family::SVM;
    default:
        throw InternalError("not a classifier primitive");
    }
}

std::string hex(std::uint64_t v)
{
    std::ostringstream s;
    s << std::hex << v;
    return s.str();
}

std::uint64_t rows_digest(std::span<std::size_t const> rows)
{
    return hash_bytes(std::string_view(reinterpret_cast<char const*>(rows.data()), rows.size() * sizeof(std::size_t)));
}

std::uint64_t options_digest(ExecOptions const& o)
{
    std::ostringstream s;
    s.precision(17);
    s << o.cascade_oof << ' ' << o.linear.lr.l2 << ' ' << o.linear.lr.learning_rate << ' ' << o.linear.lr.max_epochs << ' ' << o.linear.lr.gradient_tolerance << ' ' << o.linear.lr.allow_dual << ' ' << o.linear.svm.l2 << ' ' << o.linear.svm.epochs << ' ' << o.linear.svm.allow_dual;
    return hash_bytes(s.str());
}

FeatureMatrix to_matrix(std::vector<features::FeatureVector> const& rows)
{
    if (rows.empty()) {
        return FeatureMatrix(0, 0);
    }
    auto const dim = rows.front().size();
    FeatureMatrix m(rows.size(), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != dim) {
            throw InternalError("feature width differs between instances");
        }
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

image::FixedFilter fixed_kind(Op op)
{
    switch (op) {
    case Op::Mean:
        return image::FixedFilter::Mean;
    case Op::Median:
        return image::FixedFilter::Median;
    case Op::Min:
        return image::FixedFilter::Min;
    case Op::Max:
        return image::FixedFilter::Max;
    case Op::Lap:
        return image::FixedFilter::Lap;
    case Op::LoG1:
        return image::FixedFilter::LoG1;
    case Op::LoG2:
        return image::FixedFilter::LoG2;
    case Op::Sobel:
        return image::FixedFilter::Sobel;
    case Op::Sqrt:
        return image::FixedFilter::Sqrt;
    case Op::Relu:
        return image::FixedFilter::ReLU;
    default:
        throw InternalError("not a fixed filter");
    }
}

} // namespace

std::uint64_t node_seed(std::uint64_t run_seed, std::string const& subtree_text) noexcept
{
    return derive_seed(derive_seed(run_seed, "node"), std::string_view(subtree_text));
}

std::string node_path(gp::Tree const& tree, std::size_t i)
{
    std::vector<int> slots;
    std::size_t cur = 0;
    while (cur != i) {
        auto const kids = tree.children(cur);
        bool moved = false;
        for (std::size_t k = 0; k < kids.size(); ++k) {
            if (kids[k] <= i && i < tree.subtree_end(kids[k])) {
                slots.push_back(static_cast<int>(k));
                cur = kids[k];
                moved = true;
                break;
            }
        }
        if (!moved) {
            throw InternalError("node index outside tree");
        }
    }
    std::string out;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (k) {
            out += '.';
        }
        out += std::to_string(slots[k]);
    }
    return out;
}

Executor::Executor(gp::PrimitiveSet const& pset, gp::Tree const& tree, std::uint64_t run_seed, ExecOptions options, SubtreeCache* cache)
    : pset_(pset)
    , tree_(tree)
    , seed_(run_seed)
    , options_(options)
    , cache_(cache)
    , texts_(tree.size())
    , children_(tree.size())
    , pure_(tree.size(), true)
{
    for (std::size_t i = 0; i < tree.size(); ++i) {
        texts_[i] = gp::render_subtree(tree, i, pset);
        children_[i] = tree.children(i);
    }
    for (std::size_t i = tree.size(); i-- > 0;) {
        auto const& n = tree[i];
        if (n.type == gp::GpType::Probs) {
            pure_[i] = false;
        } else if (n.kind == gp::NodeKind::Function) {
            if (is_classifier(gp::op_of(pset.primitive(n.value)))) {
                pure_[i] = false;
            }
            for (auto c : children_[i]) {
                if (!pure_[c]) {
                    pure_[i] = false;
                }
            }
        }
    }
}

namespace {

void merge_notes(std::vector<std::string>& into, std::vector<std::string> const& from)
{
    for (auto const& m : from) {
        if (std::find(into.begin(), into.end(), m) == into.end()) {
            into.push_back(m);
        }
    }
}

} // namespace

double Executor::param(std::size_t node) const
{
    auto const& n = tree_[node];
    auto const* d = pset_.param_domain(n.type);
    if (n.kind != gp::NodeKind::Param || d == nullptr) {
        throw InternalError("expected a parameter node");
    }
    return d->values.at(n.value);
}

std::shared_ptr<PureResult const> Executor::pure_value(std::size_t node, data::Dataset const& ds)
{
    auto const local_key = std::make_pair(node, ds.fingerprint());
    if (auto it = local_.find(local_key); it != local_.end()) {
        return it->second;
    }
    std::string const key = "P|" + hex(ds.fingerprint()) + "|" + texts_[node];
    if (cache_ != nullptr) {
        if (auto hit = cache_->find_pure(key)) {
            return hit;
        }
    }
    std::shared_ptr<PureResult const> value;
    try {
        value = std::make_shared<PureResult const>(compute_pure(node, ds));
    } catch (ExecutionError const&) {
        throw;
    } catch (std::exception const& e) {
        auto const& n = tree_[node];
        std::string const name = n.kind == gp::NodeKind::Function ? pset_.primitive(n.value).name : texts_[node];
        throw ExecutionError(name + ": " + e.what(), node_path(tree_, node));
    }
    if (cache_ != nullptr) {
        cache_->store_pure(key, value);
    }
    if (tree_[node].type == gp::GpType::Features) {
        local_.emplace(local_key, value);
    }
    return value;
}

PureResult Executor::compute_pure(std::size_t node, data::Dataset const& ds)
{
    PureResult result;
    auto const& n = tree_[node];
    auto const count = ds.size();
    if (n.kind == gp::NodeKind::Channel) {
        ImageBatch out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(ds.plane(i, static_cast<gp::Channel>(n.value)));
        }
        result.value = std::move(out);
        return result;
    }
    if (n.kind != gp::NodeKind::Function) {
        throw InternalError("parameter node evaluated as data");
    }
    auto const op = gp::op_of(pset_.primitive(n.value));
    auto const& kids = children_[node];
    std::vector<std::shared_ptr<PureResult const>> held;
    auto images = [&](std::size_t k) -> ImageBatch const& {
        held.push_back(pure_value(kids[k], ds));
        merge_notes(result.notes, held.back()->notes);
        return std::get<ImageBatch>(held.back()->value);
    };
    auto feats = [&](std::size_t k) -> FeatureMatrix const& {
        held.push_back(pure_value(kids[k], ds));
        merge_notes(result.notes, held.back()->notes);
        return std::get<FeatureMatrix>(held.back()->value);
    };

    if (n.type == gp::GpType::Image) {
        ImageBatch out;
        out.reserve(count);
        auto const& a = images(0);
        switch (op) {
        case Op::Gau: {
            int const sigma = static_cast<int>(param(kids[1]));
            for (auto const& img : a) {
                out.push_back(image::gaussian_filter(img, sigma));
            }
            break;
        }
        case Op::GauD: {
            int const sigma = static_cast<int>(param(kids[1]));
            int const o1 = static_cast<int>(param(kids[2]));
            int const o2 = static_cast<int>(param(kids[3]));
            for (auto const& img : a) {
                out.push_back(image::gaussian_derivative(img, sigma, o1, o2));
            }
            break;
        }
        case Op::Gabor: {
            double const theta = param(kids[1]);
            double const f = param(kids[2]);
            for (auto const& img : a) {
                out.push_back(image::gabor_filter(img, theta, f));
            }
            break;
        }
        case Op::LbpF:
            for (auto const& img : a) {
                out.push_back(image::lbp_image(img));
            }
            break;
        case Op::HogF:
            for (auto const& img : a) {
                out.push_back(image::hog_image(img));
            }
            break;
        case Op::AddMaxP:
        case Op::SubMaxP: {
            auto const& b = images(1);
            auto const kind = op == Op::AddMaxP ? image::PoolCombine::Add : image::PoolCombine::Sub;
            for (std::size_t i = 0; i < count; ++i) {
                out.push_back(image::pooled_combine(kind, a[i], b[i]));
            }
            break;
        }
        default: {
            auto const kind = fixed_kind(op);
            for (auto const& img : a) {
                out.push_back(image::fixed_filter(kind, img));
            }
            break;
        }
        }
        result.value = std::move(out);
        return result;
    }

    if (n.type != gp::GpType::Features) {
        throw InternalError("pure evaluation of a non-data node");
    }
    if (op == Op::Comb2 || op == Op::Comb3 || op == Op::Comb4) {
        FeatureMatrix acc = feats(0);
        for (std::size_t k = 1; k < kids.size(); ++k) {
            acc = hconcat(acc, feats(k));
        }
        result.value = std::move(acc);
        return result;
    }

    features::Trace trace;
    std::vector<features::FeatureVector> rows;
    rows.reserve(count);
    auto const& a = images(0);
    auto flatten_with = [&](features::FlattenKind kind, features::FilterParams p) {
        for (auto const& img : a) {
            rows.push_back(features::filter_and_flatten(kind, img, p));
        }
    };
    switch (op) {
    case Op::Conca: {
        auto const& b = images(1);
        for (std::size_t i = 0; i < count; ++i) {
            rows.push_back(features::concat_images(a[i], b[i]));
        }
        break;
    }
    case Op::Hist:
        for (auto const& img : a) {
            rows.push_back(features::histogram_features(img));
        }
        break;
    case Op::Hog:
        for (auto const& img : a) {
            rows.push_back(features::hog_features(img, &trace));
        }
        break;
    case Op::Lbp:
        for (auto const& img : a) {
            rows.push_back(features::lbp_features(img));
        }
        break;
    case Op::Sift:
        for (auto const& img : a) {
            rows.push_back(features::dense_sift_features(img, &trace));
        }
        break;
    case Op::LbpFE:
        flatten_with(features::FlattenKind::LBP, {});
        break;
    case Op::HogFE:
        flatten_with(features::FlattenKind::HOG, {});
        break;
    case Op::SobelFE:
        flatten_with(features::FlattenKind::Sobel, {});
        break;
    case Op::GaborFE: {
        features::FilterParams p;
        p.theta = param(kids[1]);
        p.frequency = param(kids[2]);
        flatten_with(features::FlattenKind::Gabor, p);
        break;
    }
    case Op::GauFE: {
        features::FilterParams p;
        p.sigma = static_cast<int>(param(kids[1]));
        flatten_with(features::FlattenKind::Gau, p);
        break;
    }
    case Op::GauDFE: {
        features::FilterParams p;
        p.sigma = static_cast<int>(param(kids[1]));
        p.order_x = static_cast<int>(param(kids[2]));
        p.order_y = static_cast<int>(param(kids[3]));
        flatten_with(features::FlattenKind::GauD, p);
        break;
    }
    default:
        throw InternalError("unhandled feature primitive " + pset_.primitive(n.value).name);
    }
    std::vector<std::string> own;
    for (auto& m : trace.notes) {
        own.push_back(pset_.primitive(n.value).name + ": " + m);
    }
    merge_notes(result.notes, own);
    result.value = to_matrix(rows);
    return result;
}

FoldValue Executor::run(Side fit, Side eval, bool need_fit, Phenotype* record)
{
    if (fit.dataset == nullptr || tree_.empty()) {
        throw UsageError("Executor::run needs a fit dataset and a tree");
    }
    if (eval.dataset == nullptr) {
        eval = Side { fit.dataset, {} };
    }
    if (eval.dataset->signature() != fit.dataset->signature()) {
        throw UsageError("fit and eval datasets differ in signature");
    }
    std::vector<int> labels;
    labels.reserve(fit.rows.size());
    for (auto r : fit.rows) {
        labels.push_back(fit.dataset->labels().at(r));
    }
    auto out = run_node(0, fit, labels, eval, need_fit, record);
    notes_ = out.notes;
    return out;
}

FoldValue Executor::run_node(std::size_t node, Side fit, std::span<int const> fit_labels, Side eval, bool need_fit, Phenotype* record)
{
    if (pure_[node]) {
        FoldValue out;
        auto fv = pure_value(node, *fit.dataset);
        auto const& fm = std::get<FeatureMatrix>(fv->value);
        out.notes = fv->notes;
        if (need_fit) {
            out.fit = gather_rows(fm, fit.rows);
            out.has_fit = true;
        }
        if (eval.dataset == fit.dataset) {
            out.eval = gather_rows(fm, eval.rows);
        } else {
            auto ev = pure_value(node, *eval.dataset);
            out.eval = gather_rows(std::get<FeatureMatrix>(ev->value), eval.rows);
            merge_notes(out.notes, ev->notes);
        }
        return out;
    }
    auto const& n = tree_[node];
    auto const& prim = pset_.primitive(n.value);
    auto const op = gp::op_of(prim);
    if (is_classifier(op)) {
        return run_classifier(node, fit, fit_labels, eval, need_fit, record);
    }
    auto const& kids = children_[node];
    bool const comb = op == Op::Comb2 || op == Op::Comb3 || op == Op::Comb4;
    bool const sum = op == Op::Sum2 || op == Op::Sum3 || op == Op::Sum4;
    if (!comb && !sum) {
        throw InternalError("unexpected impure primitive " + prim.name);
    }
    std::vector<FoldValue> parts;
    parts.reserve(kids.size());
    for (auto c : kids) {
        parts.push_back(run_node(c, fit, fit_labels, eval, need_fit, record));
    }
    FoldValue out;
    out.has_fit = need_fit;
    for (auto const& p : parts) {
        merge_notes(out.notes, p.notes);
    }
    try {
        if (comb) {
            out.eval = parts[0].eval;
            if (need_fit) {
                out.fit = parts[0].fit;
            }
            for (std::size_t k = 1; k < parts.size(); ++k) {
                out.eval = hconcat(out.eval, parts[k].eval);
                if (need_fit) {
                    out.fit = hconcat(out.fit, parts[k].fit);
                }
            }
        } else {
            std::vector<ProbabilityMatrix const*> ev;
            std::vector<ProbabilityMatrix const*> fv;
            for (auto const& p : parts) {
                ev.push_back(&p.eval);
                fv.push_back(&p.fit);
            }
            out.eval = ml::sum_probabilities(ev);
            if (need_fit) {
                out.fit = ml::sum_probabilities(fv);
            }
        }
    } catch (ExecutionError const&) {
        throw;
    } catch (std::exception const& e) {
        throw ExecutionError(prim.name + ": " + e.what(), node_path(tree_, node));
    }
    return out;
}

FoldValue Executor::run_classifier(std::size_t node, Side fit, std::span<int const> fit_labels, Side eval, bool need_fit, Phenotype* record)
{
    auto const& prim = pset_.primitive(tree_[node].value);
    auto const op = gp::op_of(prim);
    bool const cascade = is_cascade(op);
    bool const want_fit = need_fit || cascade;

    std::string key;
    if (cache_ != nullptr && record == nullptr) {
        std::uint64_t h = hash_combine(seed_, options_digest(options_));
        h = hash_combine(h, fit.dataset->fingerprint());
        h = hash_combine(h, rows_digest(fit.rows));
        h = hash_combine(h, eval.dataset->fingerprint());
        h = hash_combine(h, rows_digest(eval.rows));
        h = hash_combine(h, want_fit ? 1 : 0);
        key = "C|" + hex(h) + "|" + std::to_string(fit.rows.size()) + "/" + std::to_string(eval.rows.size()) + "|" + texts_[node];
        if (auto hit = cache_->find_fold(key)) {
            return *hit;
        }
    }

    auto const& kids = children_[node];
    auto child = run_node(kids[0], fit, fit_labels, eval, true, record);
    FoldValue out;
    out.notes = child.notes;
    try {
        ml::ForestParams forest;
        if (kids.size() == 3) {
            forest.trees = static_cast<int>(param(kids[1]));
            forest.max_depth = static_cast<int>(param(kids[2]));
        }
        auto const family = family_of(op);
        int const classes = fit.dataset->num_classes();
        auto const seed = node_seed(seed_, texts_[node]);
        auto model = ml::fit_classifier(family, child.fit, fit_labels, classes, forest, seed, options_.linear);
        if (record != nullptr) {
            record->models[node] = model;
        }
        if (cascade) {
            if (options_.cascade_oof) {
                auto const oof = ml::out_of_fold_predictions(family, child.fit, fit_labels, classes, forest, seed, *model, options_.linear);
                out.fit = ml::cascade_transform(*model, child.fit, &oof);
            } else {
                out.fit = ml::cascade_transform(*model, child.fit);
            }
            out.eval = ml::cascade_transform(*model, child.eval);
        } else {
            if (need_fit) {
                out.fit = model->predict_proba(child.fit);
            }
            out.eval = model->predict_proba(child.eval);
        }
        out.has_fit = want_fit;
    } catch (ExecutionError const&) {
        throw;
    } catch (std::exception const& e) {
        throw ExecutionError(prim.name + ": " + e.what(), node_path(tree_, node));
    }
    if (!key.empty()) {
        cache_->store_fold(key, std::make_shared<FoldValue const>(out));
    }
    return out;
}

ProbabilityMatrix Executor::predict(Phenotype const& phenotype, data::Dataset const& ds)
{
    if (!(phenotype.genotype == tree_)) {
        throw UsageError("phenotype genotype differs from the executor's tree");
    }
    notes_.clear();
    return predict_node(0, phenotype, ds);
}

namespace {

Matrix flatten(PureValue const& v)
{
    if (auto const* m = std::get_if<FeatureMatrix>(&v)) {
        return *m;
    }
    auto const& batch = std::get<ImageBatch>(v);
    if (batch.empty()) {
        return {};
    }
    Matrix out(batch.size(), batch[0].size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (batch[i].size() != batch[0].size()) {
            throw InternalError("image batch with mixed sizes");
        }
        std::copy(batch[i].pixels().begin(), batch[i].pixels().end(), out.row(i).begin());
    }
    return out;
}

} // namespace

std::map<std::size_t, Matrix> Executor::node_outputs(Phenotype const& phenotype, data::Dataset const& ds)
{
    std::map<std::size_t, Matrix> out;
    capture_ = &out;
    try {
        (void)predict(phenotype, ds);
    } catch (...) {
        capture_ = nullptr;
        throw;
    }
    capture_ = nullptr;
    for (std::size_t i = 0; i < tree_.size(); ++i) {
        if (tree_[i].kind == gp::NodeKind::Function && pure_[i] && !out.contains(i)) {
            out.emplace(i, flatten(pure_value(i, ds)->value));
        }
    }
    return out;
}

Matrix Executor::predict_node(std::size_t node, Phenotype const& phenotype, data::Dataset const& ds)
{
    if (capture_ == nullptr || pure_[node]) {
        return predict_value(node, phenotype, ds);
    }
    auto m = predict_value(node, phenotype, ds);
    capture_->emplace(node, m);
    return m;
}

Matrix Executor::predict_value(std::size_t node, Phenotype const& phenotype, data::Dataset const& ds)
{
    if (pure_[node]) {
        auto v = pure_value(node, ds);
        merge_notes(notes_, v->notes);
        return std::get<FeatureMatrix>(v->value);
    }
    auto const& prim = pset_.primitive(tree_[node].value);
    auto const op = gp::op_of(prim);
    auto const& kids = children_[node];
    if (is_classifier(op)) {
        auto const x = predict_node(kids[0], phenotype, ds);
        auto it = phenotype.models.find(node);
        if (it == phenotype.models.end()) {
            throw ExecutionError(prim.name + ": no fitted model", node_path(tree_, node));
        }
        try {
            return is_cascade(op) ? ml::cascade_transform(*it->second, x) : it->second->predict_proba(x);
        } catch (std::exception const& e) {
            throw ExecutionError(prim.name + ": " + e.what(), node_path(tree_, node));
        }
    }
    std::vector<Matrix> parts;
    for (auto c : kids) {
        parts.push_back(predict_node(c, phenotype, ds));
    }
    if (op == Op::Comb2 || op == Op::Comb3 || op == Op::Comb4) {
        Matrix acc = parts[0];
        for (std::size_t k = 1; k < parts.size(); ++k) {
            acc = hconcat(acc, parts[k]);
        }
        return acc;
    }
    std::vector<ProbabilityMatrix const*> ptrs;
    for (auto const& p : parts) {
        ptrs.push_back(&p);
    }
    return ml::sum_probabilities(ptrs);
}

FitResult execute_fit(gp::PrimitiveSet const& pset, gp::Tree const& genotype, data::Dataset const& ds, std::uint64_t seed, ExecOptions const& options)
{
    if (ds.empty()) {
        throw UsageError("execute_fit on an empty dataset");
    }
    std::vector<std::size_t> rows(ds.size());
    std::iota(rows.begin(), rows.end(), 0);
    FitResult result;
    result.phenotype = Phenotype { genotype, {}, ds.signature(), seed, options };
    Executor ex(pset, genotype, seed, options, nullptr);
    auto v = ex.run({ &ds, rows }, { &ds, {} }, true, &result.phenotype);
    result.root = std::move(v.fit);
    result.notes = ex.notes();
    return result;
}

PredictResult execute_predict(gp::PrimitiveSet const& pset, Phenotype const& phenotype, data::Dataset const& ds)
{
    if (ds.signature() != phenotype.signature) {
        throw UsageError("dataset signature " + ds.signature().to_string() + " differs from fit signature " + phenotype.signature.to_string());
    }
    PredictResult result;
    if (ds.empty()) {
        result.root = ProbabilityMatrix(0, static_cast<std::size_t>(phenotype.signature.classes));
        return result;
    }
    Executor ex(pset, phenotype.genotype, phenotype.seed, phenotype.options, nullptr);
    result.root = ex.predict(phenotype, ds);
    result.labels = ml::argmax_rows(result.root);
    result.notes = ex.notes();
    return result;
}

} // namespace edlgp::pipeline
