#include <doctest.h>

#include <cmath>
#include <sstream>

#include "edlgp/core/error.hpp"
#include "edlgp/ml/forest.hpp"
#include "edlgp/ml/linear.hpp"
#include "oracles.hpp"

using namespace edlgp;
using namespace edlgp::ml;

namespace {

FeatureMatrix to_matrix(std::vector<std::vector<double>> const& rows)
{
    FeatureMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

double train_accuracy(Classifier const& clf, FeatureMatrix const& x, std::vector<int> const& y)
{
    auto const labels = argmax_rows(clf.predict_proba(x));
    int ok = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ok += labels[i] == y[i] ? 1 : 0;
    }
    return static_cast<double>(ok) / static_cast<double>(y.size());
}

void check_rows_sum_to_one(ProbabilityMatrix const& p)
{
    for (std::size_t r = 0; r < p.rows(); ++r) {
        double s = 0.0;
        for (double v : p.row(r)) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            s += v;
        }
        CHECK(std::abs(s - 1.0) <= 1e-9);
    }
}

std::string dump(Classifier const& c)
{
    std::ostringstream os;
    c.dump(os);
    return os.str();
}

} // namespace

TEST_CASE("decision tree basics")
{
    FeatureMatrix x(6, 1);
    std::vector<int> y { 0, 0, 0, 1, 1, 1 };
    for (std::size_t i = 0; i < 6; ++i) {
        x(i, 0) = static_cast<double>(i);
    }
    Rng rng(1);
    auto const t = fit_decision_tree(x, y, 2, 1, SplitMode::Standard, rng);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(t.predict_row(x.row(i))[static_cast<std::size_t>(y[i])] == 1.0);
    }

    std::vector<int> same(6, 1);
    auto const leaf = fit_decision_tree(x, same, 3, 5, SplitMode::Standard, rng);
    CHECK(leaf.nodes().size() == 1);
    CHECK(leaf.predict_row(x.row(0))[1] == 1.0);

    FeatureMatrix flat(5, 2, 0.5);
    std::vector<int> mix { 0, 1, 1, 0, 1 };
    auto const c = fit_decision_tree(flat, mix, 2, 5, SplitMode::Standard, rng);
    CHECK(c.nodes().size() == 1);
    CHECK(c.predict_row(flat.row(0))[1] == doctest::Approx(0.6));

    CHECK_THROWS_AS((void)fit_decision_tree(FeatureMatrix(0, 2), {}, 2, 5, SplitMode::Standard, rng), UsageError);
}

TEST_CASE("XOR is learnt exactly")
{
    auto const data = oracle::xor_set(25);
    // the exhaustive greedy search says depth 2 suffices
    CHECK(oracle::greedy_tree_accuracy(data.x, data.y, 2, 2) == 1.0);
    CHECK(oracle::greedy_tree_accuracy(data.x, data.y, 2, 1) == 0.5);
    auto const x = to_matrix(data.x);
    for (auto mode : { SplitMode::Standard, SplitMode::Extra }) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Rng rng(seed);
            auto const f = fit_forest(x, data.y, 2, 50, 10, mode, rng);
            CHECK(train_accuracy(*f, x, data.y) == 1.0);
        }
    }
    Rng rng(3);
    auto const tree = fit_decision_tree(x, data.y, 2, 2, SplitMode::Standard, rng);
    int ok = 0;
    for (std::size_t i = 0; i < data.y.size(); ++i) {
        auto const d = tree.predict_row(x.row(i));
        ok += d[static_cast<std::size_t>(data.y[i])] == 1.0 ? 1 : 0;
    }
    CHECK(ok == 100);
}

TEST_CASE("root split matches the exhaustive oracle")
{
    oracle::Labelled data;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        double const a = u(gen);
        data.x.push_back({ a });
        data.y.push_back(a + 0.1 * u(gen) > 0.55 ? 1 : 0);
    }
    auto const best = oracle::best_split(data.x, data.y, 2);
    Rng rng(0);
    auto const t = fit_decision_tree(to_matrix(data.x), data.y, 2, 1, SplitMode::Standard, rng);
    REQUIRE(t.nodes().size() == 3);
    CHECK(t.nodes()[0].feature == best.feature);
    CHECK(t.nodes()[0].threshold == doctest::Approx(best.threshold));
}

TEST_CASE("single-tree forest equals one bootstrap tree")
{
    auto const data = oracle::two_blobs(60, 2.0, 4);
    auto const x = to_matrix(data.x);
    Rng rng(12);
    auto const f = fit_forest(x, data.y, 2, 1, 10, SplitMode::Standard, rng);
    Rng again(12);
    Rng tree_rng(derive_seed(again(), 0));
    auto const sample = bootstrap_indices(x.rows(), tree_rng);
    auto const t = fit_decision_tree(x, data.y, 2, 10, SplitMode::Standard, tree_rng, sample);
    REQUIRE(f->trees().size() == 1);
    CHECK(f->trees()[0] == t);
}

TEST_CASE("forests: probabilities, determinism, blobs")
{
    auto const train = oracle::two_blobs(200, 4.0, 1);
    auto const held = oracle::two_blobs(400, 4.0, 2);
    CHECK(oracle::nearest_mean_accuracy(train, held) >= 0.95);
    auto const x = to_matrix(train.x);
    for (auto mode : { SplitMode::Standard, SplitMode::Extra }) {
        Rng a(9);
        Rng b(9);
        auto const f = fit_forest(x, train.y, 2, 50, 10, mode, a);
        auto const g = fit_forest(x, train.y, 2, 50, 10, mode, b);
        CHECK(dump(*f) == dump(*g));
        auto const p = f->predict_proba(to_matrix(held.x));
        check_rows_sum_to_one(p);
        CHECK(train_accuracy(*f, x, train.y) >= 0.95);
    }
}

TEST_CASE("logistic regression")
{
    auto const train = oracle::two_blobs(200, 4.0, 1);
    auto const x = to_matrix(train.x);
    auto const lr = fit_logistic_regression(x, train.y, 2);
    CHECK(train_accuracy(*lr, x, train.y) >= 0.95);
    check_rows_sum_to_one(lr->predict_proba(x));
    auto const& hist = lr->loss_history();
    REQUIRE(hist.size() > 1);
    for (std::size_t i = 1; i < hist.size(); ++i) {
        CHECK(hist[i] <= hist[i - 1]);
    }

    FeatureMatrix one(8, 1);
    std::vector<int> y1 { 0, 0, 0, 0, 1, 1, 1, 1 };
    for (std::size_t i = 0; i < 8; ++i) {
        one(i, 0) = static_cast<double>(i);
    }
    CHECK(train_accuracy(*fit_logistic_regression(one, y1, 2), one, y1) == 1.0);

    std::vector<int> single(8, 2);
    auto const deg = fit_logistic_regression(one, single, 3);
    auto const p = deg->predict_proba(one);
    for (std::size_t r = 0; r < 8; ++r) {
        CHECK(p(r, 2) == 1.0);
    }
}

TEST_CASE("softmax objective matches the oracle and finite differences")
{
    std::mt19937_64 gen(17);
    std::normal_distribution<double> n(0.0, 1.0);
    int const rows = 12;
    int const dim = 4;
    int const classes = 3;
    std::vector<std::vector<double>> z(rows, std::vector<double>(dim));
    std::vector<int> y(rows);
    FeatureMatrix zm(rows, dim);
    for (int r = 0; r < rows; ++r) {
        y[static_cast<std::size_t>(r)] = r % classes;
        for (int j = 0; j < dim; ++j) {
            z[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = n(gen);
            zm(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) = z[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
    }
    double const l2 = 1e-2;
    for (int point = 0; point < 2; ++point) {
        // at initialisation (zeros) and at a random point
        std::vector<double> w(dim * classes, 0.0);
        std::vector<double> b(classes, 0.0);
        if (point == 1) {
            for (auto& v : w) {
                v = n(gen);
            }
            for (auto& v : b) {
                v = n(gen);
            }
        }
        Matrix wm(dim, classes);
        std::copy(w.begin(), w.end(), wm.data().begin());
        auto const obj = softmax_objective(zm, y, classes, wm, b, l2);
        CHECK(obj.loss == doctest::Approx(oracle::softmax_loss(z, y, classes, w, b, l2)).epsilon(1e-12));
        double const h = 1e-5;
        for (std::size_t k = 0; k < w.size(); ++k) {
            auto wp = w;
            auto wn = w;
            wp[k] += h;
            wn[k] -= h;
            double const fd = (oracle::softmax_loss(z, y, classes, wp, b, l2) - oracle::softmax_loss(z, y, classes, wn, b, l2)) / (2 * h);
            double const an = obj.grad_w.data()[k];
            CHECK(std::abs(fd - an) <= 1e-5 * std::max(1.0, std::abs(fd)));
        }
        for (std::size_t k = 0; k < b.size(); ++k) {
            auto bp = b;
            auto bn = b;
            bp[k] += h;
            bn[k] -= h;
            double const fd = (oracle::softmax_loss(z, y, classes, w, bp, l2) - oracle::softmax_loss(z, y, classes, w, bn, l2)) / (2 * h);
            CHECK(std::abs(fd - obj.grad_b[k]) <= 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("dual and primal LR agree")
{
    std::mt19937_64 gen(3);
    std::normal_distribution<double> n(0.0, 1.0);
    FeatureMatrix x(10, 30);
    std::vector<int> y(10);
    for (std::size_t r = 0; r < 10; ++r) {
        y[r] = static_cast<int>(r % 3);
        for (auto& v : x.row(r)) {
            v = n(gen) + (y[r] == 1 ? 0.5 : 0.0);
        }
    }
    LogisticOptions primal;
    primal.allow_dual = false;
    auto const a = fit_logistic_regression(x, y, 3);
    auto const b = fit_logistic_regression(x, y, 3, primal);
    auto const pa = a->predict_proba(x);
    auto const pb = b->predict_proba(x);
    for (std::size_t i = 0; i < pa.data().size(); ++i) {
        CHECK(std::abs(pa.data()[i] - pb.data()[i]) <= 1e-8);
    }
}

TEST_CASE("linear SVM")
{
    auto const train = oracle::two_blobs(200, 4.0, 1);
    auto const x = to_matrix(train.x);
    auto const svm = fit_linear_svm(x, train.y, 2);
    CHECK(train_accuracy(*svm, x, train.y) >= 0.95);

    std::mt19937_64 gen(8);
    std::normal_distribution<double> n(0.0, 1.0);
    FeatureMatrix m(30, 5);
    std::vector<int> y(30);
    for (std::size_t r = 0; r < 30; ++r) {
        y[r] = static_cast<int>(r % 4);
        for (std::size_t j = 0; j < 5; ++j) {
            m(r, j) = n(gen) + (static_cast<int>(j) == y[r] ? 2.0 : 0.0);
        }
    }
    auto const s = fit_linear_svm(m, y, 4);
    auto const p = s->predict_proba(m);
    auto const mean = s->standardizer().mean();
    auto const scale = s->standardizer().scale();
    for (std::size_t r = 0; r < 30; ++r) {
        int ones = 0;
        for (double v : p.row(r)) {
            CHECK((v == 0.0 || v == 1.0));
            ones += v == 1.0 ? 1 : 0;
        }
        CHECK(ones == 1);
        // brute-force margins in standardised space
        int best = 0;
        double best_score = -INFINITY;
        for (std::size_t c = 0; c < 4; ++c) {
            double score = s->bias()[c];
            for (std::size_t j = 0; j < 5; ++j) {
                score += (m(r, j) - mean[j]) * scale[j] * s->weights()(j, c);
            }
            if (score > best_score) {
                best_score = score;
                best = static_cast<int>(c);
            }
        }
        CHECK(p(r, static_cast<std::size_t>(best)) == 1.0);
    }

    FeatureMatrix one(6, 1);
    for (std::size_t i = 0; i < 6; ++i) {
        one(i, 0) = static_cast<double>(i);
    }
    std::vector<int> sep { 0, 0, 0, 1, 1, 1 };
    CHECK(train_accuracy(*fit_linear_svm(one, sep, 2), one, sep) == 1.0);
    std::vector<int> single(6, 1);
    auto const c = fit_linear_svm(one, single, 2)->predict_proba(one);
    for (std::size_t r = 0; r < 6; ++r) {
        CHECK(c(r, 1) == 1.0);
    }
}

TEST_CASE("cascade transform")
{
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    FeatureMatrix x(40, 315);
    std::vector<int> y(40);
    for (std::size_t r = 0; r < 40; ++r) {
        y[r] = static_cast<int>(r % 10);
        for (auto& v : x.row(r)) {
            v = u(gen);
        }
    }
    auto const lr = fit_classifier(Family::LR, x, y, 10, {}, 1);
    auto const out = cascade_transform(*lr, x);
    CHECK(out.cols() == 325);
    for (std::size_t r = 0; r < 40; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < 315; ++c) {
            CHECK(out(r, c) == x(r, c));
        }
        for (std::size_t c = 315; c < 325; ++c) {
            s += out(r, c);
        }
        CHECK(std::abs(s - 1.0) <= 1e-9);
    }
    auto const oof = out_of_fold_predictions(Family::LR, x, y, 10, {}, 1, *lr);
    CHECK(oof.rows() == 40);
    CHECK(oof.cols() == 10);
    auto const with = cascade_transform(*lr, x, &oof);
    CHECK(with(3, 317) == oof(3, 2));

    auto const svm = fit_classifier(Family::SVM, x, y, 10, {}, 1);
    auto const hard = cascade_transform(*svm, x);
    for (std::size_t r = 0; r < 40; ++r) {
        double s = 0.0;
        for (std::size_t c = 315; c < 325; ++c) {
            CHECK((hard(r, c) == 0.0 || hard(r, c) == 1.0));
            s += hard(r, c);
        }
        CHECK(s == 1.0);
    }
    CHECK_THROWS((void)lr->predict_proba(FeatureMatrix(2, 3)));
}

TEST_CASE("sum and argmax")
{
    ProbabilityMatrix a(1, 2);
    a(0, 0) = 0.2;
    a(0, 1) = 0.8;
    ProbabilityMatrix b(1, 2);
    b(0, 0) = 0.5;
    b(0, 1) = 0.5;
    std::vector<ProbabilityMatrix const*> ab { &a, &b };
    std::vector<ProbabilityMatrix const*> ba { &b, &a };
    auto const s = sum_probabilities(ab);
    CHECK(s(0, 0) == doctest::Approx(0.7));
    CHECK(s(0, 1) == doctest::Approx(1.3));
    CHECK(sum_probabilities(ba) == s);
    std::vector<ProbabilityMatrix const*> aaa { &a, &a, &a };
    auto const t = sum_probabilities(aaa);
    CHECK(t(0, 1) == doctest::Approx(2.4));

    std::vector<double> v { 0.7, 1.3 };
    CHECK(argmax_label(v) == 1);
    std::vector<double> tie { 0.5, 0.5 };
    CHECK(argmax_label(tie) == 0);
    std::vector<double> uni(10, 0.1);
    CHECK(argmax_label(uni) == 0);
    std::vector<double> w { 0.1, 0.4, 0.3, 0.4 };
    int const base = argmax_label(w);
    for (double k : { 0.5, 3.0, 1e6 }) {
        std::vector<double> scaled;
        for (double x : w) {
            scaled.push_back(x * k);
        }
        CHECK(argmax_label(scaled) == base);
    }
}

TEST_CASE("stratified folds are balanced")
{
    std::vector<int> y;
    for (int i = 0; i < 37; ++i) {
        y.push_back(i % 4 == 0 ? 0 : (i % 3 == 0 ? 1 : 2));
    }
    for (int k = 2; k <= 3; ++k) {
        auto const folds = stratified_fold_assignment(y, k, 5);
        for (int c = 0; c < 3; ++c) {
            std::vector<int> counts(static_cast<std::size_t>(k));
            int in_class = 0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                if (y[i] == c) {
                    ++counts[static_cast<std::size_t>(folds[i])];
                    ++in_class;
                }
            }
            double const ideal = static_cast<double>(in_class) / k;
            for (int n : counts) {
                CHECK(std::abs(n - ideal) < 1.0);
            }
        }
    }
    CHECK(stratified_fold_assignment(y, 3, 5) == stratified_fold_assignment(y, 3, 5));
}
