#include "edlgp/ml/linear.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "edlgp/core/error.hpp"

namespace edlgp::ml {

Standardizer::Standardizer(FeatureMatrix const& x)
    : mean_(x.cols(), 0.0)
    , scale_(x.cols(), 0.0)
{
    auto const n = static_cast<double>(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        auto row = x.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            mean_[c] += row[c];
        }
    }
    for (double& m : mean_) {
        m /= n;
    }
    std::vector<double> var(x.cols(), 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        auto row = x.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            double const d = row[c] - mean_[c];
            var[c] += d * d;
        }
    }
    for (std::size_t c = 0; c < var.size(); ++c) {
        double const sd = std::sqrt(var[c] / n);
        scale_[c] = sd > 1e-12 * std::max(1.0, std::abs(mean_[c])) ? 1.0 / sd : 0.0;
    }
}

FeatureMatrix Standardizer::apply(FeatureMatrix const& x) const
{
    if (x.cols() != mean_.size()) {
        throw UsageError("Standardizer: width " + std::to_string(x.cols()) + " != fitted width " + std::to_string(mean_.size()));
    }
    FeatureMatrix z(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        auto src = x.row(r);
        auto dst = z.row(r);
        for (std::size_t c = 0; c < src.size(); ++c) {
            dst[c] = scale_[c] == 0.0 ? 0.0 : (src[c] - mean_[c]) * scale_[c];
        }
    }
    return z;
}

namespace {

void check_training_data(FeatureMatrix const& x, std::span<int const> y, int num_classes)
{
    if (x.rows() == 0) {
        throw UsageError("empty training matrix");
    }
    if (y.size() != x.rows()) {
        throw UsageError("label count does not match rows");
    }
    for (int label : y) {
        if (label < 0 || label >= num_classes) {
            throw UsageError("label " + std::to_string(label) + " outside [0, " + std::to_string(num_classes) + ")");
        }
    }
}

std::optional<int> single_class(std::span<int const> y)
{
    std::set<int> distinct(y.begin(), y.end());
    if (distinct.size() == 1) {
        return *distinct.begin();
    }
    return std::nullopt;
}

// a (n x k) * b (k x m)
Matrix multiply(Matrix const& a, Matrix const& b)
{
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row(i);
        auto ar = a.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double const v = ar[k];
            if (v == 0.0) {
                continue;
            }
            auto br = b.row(k);
            for (std::size_t j = 0; j < dst.size(); ++j) {
                dst[j] += v * br[j];
            }
        }
    }
    return out;
}

// a^T (k x n)^T * b (k x m) -> n x m
Matrix multiply_transposed_a(Matrix const& a, Matrix const& b)
{
    Matrix out(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        auto ar = a.row(k);
        auto br = b.row(k);
        for (std::size_t i = 0; i < ar.size(); ++i) {
            double const v = ar[i];
            if (v == 0.0) {
                continue;
            }
            auto dst = out.row(i);
            for (std::size_t j = 0; j < br.size(); ++j) {
                dst[j] += v * br[j];
            }
        }
    }
    return out;
}

Matrix gram(Matrix const& z)
{
    Matrix k(z.rows(), z.rows());
    for (std::size_t i = 0; i < z.rows(); ++i) {
        auto zi = z.row(i);
        for (std::size_t j = 0; j <= i; ++j) {
            auto zj = z.row(j);
            double s = 0.0;
            for (std::size_t c = 0; c < zi.size(); ++c) {
                s += zi[c] * zj[c];
            }
            k(i, j) = s;
            k(j, i) = s;
        }
    }
    return k;
}

// Softmax cross-entropy on precomputed scores. Returns mean loss and writes
// residual (P - Y) / n.
double softmax_residual(Matrix const& scores, std::span<int const> y, Matrix& residual)
{
    auto const n = scores.rows();
    residual = Matrix(n, scores.cols());
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto s = scores.row(i);
        double const mx = *std::max_element(s.begin(), s.end());
        double sum = 0.0;
        auto r = residual.row(i);
        for (std::size_t c = 0; c < s.size(); ++c) {
            r[c] = std::exp(s[c] - mx);
            sum += r[c];
        }
        auto const yi = static_cast<std::size_t>(y[i]);
        loss += -(s[yi] - mx - std::log(sum));
        for (std::size_t c = 0; c < r.size(); ++c) {
            r[c] = (r[c] / sum - (c == yi ? 1.0 : 0.0)) / static_cast<double>(n);
        }
    }
    return loss / static_cast<double>(n);
}

void add_bias(Matrix& scores, std::span<double const> b)
{
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        auto s = scores.row(i);
        for (std::size_t c = 0; c < s.size(); ++c) {
            s[c] += b[c];
        }
    }
}

std::vector<double> column_sums(Matrix const& m)
{
    std::vector<double> out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        for (std::size_t c = 0; c < r.size(); ++c) {
            out[c] += r[c];
        }
    }
    return out;
}

double squared_norm(std::span<double const> v)
{
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return s;
}

double inner(Matrix const& p, Matrix const& q)
{
    double s = 0.0;
    auto d1 = p.data();
    auto d2 = q.data();
    for (std::size_t i = 0; i < d1.size(); ++i) {
        s += d1[i] * d2[i];
    }
    return s;
}

struct LrState {
    Matrix coef; // W (dim x C) in primal, A (n x C) in dual
    std::vector<double> bias;
    Matrix kcoef; // K A, dual only
};

struct LrEval {
    double loss { 0.0 };
    Matrix grad_coef;
    std::vector<double> grad_bias;
    Matrix kgrad; // K G, dual only
    double grad_norm { 0.0 };
};

ProbabilityMatrix one_hot_rows(std::size_t rows, int num_classes, int cls)
{
    ProbabilityMatrix p(rows, static_cast<std::size_t>(num_classes));
    for (std::size_t r = 0; r < rows; ++r) {
        p(r, static_cast<std::size_t>(cls)) = 1.0;
    }
    return p;
}

} // namespace

SoftmaxObjective softmax_objective(FeatureMatrix const& z, std::span<int const> y, int num_classes, Matrix const& w, std::span<double const> b, double l2)
{
    if (w.rows() != z.cols() || w.cols() != static_cast<std::size_t>(num_classes) || b.size() != w.cols()) {
        throw UsageError("softmax_objective: shape mismatch");
    }
    auto scores = multiply(z, w);
    add_bias(scores, b);
    Matrix residual;
    SoftmaxObjective out;
    out.loss = softmax_residual(scores, y, residual) + 0.5 * l2 * squared_norm(w.data());
    out.grad_w = multiply_transposed_a(z, residual);
    auto gw = out.grad_w.data();
    auto wd = w.data();
    for (std::size_t i = 0; i < gw.size(); ++i) {
        gw[i] += l2 * wd[i];
    }
    out.grad_b = column_sums(residual);
    return out;
}

std::shared_ptr<LogisticRegression> fit_logistic_regression(FeatureMatrix const& x, std::span<int const> y, int num_classes, LogisticOptions const& options)
{
    check_training_data(x, y, num_classes);
    Standardizer standardizer(x);
    auto const classes = static_cast<std::size_t>(num_classes);
    if (auto cls = single_class(y)) {
        return std::make_shared<LogisticRegression>(std::move(standardizer), Matrix(x.cols(), classes), std::vector<double>(classes, 0.0), num_classes, cls, std::vector<double> {});
    }
    auto const z = standardizer.apply(x);
    auto const n = z.rows();
    auto const d = z.cols();
    bool const dual = options.allow_dual && d > n;
    Matrix const k = dual ? gram(z) : Matrix {};
    double const l2 = options.l2;

    // In dual form K*A and K*G are carried along so each step costs one n x n product.
    auto evaluate = [&](LrState const& s) {
        LrEval e;
        if (!dual) {
            auto obj = softmax_objective(z, y, num_classes, s.coef, s.bias, l2);
            e.loss = obj.loss;
            e.grad_coef = std::move(obj.grad_w);
            e.grad_bias = std::move(obj.grad_b);
            e.grad_norm = std::sqrt(squared_norm(e.grad_coef.data()) + squared_norm(e.grad_bias));
            return e;
        }
        auto scores = s.kcoef;
        add_bias(scores, s.bias);
        Matrix residual;
        e.loss = softmax_residual(scores, y, residual) + 0.5 * l2 * inner(s.kcoef, s.coef);
        // dW = Z^T (R + l2 A), expressed through A-space direction G = R + l2 A
        e.kgrad = multiply(k, residual);
        e.grad_coef = std::move(residual);
        e.grad_bias = column_sums(e.grad_coef);
        auto g = e.grad_coef.data();
        auto kg = e.kgrad.data();
        auto a = s.coef.data();
        auto ka = s.kcoef.data();
        for (std::size_t i = 0; i < g.size(); ++i) {
            g[i] += l2 * a[i];
            kg[i] += l2 * ka[i];
        }
        e.grad_norm = std::sqrt(std::max(0.0, inner(e.kgrad, e.grad_coef)) + squared_norm(e.grad_bias));
        return e;
    };

    LrState state { Matrix(dual ? n : d, classes), std::vector<double>(classes, 0.0), dual ? Matrix(n, classes) : Matrix {} };
    auto current = evaluate(state);
    std::vector<double> history { current.loss };
    double rate = options.learning_rate;
    for (int epoch = 0; epoch < options.max_epochs; ++epoch) {
        if (current.grad_norm < options.gradient_tolerance) {
            break;
        }
        LrState candidate = state;
        auto step = [rate](Matrix& m, Matrix const& dir) {
            auto md = m.data();
            auto dd = dir.data();
            for (std::size_t i = 0; i < md.size(); ++i) {
                md[i] -= rate * dd[i];
            }
        };
        step(candidate.coef, current.grad_coef);
        if (dual) {
            step(candidate.kcoef, current.kgrad);
        }
        for (std::size_t c = 0; c < classes; ++c) {
            candidate.bias[c] -= rate * current.grad_bias[c];
        }
        auto next = evaluate(candidate);
        if (!(next.loss <= current.loss)) {
            rate *= 0.5;
            continue;
        }
        state = std::move(candidate);
        current = std::move(next);
        history.push_back(current.loss);
    }

    Matrix weights = dual ? multiply_transposed_a(z, state.coef) : std::move(state.coef);
    return std::make_shared<LogisticRegression>(std::move(standardizer), std::move(weights), std::move(state.bias), num_classes, std::nullopt, std::move(history));
}

ProbabilityMatrix LogisticRegression::predict_checked(FeatureMatrix const& x) const
{
    if (constant_class_) {
        return one_hot_rows(x.rows(), num_classes_, *constant_class_);
    }
    auto scores = multiply(standardizer_.apply(x), weights_);
    add_bias(scores, bias_);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        auto s = scores.row(i);
        double const mx = *std::max_element(s.begin(), s.end());
        double sum = 0.0;
        for (double& v : s) {
            v = std::exp(v - mx);
            sum += v;
        }
        for (double& v : s) {
            v /= sum;
        }
    }
    return scores;
}

void LogisticRegression::dump(std::ostream& os) const
{
    os.precision(17);
    os << "LR dim=" << input_dim() << " classes=" << num_classes_;
    if (constant_class_) {
        os << " constant=" << *constant_class_;
    }
    os << "\nbias";
    for (double b : bias_) {
        os << ' ' << b;
    }
    os << "\nweights";
    for (double w : weights_.data()) {
        os << ' ' << w;
    }
    os << "\nmean";
    for (double m : standardizer_.mean()) {
        os << ' ' << m;
    }
    os << "\nscale";
    for (double s : standardizer_.scale()) {
        os << ' ' << s;
    }
    os << '\n';
}

std::shared_ptr<LinearSvm> fit_linear_svm(FeatureMatrix const& x, std::span<int const> y, int num_classes, SvmOptions const& options)
{
    check_training_data(x, y, num_classes);
    Standardizer standardizer(x);
    auto const classes = static_cast<std::size_t>(num_classes);
    if (auto cls = single_class(y)) {
        return std::make_shared<LinearSvm>(std::move(standardizer), Matrix(x.cols(), classes), std::vector<double>(classes, 0.0), num_classes, cls);
    }
    auto const z = standardizer.apply(x);
    auto const n = z.rows();
    auto const d = z.cols();
    bool const dual = options.allow_dual && d + 1 > n;
    double const l2 = options.l2;
    double const radius_sq = 1.0 / l2;
    auto const inv_n = 1.0 / static_cast<double>(n);

    Matrix weights(d, classes);
    std::vector<double> bias(classes, 0.0);
    Matrix kt;
    if (dual) {
        kt = gram(z);
        for (double& v : kt.data()) {
            v += 1.0; // bias feature
        }
    }

    std::vector<double> target(n);
    std::vector<double> margin(n);
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            target[i] = y[i] == static_cast<int>(c) ? 1.0 : -1.0;
        }
        if (dual) {
            std::vector<double> alpha(n, 0.0);
            std::vector<double> kalpha(n, 0.0);
            for (int t = 1; t <= options.epochs; ++t) {
                double const eta = 1.0 / (l2 * t);
                double const shrink = 1.0 - 1.0 / t;
                for (std::size_t i = 0; i < n; ++i) {
                    margin[i] = target[i] * kalpha[i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    alpha[i] *= shrink;
                    if (margin[i] < 1.0) {
                        alpha[i] += eta * inv_n * target[i];
                    }
                }
                double norm_sq = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    auto kr = kt.row(i);
                    double s = 0.0;
                    for (std::size_t j = 0; j < n; ++j) {
                        s += kr[j] * alpha[j];
                    }
                    kalpha[i] = s;
                    norm_sq += alpha[i] * s;
                }
                if (norm_sq > radius_sq) {
                    double const f = std::sqrt(radius_sq / norm_sq);
                    for (std::size_t i = 0; i < n; ++i) {
                        alpha[i] *= f;
                        kalpha[i] *= f;
                    }
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                auto zr = z.row(i);
                for (std::size_t f = 0; f < d; ++f) {
                    weights(f, c) += alpha[i] * zr[f];
                }
                bias[c] += alpha[i];
            }
        } else {
            std::vector<double> w(d, 0.0);
            double b = 0.0;
            for (int t = 1; t <= options.epochs; ++t) {
                double const eta = 1.0 / (l2 * t);
                double const shrink = 1.0 - 1.0 / t;
                for (std::size_t i = 0; i < n; ++i) {
                    auto zr = z.row(i);
                    double s = b;
                    for (std::size_t f = 0; f < d; ++f) {
                        s += w[f] * zr[f];
                    }
                    margin[i] = target[i] * s;
                }
                for (double& v : w) {
                    v *= shrink;
                }
                b *= shrink;
                for (std::size_t i = 0; i < n; ++i) {
                    if (margin[i] < 1.0) {
                        double const step = eta * inv_n * target[i];
                        auto zr = z.row(i);
                        for (std::size_t f = 0; f < d; ++f) {
                            w[f] += step * zr[f];
                        }
                        b += step;
                    }
                }
                double const norm_sq = squared_norm(w) + b * b;
                if (norm_sq > radius_sq) {
                    double const f = std::sqrt(radius_sq / norm_sq);
                    for (double& v : w) {
                        v *= f;
                    }
                    b *= f;
                }
            }
            for (std::size_t f = 0; f < d; ++f) {
                weights(f, c) = w[f];
            }
            bias[c] = b;
        }
    }
    return std::make_shared<LinearSvm>(std::move(standardizer), std::move(weights), std::move(bias), num_classes, std::nullopt);
}

ProbabilityMatrix LinearSvm::predict_checked(FeatureMatrix const& x) const
{
    if (constant_class_) {
        return one_hot_rows(x.rows(), num_classes_, *constant_class_);
    }
    auto scores = multiply(standardizer_.apply(x), weights_);
    add_bias(scores, bias_);
    ProbabilityMatrix out(x.rows(), static_cast<std::size_t>(num_classes_));
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        out(i, static_cast<std::size_t>(argmax_label(scores.row(i)))) = 1.0;
    }
    return out;
}

void LinearSvm::dump(std::ostream& os) const
{
    os.precision(17);
    os << "SVM dim=" << input_dim() << " classes=" << num_classes_;
    if (constant_class_) {
        os << " constant=" << *constant_class_;
    }
    os << "\nbias";
    for (double b : bias_) {
        os << ' ' << b;
    }
    os << "\nweights";
    for (double w : weights_.data()) {
        os << ' ' << w;
    }
    os << '\n';
}

} // namespace edlgp::ml
