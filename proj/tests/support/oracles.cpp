#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace oracle {

int mirror(int i, int n)
{
    if (n == 1) {
        return 0;
    }
    // Walk the reflected sequence one step at a time.
    while (i < 0 || i >= n) {
        if (i < 0) {
            i = -i - 1;
        } else {
            i = 2 * n - 1 - i;
        }
    }
    return i;
}

double sample(Grid const& g, int x, int y) { return g.at(mirror(x, g.w), mirror(y, g.h)); }

Kernel outer(std::vector<double> const& kx, std::vector<double> const& ky)
{
    Kernel k;
    k.rx = static_cast<int>(kx.size()) / 2;
    k.ry = static_cast<int>(ky.size()) / 2;
    for (double b : ky) {
        for (double a : kx) {
            k.v.push_back(a * b);
        }
    }
    return k;
}

Grid convolve(Grid const& img, Kernel const& k)
{
    Grid out(img.w, img.h);
    for (int y = 0; y < img.h; ++y) {
        for (int x = 0; x < img.w; ++x) {
            double acc = 0.0;
            for (int dy = -k.ry; dy <= k.ry; ++dy) {
                for (int dx = -k.rx; dx <= k.rx; ++dx) {
                    acc += k.at(dx, dy) * sample(img, x - dx, y - dy);
                }
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

Grid correlate(Grid const& img, Kernel const& k)
{
    Grid out(img.w, img.h);
    for (int y = 0; y < img.h; ++y) {
        for (int x = 0; x < img.w; ++x) {
            double acc = 0.0;
            for (int dy = -k.ry; dy <= k.ry; ++dy) {
                for (int dx = -k.rx; dx <= k.rx; ++dx) {
                    acc += k.at(dx, dy) * sample(img, x + dx, y + dy);
                }
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

std::vector<double> gaussian_1d(int sigma, int order)
{
    int const r = 3 * sigma;
    double const s2 = sigma * sigma;
    std::vector<double> g;
    double total = 0.0;
    for (int k = -r; k <= r; ++k) {
        g.push_back(std::exp(-(k * k) / (2.0 * s2)));
        total += g.back();
    }
    for (int k = -r; k <= r; ++k) {
        double& v = g[static_cast<std::size_t>(k + r)];
        v /= total;
        // d/dk exp(-k^2/2s^2) = -k/s^2 exp(..); d2/dk2 = (k^2 - s^2)/s^4 exp(..)
        if (order == 1) {
            v = v * (-k) / s2;
        } else if (order == 2) {
            v = v * (k * k - s2) / (s2 * s2);
        }
    }
    return g;
}

Kernel gabor(double theta, double f)
{
    // One octave: sigma = (1/pi) sqrt(ln2/2) (2^b+1)/(2^b-1) * wavelength, b = 1.
    double const wavelength = 2.0 * std::numbers::pi / f;
    double const sigma = std::sqrt(std::log(2.0) / 2.0) / std::numbers::pi * 3.0 * wavelength;
    int const r = static_cast<int>(std::ceil(3.0 * sigma));
    Kernel k;
    k.rx = r;
    k.ry = r;
    for (int j = -r; j <= r; ++j) {
        for (int i = -r; i <= r; ++i) {
            double const along = i * std::cos(theta) + j * std::sin(theta);
            double const env = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma)) / (2.0 * std::numbers::pi * sigma * sigma);
            k.v.push_back(env * std::cos(f * along));
        }
    }
    return k;
}

namespace {

template <typename Fn>
Grid window(Grid const& g, Fn reduce)
{
    Grid out(g.w, g.h);
    for (int y = 0; y < g.h; ++y) {
        for (int x = 0; x < g.w; ++x) {
            std::vector<double> vals;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    vals.push_back(sample(g, x + dx, y + dy));
                }
            }
            out.at(x, y) = reduce(vals);
        }
    }
    return out;
}

} // namespace

Grid mean3(Grid const& g)
{
    return window(g, [](std::vector<double> v) {
        double s = 0.0;
        for (double a : v) {
            s += a;
        }
        return s / 9.0;
    });
}

Grid median3(Grid const& g)
{
    return window(g, [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[4];
    });
}

Grid min3(Grid const& g)
{
    return window(g, [](std::vector<double> v) { return *std::min_element(v.begin(), v.end()); });
}

Grid max3(Grid const& g)
{
    return window(g, [](std::vector<double> v) { return *std::max_element(v.begin(), v.end()); });
}

Grid laplace4(Grid const& g)
{
    Kernel k { 1, 1, { 0, 1, 0, 1, -4, 1, 0, 1, 0 } };
    return correlate(g, k);
}

Grid sobel(Grid const& g)
{
    Kernel kx { 1, 1, { -1, 0, 1, -2, 0, 2, -1, 0, 1 } };
    Kernel ky { 1, 1, { -1, -2, -1, 0, 0, 0, 1, 2, 1 } };
    Grid gx = correlate(g, kx);
    Grid gy = correlate(g, ky);
    for (std::size_t i = 0; i < gx.v.size(); ++i) {
        gx.v[i] = std::hypot(gx.v[i], gy.v[i]);
    }
    return gx;
}

namespace {

double bilinear(Grid const& g, double x, double y)
{
    int const x0 = static_cast<int>(std::floor(x));
    int const y0 = static_cast<int>(std::floor(y));
    double const tx = x - x0;
    double const ty = y - y0;
    // Interpolate along x, then y; exact on flat neighbourhoods.
    auto lerp = [](double a, double b, double t) { return a + t * (b - a); };
    double const top = lerp(sample(g, x0, y0), sample(g, x0 + 1, y0), tx);
    double const bottom = lerp(sample(g, x0, y0 + 1), sample(g, x0 + 1, y0 + 1), tx);
    return lerp(top, bottom, ty);
}

int transitions(unsigned code)
{
    int t = 0;
    for (int p = 0; p < 8; ++p) {
        unsigned const a = (code >> p) & 1U;
        unsigned const b = (code >> ((p + 1) % 8)) & 1U;
        t += a != b ? 1 : 0;
    }
    return t;
}

} // namespace

int lbp_label(Grid const& g, int x, int y)
{
    // Neighbour p sits at angle 2 pi p / 8, counter-clockwise with y pointing down.
    double const c = g.at(x, y);
    unsigned code = 0;
    for (int p = 0; p < 8; ++p) {
        double const a = 2.0 * std::numbers::pi * p / 8.0;
        double dx = 1.5 * std::cos(a);
        double dy = -1.5 * std::sin(a);
        // cos(pi/2) is not exactly zero in floating point.
        dx = std::abs(dx) < 1e-12 ? 0.0 : dx;
        dy = std::abs(dy) < 1e-12 ? 0.0 : dy;
        if (bilinear(g, x + dx, y + dy) >= c) {
            code |= 1U << p;
        }
    }
    if (transitions(code) > 2) {
        return 58;
    }
    int label = 0;
    for (unsigned k = 0; k < code; ++k) {
        if (transitions(k) <= 2) {
            ++label;
        }
    }
    return label;
}

Grid hog_image(Grid const& g)
{
    Grid mag(g.w, g.h);
    for (int y = 0; y < g.h; ++y) {
        for (int x = 0; x < g.w; ++x) {
            double const gx = sample(g, x + 1, y) - sample(g, x - 1, y);
            double const gy = sample(g, x, y + 1) - sample(g, x, y - 1);
            mag.at(x, y) = std::sqrt(gx * gx + gy * gy);
        }
    }
    Grid out(g.w, g.h);
    for (int y = 0; y < g.h; ++y) {
        for (int x = 0; x < g.w; ++x) {
            int const cx = x / 8 * 8;
            int const cy = y / 8 * 8;
            double ss = 0.0;
            for (int j = cy; j < std::min(cy + 8, g.h); ++j) {
                for (int i = cx; i < std::min(cx + 8, g.w); ++i) {
                    ss += mag.at(i, j) * mag.at(i, j);
                }
            }
            out.at(x, y) = mag.at(x, y) / (std::sqrt(ss) + 1e-8);
        }
    }
    return out;
}

std::vector<double> block_means(Grid const& g, int block)
{
    std::vector<double> out;
    for (int by = 0; by + block <= g.h; by += block) {
        for (int bx = 0; bx + block <= g.w; bx += block) {
            double s = 0.0;
            for (int y = by; y < by + block; ++y) {
                for (int x = bx; x < bx + block; ++x) {
                    s += g.at(x, y);
                }
            }
            out.push_back(s / (block * block));
        }
    }
    return out;
}

Grid pool2(Grid const& g)
{
    int const w = g.w == 1 ? 1 : g.w / 2;
    int const h = g.h == 1 ? 1 : g.h / 2;
    Grid out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double m = -INFINITY;
            for (int j = 0; j < (g.h == 1 ? 1 : 2); ++j) {
                for (int i = 0; i < (g.w == 1 ? 1 : 2); ++i) {
                    int const sx = g.w == 1 ? 0 : 2 * x + i;
                    int const sy = g.h == 1 ? 0 : 2 * y + j;
                    m = std::max(m, g.at(sx, sy));
                }
            }
            out.at(x, y) = m;
        }
    }
    return out;
}

Grid crop_center(Grid const& g, int w, int h)
{
    int const ox = (g.w - w) / 2;
    int const oy = (g.h - h) / 2;
    Grid out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            out.at(x, y) = g.at(x + ox, y + oy);
        }
    }
    return out;
}

// --- genotype checker ---

namespace {

struct Sig {
    std::string ret;
    std::vector<std::string> kids;
};

// I image, F features, P probs; lower-case entries are parameter keys.
std::map<std::string, Sig> const& signatures()
{
    static std::map<std::string, Sig> const table {
        { "Mean", { "I", { "I" } } },
        { "Median", { "I", { "I" } } },
        { "Min", { "I", { "I" } } },
        { "Max", { "I", { "I" } } },
        { "Gau", { "I", { "I", "sigma" } } },
        { "GauD", { "I", { "I", "sigma", "o1", "o2" } } },
        { "Lap", { "I", { "I" } } },
        { "LoG1", { "I", { "I" } } },
        { "LoG2", { "I", { "I" } } },
        { "Sobel", { "I", { "I" } } },
        { "Gabor", { "I", { "I", "theta", "f" } } },
        { "LBP_F", { "I", { "I" } } },
        { "HOG_F", { "I", { "I" } } },
        { "Sqrt", { "I", { "I" } } },
        { "ReLU", { "I", { "I" } } },
        { "Add_MaxP", { "I", { "I", "I" } } },
        { "Sub_MaxP", { "I", { "I", "I" } } },
        { "Conca", { "F", { "I", "I" } } },
        { "Hist", { "F", { "I" } } },
        { "HOG", { "F", { "I" } } },
        { "LBP", { "F", { "I" } } },
        { "SIFT", { "F", { "I" } } },
        { "LBP_FE", { "F", { "I" } } },
        { "HOG_FE", { "F", { "I" } } },
        { "Sobel_FE", { "F", { "I" } } },
        { "Gabor_FE", { "F", { "I", "theta", "f" } } },
        { "Gau_FE", { "F", { "I", "sigma" } } },
        { "GauD_FE", { "F", { "I", "sigma", "o1", "o2" } } },
        { "Comb2", { "F", { "F", "F" } } },
        { "Comb3", { "F", { "F", "F", "F" } } },
        { "Comb4", { "F", { "F", "F", "F", "F" } } },
        { "CC_RF", { "F", { "F", "t", "d" } } },
        { "CC_ERF", { "F", { "F", "t", "d" } } },
        { "CC_LR", { "F", { "F" } } },
        { "CC_SVM", { "F", { "F" } } },
        { "RF", { "P", { "F", "t", "d" } } },
        { "ERF", { "P", { "F", "t", "d" } } },
        { "LR", { "P", { "F" } } },
        { "SVM", { "P", { "F" } } },
        { "Sum2", { "P", { "P", "P" } } },
        { "Sum3", { "P", { "P", "P", "P" } } },
        { "Sum4", { "P", { "P", "P", "P", "P" } } },
    };
    return table;
}

std::set<std::string> param_labels(std::string const& key)
{
    std::set<std::string> s;
    if (key == "t") {
        for (int v = 50; v <= 1000; v += 50) {
            s.insert(std::to_string(v));
        }
    } else if (key == "d") {
        for (int v = 10; v <= 100; v += 10) {
            s.insert(std::to_string(v));
        }
    } else if (key == "sigma") {
        s = { "1", "2", "3" };
    } else if (key == "o1" || key == "o2") {
        s = { "0", "1", "2" };
    } else if (key == "theta") {
        s = { "0", "pi/8", "pi/4", "3pi/8", "pi/2", "5pi/8", "3pi/4", "7pi/8" };
    } else if (key == "f") {
        s = { "pi/8", "pi/8+pi/2sqrt2", "pi/2" };
    }
    return s;
}

struct Checker {
    std::string const& s;
    std::set<std::string> channels;
    std::size_t pos { 0 };
    std::optional<std::string> error;
    int max_seen { 0 };

    void fail(std::string msg)
    {
        if (!error) {
            error = msg + " at " + std::to_string(pos);
        }
    }

    void skip()
    {
        while (pos < s.size() && s[pos] == ' ') {
            ++pos;
        }
    }

    std::string atom()
    {
        std::size_t const b = pos;
        while (pos < s.size() && s[pos] != ' ' && s[pos] != '(' && s[pos] != ')') {
            ++pos;
        }
        return s.substr(b, pos - b);
    }

    // Parses one argument and returns its type code ("I", "F", "P" or a key).
    std::string node(int depth)
    {
        max_seen = std::max(max_seen, depth);
        skip();
        if (pos >= s.size()) {
            fail("unexpected end");
            return "";
        }
        if (s[pos] != '(') {
            std::string const a = atom();
            if (channels.count(a) != 0) {
                return "I";
            }
            auto const eq = a.find('=');
            if (eq == std::string::npos) {
                fail("unknown terminal " + a);
                return "";
            }
            std::string const key = a.substr(0, eq);
            if (param_labels(key).count(a.substr(eq + 1)) == 0) {
                fail("bad parameter " + a);
            }
            return key;
        }
        ++pos;
        std::string const name = atom();
        auto const it = signatures().find(name);
        if (it == signatures().end()) {
            fail("unknown function " + name);
            return "";
        }
        for (auto const& want : it->second.kids) {
            std::string const got = node(depth + 1);
            if (error) {
                return "";
            }
            if (got != want) {
                fail(name + " expected " + want + " got " + got);
                return "";
            }
        }
        skip();
        if (pos >= s.size() || s[pos] != ')') {
            fail("arity of " + name);
            return "";
        }
        ++pos;
        return it->second.ret;
    }
};

} // namespace

std::optional<std::string> check_genotype(std::string const& text, int channels, int max_depth)
{
    Checker c { text, channels == 1 ? std::set<std::string> { "Gray" } : std::set<std::string> { "Red", "Green", "Blue", "Gray" }, 0, std::nullopt, 0 };
    c.skip();
    std::size_t const root_pos = c.pos;
    std::string const t = c.node(0);
    if (c.error) {
        return c.error;
    }
    c.skip();
    if (c.pos != text.size()) {
        return "trailing text";
    }
    if (t != "P") {
        return "root type " + t;
    }
    std::string const head = text.substr(root_pos, 6);
    if (head != "(Sum2 " && head != "(Sum3 " && head != "(Sum4 ") {
        return "root is not SumN";
    }
    if (c.max_seen > max_depth) {
        return "depth " + std::to_string(c.max_seen);
    }
    return std::nullopt;
}

// --- classifiers ---

namespace {

double gini(std::vector<int> const& counts, int n)
{
    if (n == 0) {
        return 0.0;
    }
    double g = 1.0;
    for (int c : counts) {
        double const p = static_cast<double>(c) / n;
        g -= p * p;
    }
    return g;
}

SplitResult best_split_rows(std::vector<std::vector<double>> const& x, std::vector<int> const& y, int classes, std::vector<int> const& rows)
{
    SplitResult best;
    best.impurity = INFINITY;
    int const dim = static_cast<int>(x[0].size());
    for (int f = 0; f < dim; ++f) {
        std::set<double> vals;
        for (int r : rows) {
            vals.insert(x[static_cast<std::size_t>(r)][static_cast<std::size_t>(f)]);
        }
        std::vector<double> const sorted(vals.begin(), vals.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            double const thr = 0.5 * (sorted[i] + sorted[i + 1]);
            std::vector<int> lc(static_cast<std::size_t>(classes)), rc(static_cast<std::size_t>(classes));
            int nl = 0;
            int nr = 0;
            for (int r : rows) {
                auto const ur = static_cast<std::size_t>(r);
                if (x[ur][static_cast<std::size_t>(f)] <= thr) {
                    ++lc[static_cast<std::size_t>(y[ur])];
                    ++nl;
                } else {
                    ++rc[static_cast<std::size_t>(y[ur])];
                    ++nr;
                }
            }
            double const imp = (nl * gini(lc, nl) + nr * gini(rc, nr)) / (nl + nr);
            if (imp < best.impurity) {
                best = { f, thr, imp };
            }
        }
    }
    return best;
}

int correct_in(std::vector<std::vector<double>> const& x, std::vector<int> const& y, int classes, std::vector<int> const& rows, int depth)
{
    std::vector<int> counts(static_cast<std::size_t>(classes));
    for (int r : rows) {
        ++counts[static_cast<std::size_t>(y[static_cast<std::size_t>(r)])];
    }
    int const majority = *std::max_element(counts.begin(), counts.end());
    if (depth == 0 || majority == static_cast<int>(rows.size())) {
        return majority;
    }
    SplitResult const s = best_split_rows(x, y, classes, rows);
    if (s.feature < 0) {
        return majority;
    }
    std::vector<int> left, right;
    for (int r : rows) {
        (x[static_cast<std::size_t>(r)][static_cast<std::size_t>(s.feature)] <= s.threshold ? left : right).push_back(r);
    }
    return correct_in(x, y, classes, left, depth - 1) + correct_in(x, y, classes, right, depth - 1);
}

} // namespace

SplitResult best_split(std::vector<std::vector<double>> const& x, std::vector<int> const& y, int classes)
{
    std::vector<int> rows(y.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = static_cast<int>(i);
    }
    return best_split_rows(x, y, classes, rows);
}

double greedy_tree_accuracy(std::vector<std::vector<double>> const& x, std::vector<int> const& y, int classes, int depth)
{
    std::vector<int> rows(y.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = static_cast<int>(i);
    }
    return static_cast<double>(correct_in(x, y, classes, rows, depth)) / static_cast<double>(y.size());
}

double softmax_loss(std::vector<std::vector<double>> const& z, std::vector<int> const& y, int classes, std::vector<double> const& w,
    std::vector<double> const& b, double l2)
{
    double total = 0.0;
    auto const uc = static_cast<std::size_t>(classes);
    for (std::size_t r = 0; r < z.size(); ++r) {
        std::vector<double> logit(b);
        for (std::size_t c = 0; c < uc; ++c) {
            for (std::size_t j = 0; j < z[r].size(); ++j) {
                logit[c] += z[r][j] * w[j * uc + c];
            }
        }
        double const m = *std::max_element(logit.begin(), logit.end());
        double s = 0.0;
        for (double v : logit) {
            s += std::exp(v - m);
        }
        total += -(logit[static_cast<std::size_t>(y[r])] - m - std::log(s));
    }
    double reg = 0.0;
    for (double v : w) {
        reg += v * v;
    }
    return total / static_cast<double>(z.size()) + 0.5 * l2 * reg;
}

Labelled two_blobs(int n, double separation, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    Labelled out;
    for (int i = 0; i < n; ++i) {
        int const c = i % 2;
        double const cx = c == 0 ? -separation / 2.0 : separation / 2.0;
        out.x.push_back({ cx + noise(gen), noise(gen) });
        out.y.push_back(c);
    }
    return out;
}

Labelled xor_set(int copies)
{
    Labelled out;
    for (int k = 0; k < copies; ++k) {
        out.x.push_back({ 0, 0 });
        out.y.push_back(0);
        out.x.push_back({ 1, 1 });
        out.y.push_back(0);
        out.x.push_back({ 0, 1 });
        out.y.push_back(1);
        out.x.push_back({ 1, 0 });
        out.y.push_back(1);
    }
    return out;
}

double nearest_mean_accuracy(Labelled const& train, Labelled const& test)
{
    std::vector<double> m0(train.x[0].size()), m1(train.x[0].size());
    int n0 = 0;
    int n1 = 0;
    for (std::size_t i = 0; i < train.x.size(); ++i) {
        auto& m = train.y[i] == 0 ? m0 : m1;
        (train.y[i] == 0 ? n0 : n1)++;
        for (std::size_t j = 0; j < m.size(); ++j) {
            m[j] += train.x[i][j];
        }
    }
    int correct = 0;
    for (std::size_t i = 0; i < test.x.size(); ++i) {
        double d0 = 0.0;
        double d1 = 0.0;
        for (std::size_t j = 0; j < m0.size(); ++j) {
            d0 += std::pow(test.x[i][j] - m0[j] / n0, 2);
            d1 += std::pow(test.x[i][j] - m1[j] / n1, 2);
        }
        correct += (d1 < d0 ? 1 : 0) == test.y[i] ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(test.x.size());
}

double binomial_sd_percent(double p, int n) { return 100.0 * std::sqrt(p * (1.0 - p) / n); }

} // namespace oracle
