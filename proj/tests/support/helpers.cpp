#include "helpers.hpp"

#include <algorithm>
#include <cmath>

namespace helpers {

edlgp::image::ImagePlane to_plane(oracle::Grid const& g) { return edlgp::image::ImagePlane(g.w, g.h, g.v); }

oracle::Grid to_grid(edlgp::image::ImagePlane const& p)
{
    oracle::Grid g(p.width(), p.height());
    std::copy(p.pixels().begin(), p.pixels().end(), g.v.begin());
    return g;
}

oracle::Grid random_grid(int w, int h, std::mt19937_64& gen, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    oracle::Grid g(w, h);
    for (auto& v : g.v) {
        v = u(gen);
    }
    return g;
}

double max_abs_diff(oracle::Grid const& a, oracle::Grid const& b)
{
    if (a.w != b.w || a.h != b.h) {
        return INFINITY;
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        m = std::max(m, std::abs(a.v[i] - b.v[i]));
    }
    return m;
}

edlgp::data::Dataset gray_dataset(int w, int h, int classes, std::vector<std::vector<float>> const& images, std::vector<int> const& labels)
{
    std::vector<float> pixels;
    for (auto const& img : images) {
        pixels.insert(pixels.end(), img.begin(), img.end());
    }
    return edlgp::data::Dataset("test", w, h, 1, classes, std::move(pixels), labels);
}

edlgp::data::Dataset uninformative_dataset(std::vector<int> const& labels, int classes, int side)
{
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<float> u(0.0F, 1.0F);
    std::vector<float> one(static_cast<std::size_t>(side * side));
    for (auto& v : one) {
        v = u(gen);
    }
    std::vector<std::vector<float>> images(labels.size(), one);
    return gray_dataset(side, side, classes, images, labels);
}

edlgp::data::Dataset noise_dataset(std::vector<int> const& labels, int classes, int side, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<float> u(0.0F, 1.0F);
    std::vector<std::vector<float>> images;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::vector<float> img(static_cast<std::size_t>(side * side));
        for (auto& v : img) {
            v = u(gen);
        }
        images.push_back(std::move(img));
    }
    return gray_dataset(side, side, classes, images, labels);
}

edlgp::data::Dataset brightness_dataset(std::vector<int> const& labels, int classes, int side, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<float> u(-0.02F, 0.02F);
    std::vector<std::vector<float>> images;
    for (int c : labels) {
        std::vector<float> img(static_cast<std::size_t>(side * side));
        float const base = static_cast<float>(c + 1) / static_cast<float>(classes + 1);
        for (auto& v : img) {
            v = std::clamp(base + u(gen), 0.0F, 1.0F);
        }
        images.push_back(std::move(img));
    }
    return gray_dataset(side, side, classes, images, labels);
}

std::vector<int> balanced_labels(int per_class, int classes)
{
    std::vector<int> y;
    for (int i = 0; i < per_class; ++i) {
        for (int c = 0; c < classes; ++c) {
            y.push_back(c);
        }
    }
    return y;
}

} // namespace helpers
