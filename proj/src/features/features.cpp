#include "edlgp/features/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edlgp/image/filters.hpp"

namespace edlgp::features {

using image::ImagePlane;

FeatureVector histogram_features(ImagePlane const& img)
{
    auto px = img.pixels();
    auto [mn, mx] = std::minmax_element(px.begin(), px.end());
    double const lo = std::min(0.0, *mn);
    double const hi = std::max(1.0, *mx);
    double const scale = static_cast<double>(kHistogramBins) / (hi - lo);
    FeatureVector hist(kHistogramBins, 0.0);
    double const unit = 1.0 / static_cast<double>(px.size());
    for (double v : px) {
        auto bin = static_cast<std::size_t>((v - lo) * scale);
        bin = std::min(bin, kHistogramBins - 1);
        hist[bin] += unit;
    }
    return hist;
}

FeatureVector hog_features(ImagePlane const& img, Trace* trace)
{
    auto const hog = image::hog_image(img);
    if (img.width() < kHogBlock || img.height() < kHogBlock) {
        if (trace != nullptr) {
            trace->note("HOG: image " + std::to_string(img.width()) + "x" + std::to_string(img.height()) + " below 4x4, using global mean");
        }
        double s = 0.0;
        for (double v : hog.pixels()) {
            s += v;
        }
        return { s / static_cast<double>(hog.size()) };
    }
    int const bw = img.width() / kHogBlock;
    int const bh = img.height() / kHogBlock;
    FeatureVector out;
    out.reserve(static_cast<std::size_t>(bw * bh));
    for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
            double s = 0.0;
            for (int y = 0; y < kHogBlock; ++y) {
                for (int x = 0; x < kHogBlock; ++x) {
                    s += hog(bx * kHogBlock + x, by * kHogBlock + y);
                }
            }
            out.push_back(s / (kHogBlock * kHogBlock));
        }
    }
    return out;
}

FeatureVector lbp_features(ImagePlane const& img)
{
    FeatureVector hist(kLbpBins, 0.0);
    double const unit = 1.0 / static_cast<double>(img.size());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            hist[static_cast<std::size_t>(image::uniform_lbp_label(image::lbp_code(img, x, y)))] += unit;
        }
    }
    return hist;
}

FeatureVector dense_sift_features(ImagePlane const& img, Trace* trace)
{
    constexpr int spatial = 4;
    constexpr int orientations = 8;
    int x0 = 0;
    int y0 = 0;
    int pw = img.width();
    int ph = img.height();
    if (img.width() >= kSiftMinSide && img.height() >= kSiftMinSide) {
        int const side = std::min(img.width(), img.height());
        x0 = (img.width() - side) / 2;
        y0 = (img.height() - side) / 2;
        pw = side;
        ph = side;
    } else if (trace != nullptr) {
        trace->note("SIFT: image " + std::to_string(img.width()) + "x" + std::to_string(img.height()) + " below 16, descriptor spans whole image");
    }
    double const bin_w = pw / static_cast<double>(spatial);
    double const bin_h = ph / static_cast<double>(spatial);
    double const orient_step = 2.0 * std::numbers::pi / orientations;

    FeatureVector desc(kSiftLength, 0.0);
    for (int y = y0; y < y0 + ph; ++y) {
        for (int x = x0; x < x0 + pw; ++x) {
            double const gx = image::reflected(img, x + 1, y) - image::reflected(img, x - 1, y);
            double const gy = image::reflected(img, x, y + 1) - image::reflected(img, x, y - 1);
            double const mag = std::sqrt(gx * gx + gy * gy);
            if (mag == 0.0) {
                continue;
            }
            double angle = std::atan2(gy, gx);
            if (angle < 0.0) {
                angle += 2.0 * std::numbers::pi;
            }
            // continuous bin coordinates; bin centres sit at integer values
            double const u = (x - x0 + 0.5) / bin_w - 0.5;
            double const v = (y - y0 + 0.5) / bin_h - 0.5;
            double const o = angle / orient_step;
            int const u0 = static_cast<int>(std::floor(u));
            int const v0 = static_cast<int>(std::floor(v));
            int const o0 = static_cast<int>(std::floor(o));
            double const fu = u - u0;
            double const fv = v - v0;
            double const fo = o - o0;
            for (int dv = 0; dv <= 1; ++dv) {
                int const by = v0 + dv;
                if (by < 0 || by >= spatial) {
                    continue;
                }
                double const wv = dv == 0 ? 1.0 - fv : fv;
                for (int du = 0; du <= 1; ++du) {
                    int const bx = u0 + du;
                    if (bx < 0 || bx >= spatial) {
                        continue;
                    }
                    double const wu = du == 0 ? 1.0 - fu : fu;
                    for (int d_o = 0; d_o <= 1; ++d_o) {
                        int const ob = (o0 + d_o) % orientations;
                        double const wo = d_o == 0 ? 1.0 - fo : fo;
                        desc[static_cast<std::size_t>((by * spatial + bx) * orientations + ob)] += mag * wv * wu * wo;
                    }
                }
            }
        }
    }

    auto normalise = [&desc] {
        double ss = 0.0;
        for (double d : desc) {
            ss += d * d;
        }
        if (ss > 0.0) {
            double const inv = 1.0 / std::sqrt(ss);
            for (double& d : desc) {
                d *= inv;
            }
        }
    };
    normalise();
    for (double& d : desc) {
        d = std::min(d, 0.2);
    }
    normalise();
    return desc;
}

FeatureVector flatten(ImagePlane const& img)
{
    auto px = img.pixels();
    return { px.begin(), px.end() };
}

FeatureVector concat_images(ImagePlane const& a, ImagePlane const& b)
{
    FeatureVector out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.pixels().begin(), a.pixels().end());
    out.insert(out.end(), b.pixels().begin(), b.pixels().end());
    return out;
}

FeatureVector filter_and_flatten(FlattenKind kind, ImagePlane const& img, FilterParams const& params)
{
    switch (kind) {
    case FlattenKind::LBP:
        return flatten(image::lbp_image(img));
    case FlattenKind::HOG:
        return flatten(image::hog_image(img));
    case FlattenKind::Sobel:
        return flatten(image::fixed_filter(image::FixedFilter::Sobel, img));
    case FlattenKind::Gabor:
        return flatten(image::gabor_filter(img, params.theta, params.frequency));
    case FlattenKind::Gau:
        return flatten(image::gaussian_filter(img, params.sigma));
    case FlattenKind::GauD:
        return flatten(image::gaussian_derivative(img, params.sigma, params.order_x, params.order_y));
    }
    return {};
}

FeatureVector combine_features(std::span<FeatureVector const* const> parts)
{
    std::size_t n = 0;
    for (auto const* p : parts) {
        n += p->size();
    }
    FeatureVector out;
    out.reserve(n);
    for (auto const* p : parts) {
        out.insert(out.end(), p->begin(), p->end());
    }
    return out;
}

} // namespace edlgp::features
