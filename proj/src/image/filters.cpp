#include "edlgp/image/filters.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

namespace edlgp::image {

namespace {

template <typename Fn>
ImagePlane window3(ImagePlane const& img, Fn&& reduce)
{
    ImagePlane out(img.width(), img.height());
    std::array<double, 9> w {};
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            std::size_t k = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    w[k++] = reflected(img, x + dx, y + dy);
                }
            }
            out(x, y) = reduce(w);
        }
    }
    return out;
}

// 3x3 correlation with an explicit kernel, kernel[dy+1][dx+1].
ImagePlane correlate3(ImagePlane const& img, std::array<std::array<double, 3>, 3> const& kernel)
{
    ImagePlane out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    acc += kernel[dy + 1][dx + 1] * reflected(img, x + dx, y + dy);
                }
            }
            out(x, y) = acc;
        }
    }
    return out;
}

ImagePlane sobel_magnitude(ImagePlane const& img)
{
    static constexpr std::array<std::array<double, 3>, 3> kx { { { -1, 0, 1 }, { -2, 0, 2 }, { -1, 0, 1 } } };
    static constexpr std::array<std::array<double, 3>, 3> ky { { { -1, -2, -1 }, { 0, 0, 0 }, { 1, 2, 1 } } };
    auto gx = correlate3(img, kx);
    auto gy = correlate3(img, ky);
    auto px = gx.pixels();
    auto py = gy.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        px[i] = std::sqrt(px[i] * px[i] + py[i] * py[i]);
    }
    return gx;
}

void check_sigma(int sigma)
{
    if (sigma < 1 || sigma > 3) {
        throw DomainError("gaussian sigma must be in {1,2,3}, got " + std::to_string(sigma));
    }
}

void check_order(int order)
{
    if (order < 0 || order > 2) {
        throw DomainError("gaussian derivative order must be in {0,1,2}, got " + std::to_string(order));
    }
}

ImagePlane add_scaled(ImagePlane a, ImagePlane const& b, double scale_b)
{
    auto pa = a.pixels();
    auto pb = b.pixels();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        pa[i] += scale_b * pb[i];
    }
    return a;
}

} // namespace

std::vector<double> gaussian_kernel_1d(int sigma, int order)
{
    check_sigma(sigma);
    check_order(order);
    int const radius = 3 * sigma;
    auto const s2 = static_cast<double>(sigma * sigma);
    std::vector<double> g(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        double const v = std::exp(-0.5 * k * k / s2);
        g[static_cast<std::size_t>(k + radius)] = v;
        sum += v;
    }
    for (auto& v : g) {
        v /= sum;
    }
    if (order == 0) {
        return g;
    }
    for (int k = -radius; k <= radius; ++k) {
        auto& v = g[static_cast<std::size_t>(k + radius)];
        if (order == 1) {
            v *= -k / s2;
        } else {
            v *= (k * k - s2) / (s2 * s2);
        }
    }
    return g;
}

ImagePlane convolve_separable(ImagePlane const& img, std::vector<double> const& kx, std::vector<double> const& ky)
{
    int const w = img.width();
    int const h = img.height();
    int const rx = static_cast<int>(kx.size() / 2);
    int const ry = static_cast<int>(ky.size() / 2);

    ImagePlane tmp(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -rx; i <= rx; ++i) {
                acc += kx[static_cast<std::size_t>(i + rx)] * img(reflect_index(x - i, w), y);
            }
            tmp(x, y) = acc;
        }
    }
    ImagePlane out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int j = -ry; j <= ry; ++j) {
                acc += ky[static_cast<std::size_t>(j + ry)] * tmp(x, reflect_index(y - j, h));
            }
            out(x, y) = acc;
        }
    }
    return out;
}

ImagePlane gaussian_filter(ImagePlane const& img, int sigma)
{
    auto const k = gaussian_kernel_1d(sigma, 0);
    return convolve_separable(img, k, k);
}

ImagePlane gaussian_derivative(ImagePlane const& img, int sigma, int order_x, int order_y)
{
    check_order(order_x);
    check_order(order_y);
    return convolve_separable(img, gaussian_kernel_1d(sigma, order_x), gaussian_kernel_1d(sigma, order_y));
}

ImagePlane laplacian_of_gaussian(ImagePlane const& img, int sigma)
{
    return add_scaled(gaussian_derivative(img, sigma, 2, 0), gaussian_derivative(img, sigma, 0, 2), 1.0);
}

double gabor_sigma(double frequency)
{
    // One-octave bandwidth: sigma * f_cycles = sqrt(ln2 / 2) * 3 / pi, with
    // f_cycles = frequency / (2 pi).
    double const prefactor = std::sqrt(std::numbers::ln2 / 2.0) * 3.0 / std::numbers::pi;
    return prefactor * 2.0 * std::numbers::pi / frequency;
}

GaborKernel gabor_kernel(double theta, double frequency)
{
    if (!(frequency > 0.0)) {
        throw DomainError("gabor frequency must be positive");
    }
    double const sigma = gabor_sigma(frequency);
    int const r = static_cast<int>(std::ceil(3.0 * sigma));
    int const n = 2 * r + 1;
    GaborKernel k { r, sigma, std::vector<double>(static_cast<std::size_t>(n * n)) };
    double const norm = 1.0 / (2.0 * std::numbers::pi * sigma * sigma);
    for (int j = -r; j <= r; ++j) {
        for (int i = -r; i <= r; ++i) {
            double const xr = i * std::cos(theta) + j * std::sin(theta);
            double const g = std::exp(-0.5 * (i * i + j * j) / (sigma * sigma));
            k.values[static_cast<std::size_t>((j + r) * n + (i + r))] = norm * g * std::cos(frequency * xr);
        }
    }
    return k;
}

ImagePlane gabor_filter(ImagePlane const& img, double theta, double frequency)
{
    // The isotropic Gaussian envelope factorises, and
    // cos(a x + b y) = cos(a x) cos(b y) - sin(a x) sin(b y),
    // so the kernel is a difference of two separable kernels.
    double const sigma = gabor_sigma(frequency);
    int const r = static_cast<int>(std::ceil(3.0 * sigma));
    double const a = frequency * std::cos(theta);
    double const b = frequency * std::sin(theta);
    double const norm = 1.0 / (2.0 * std::numbers::pi * sigma * sigma);
    auto const n = static_cast<std::size_t>(2 * r + 1);
    std::vector<double> cx(n), sx(n), cy(n), sy(n);
    for (int k = -r; k <= r; ++k) {
        double const g = std::exp(-0.5 * k * k / (sigma * sigma));
        auto const idx = static_cast<std::size_t>(k + r);
        cx[idx] = norm * g * std::cos(a * k);
        sx[idx] = norm * g * std::sin(a * k);
        cy[idx] = g * std::cos(b * k);
        sy[idx] = g * std::sin(b * k);
    }
    return add_scaled(convolve_separable(img, cx, cy), convolve_separable(img, sx, sy), -1.0);
}

double bilinear(ImagePlane const& img, double x, double y) noexcept
{
    double const fx0 = std::floor(x);
    double const fy0 = std::floor(y);
    double const tx = x - fx0;
    double const ty = y - fy0;
    auto const x0 = static_cast<int>(fx0);
    auto const y0 = static_cast<int>(fy0);
    double const v00 = reflected(img, x0, y0);
    double const v10 = reflected(img, x0 + 1, y0);
    double const v01 = reflected(img, x0, y0 + 1);
    double const v11 = reflected(img, x0 + 1, y0 + 1);
    // lerp form keeps constant neighbourhoods exact
    double const top = v00 + tx * (v10 - v00);
    double const bottom = v01 + tx * (v11 - v01);
    return top + ty * (bottom - top);
}

int uniform_lbp_label(unsigned code) noexcept
{
    static auto const table = [] {
        std::array<int, 256> t {};
        int next = 0;
        for (unsigned c = 0; c < 256; ++c) {
            unsigned const rotated = ((c >> 1U) | ((c & 1U) << 7U)) & 0xFFU;
            int const transitions = std::popcount(c ^ rotated);
            t[c] = transitions <= 2 ? next++ : -1;
        }
        for (auto& v : t) {
            if (v < 0) {
                v = next; // 58
            }
        }
        return t;
    }();
    return table[code & 0xFFU];
}

unsigned lbp_code(ImagePlane const& img, int x, int y)
{
    static auto const offsets = [] {
        std::array<std::pair<double, double>, 8> o {};
        constexpr double radius = 1.5;
        for (int p = 0; p < 8; ++p) {
            double const angle = 2.0 * std::numbers::pi * p / 8.0;
            double dx = radius * std::cos(angle);
            double dy = -radius * std::sin(angle);
            if (std::abs(dx) < 1e-12) {
                dx = 0.0;
            }
            if (std::abs(dy) < 1e-12) {
                dy = 0.0;
            }
            o[static_cast<std::size_t>(p)] = { dx, dy };
        }
        return o;
    }();
    double const center = img(x, y);
    unsigned code = 0;
    for (std::size_t p = 0; p < 8; ++p) {
        double const v = bilinear(img, x + offsets[p].first, y + offsets[p].second);
        if (v >= center) {
            code |= 1U << p;
        }
    }
    return code;
}

ImagePlane lbp_image(ImagePlane const& img)
{
    ImagePlane out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            out(x, y) = uniform_lbp_label(lbp_code(img, x, y)) / 58.0;
        }
    }
    return out;
}

ImagePlane hog_image(ImagePlane const& img)
{
    int const w = img.width();
    int const h = img.height();
    ImagePlane mag(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double const gx = reflected(img, x + 1, y) - reflected(img, x - 1, y);
            double const gy = reflected(img, x, y + 1) - reflected(img, x, y - 1);
            mag(x, y) = std::sqrt(gx * gx + gy * gy);
        }
    }
    for (int cy = 0; cy < h; cy += kHogCell) {
        for (int cx = 0; cx < w; cx += kHogCell) {
            int const ey = std::min(cy + kHogCell, h);
            int const ex = std::min(cx + kHogCell, w);
            double ss = 0.0;
            for (int y = cy; y < ey; ++y) {
                for (int x = cx; x < ex; ++x) {
                    ss += mag(x, y) * mag(x, y);
                }
            }
            double const denom = std::sqrt(ss) + kHogEpsilon;
            for (int y = cy; y < ey; ++y) {
                for (int x = cx; x < ex; ++x) {
                    mag(x, y) /= denom;
                }
            }
        }
    }
    return mag;
}

ImagePlane fixed_filter(FixedFilter kind, ImagePlane const& img)
{
    switch (kind) {
    case FixedFilter::Mean:
        return window3(img, [](auto const& w) {
            double s = 0.0;
            for (double v : w) {
                s += v;
            }
            return s / 9.0;
        });
    case FixedFilter::Median:
        return window3(img, [](auto w) {
            std::nth_element(w.begin(), w.begin() + 4, w.end());
            return w[4];
        });
    case FixedFilter::Min:
        return window3(img, [](auto const& w) { return *std::min_element(w.begin(), w.end()); });
    case FixedFilter::Max:
        return window3(img, [](auto const& w) { return *std::max_element(w.begin(), w.end()); });
    case FixedFilter::Lap:
        return correlate3(img, { { { 0, 1, 0 }, { 1, -4, 1 }, { 0, 1, 0 } } });
    case FixedFilter::LoG1:
        return laplacian_of_gaussian(img, 1);
    case FixedFilter::LoG2:
        return laplacian_of_gaussian(img, 2);
    case FixedFilter::Sobel:
        return sobel_magnitude(img);
    case FixedFilter::Sqrt: {
        ImagePlane out = img;
        for (auto& v : out.pixels()) {
            v = v < 0.0 ? 1.0 : std::sqrt(v);
        }
        return out;
    }
    case FixedFilter::ReLU: {
        ImagePlane out = img;
        for (auto& v : out.pixels()) {
            v = std::max(v, 0.0);
        }
        return out;
    }
    }
    throw InternalError("fixed_filter: unknown kind");
}

ImagePlane max_pool2(ImagePlane const& img)
{
    int const w = img.width();
    int const h = img.height();
    int const ow = w == 1 ? 1 : w / 2;
    int const oh = h == 1 ? 1 : h / 2;
    int const sx = w == 1 ? 1 : 2;
    int const sy = h == 1 ? 1 : 2;
    ImagePlane out(ow, oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double m = img(x * sx, y * sy);
            for (int dy = 0; dy < sy; ++dy) {
                for (int dx = 0; dx < sx; ++dx) {
                    m = std::max(m, img(x * sx + dx, y * sy + dy));
                }
            }
            out(x, y) = m;
        }
    }
    return out;
}

ImagePlane center_crop(ImagePlane const& img, int width, int height)
{
    if (width == img.width() && height == img.height()) {
        return img;
    }
    int const ox = (img.width() - width) / 2;
    int const oy = (img.height() - height) / 2;
    ImagePlane out(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            out(x, y) = img(ox + x, oy + y);
        }
    }
    return out;
}

ImagePlane pooled_combine(PoolCombine kind, ImagePlane const& a, ImagePlane const& b)
{
    ImagePlane pa;
    ImagePlane pb;
    if (a.width() == b.width() && a.height() == b.height()) {
        pa = max_pool2(a);
        pb = max_pool2(b);
    } else {
        bool const a_larger = a.size() >= b.size();
        ImagePlane large = a_larger ? a : b;
        ImagePlane const& small = a_larger ? b : a;
        while ((large.width() > small.width() || large.height() > small.height()) && large.size() > 1) {
            large = max_pool2(large);
        }
        pa = a_larger ? large : a;
        pb = a_larger ? b : large;
        int const w = std::min(pa.width(), pb.width());
        int const h = std::min(pa.height(), pb.height());
        pa = center_crop(pa, w, h);
        pb = center_crop(pb, w, h);
    }
    double const sign = kind == PoolCombine::Add ? 1.0 : -1.0;
    auto out = pa;
    auto po = out.pixels();
    auto pbp = pb.pixels();
    for (std::size_t i = 0; i < po.size(); ++i) {
        po[i] += sign * pbp[i];
    }
    return out;
}

} // namespace edlgp::image
