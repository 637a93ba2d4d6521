#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edlgp/core/error.hpp"

namespace edlgp::image {

// 2-D plane of real pixel values, row-major: index = y * width + x.
class ImagePlane {
public:
    ImagePlane() = default;
    ImagePlane(int width, int height, double fill = 0.0)
        : width_(width)
        , height_(height)
    {
        if (width < 1 || height < 1) {
            throw DomainError("ImagePlane: dimensions must be >= 1");
        }
        pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }
    ImagePlane(int width, int height, std::vector<double> pixels)
        : width_(width)
        , height_(height)
        , pixels_(std::move(pixels))
    {
        if (width < 1 || height < 1 || pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
            throw DomainError("ImagePlane: pixel count does not match dimensions");
        }
    }

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t size() const noexcept { return pixels_.size(); }

    [[nodiscard]] double operator()(int x, int y) const noexcept { return pixels_[index(x, y)]; }
    [[nodiscard]] double& operator()(int x, int y) noexcept { return pixels_[index(x, y)]; }

    [[nodiscard]] std::span<double const> pixels() const noexcept { return pixels_; }
    [[nodiscard]] std::span<double> pixels() noexcept { return pixels_; }

    bool operator==(ImagePlane const&) const = default;

private:
    [[nodiscard]] std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ { 0 };
    int height_ { 0 };
    std::vector<double> pixels_;
};

// Half-sample symmetric reflection (edge pixel repeated): ... b a | a b c | c b ...
[[nodiscard]] constexpr int reflect_index(int i, int n) noexcept
{
    if (n == 1) {
        return 0;
    }
    int const period = 2 * n;
    i %= period;
    if (i < 0) {
        i += period;
    }
    return i < n ? i : period - 1 - i;
}

[[nodiscard]] inline double reflected(ImagePlane const& img, int x, int y) noexcept
{
    return img(reflect_index(x, img.width()), reflect_index(y, img.height()));
}

} // namespace edlgp::image
