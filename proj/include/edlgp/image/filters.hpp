#pragma once

#include <vector>

#include "edlgp/image/plane.hpp"

namespace edlgp::image {

enum class FixedFilter { Mean, Median, Min, Max, Lap, LoG1, LoG2, Sobel, Sqrt, ReLU };

// Parameter-free filters; all preserve dimensions and use reflect borders.
[[nodiscard]] ImagePlane fixed_filter(FixedFilter kind, ImagePlane const& img);

// Same-size Gaussian smoothing, sigma in {1,2,3}, radius 3*sigma.
[[nodiscard]] ImagePlane gaussian_filter(ImagePlane const& img, int sigma);

// Convolution with d^order_x/dx d^order_y/dy of the sampled Gaussian.
// order_x runs along the width (columns), order_y along the height (rows).
[[nodiscard]] ImagePlane gaussian_derivative(ImagePlane const& img, int sigma, int order_x, int order_y);

// Laplacian of Gaussian: d2/dx2 + d2/dy2 of the sampled Gaussian.
[[nodiscard]] ImagePlane laplacian_of_gaussian(ImagePlane const& img, int sigma);

// Real part of the Gabor kernel. `frequency` is angular (radians per pixel),
// sigma follows from a one-octave bandwidth.
[[nodiscard]] ImagePlane gabor_filter(ImagePlane const& img, double theta, double frequency);

// Uniform LBP label per pixel (P=8, R=1.5), label / 58.
[[nodiscard]] ImagePlane lbp_image(ImagePlane const& img);

// Gradient magnitude normalised by the L2 norm of its 8x8 cell.
[[nodiscard]] ImagePlane hog_image(ImagePlane const& img);

enum class PoolCombine { Add, Sub };

[[nodiscard]] ImagePlane max_pool2(ImagePlane const& img);
[[nodiscard]] ImagePlane center_crop(ImagePlane const& img, int width, int height);
[[nodiscard]] ImagePlane pooled_combine(PoolCombine kind, ImagePlane const& a, ImagePlane const& b);

// --- building blocks, exposed for tests and feature extraction ---

// 1-D sampled Gaussian derivative kernel of the given order (0, 1, 2), length
// 2*radius+1 where radius = 3*sigma. Entry k corresponds to offset k - radius.
[[nodiscard]] std::vector<double> gaussian_kernel_1d(int sigma, int order);

// Separable true convolution: out(x,y) = sum_{i,j} kx[i] ky[j] img(x-i, y-j),
// offsets centred on the kernel middles.
[[nodiscard]] ImagePlane convolve_separable(ImagePlane const& img, std::vector<double> const& kx, std::vector<double> const& ky);

struct GaborKernel {
    int radius;
    double sigma;
    std::vector<double> values; // (2r+1)^2 row-major, entry (j, i) is offset (i-r, j-r)
};

[[nodiscard]] double gabor_sigma(double frequency);
[[nodiscard]] GaborKernel gabor_kernel(double theta, double frequency);

// Uniform-pattern label in [0, 58] of an 8-bit circular code; 58 = non-uniform.
[[nodiscard]] int uniform_lbp_label(unsigned code) noexcept;
[[nodiscard]] unsigned lbp_code(ImagePlane const& img, int x, int y);

// Bilinear sample with reflect borders.
[[nodiscard]] double bilinear(ImagePlane const& img, double x, double y) noexcept;

inline constexpr double kHogEpsilon = 1e-8;
inline constexpr int kHogCell = 8;

} // namespace edlgp::image
