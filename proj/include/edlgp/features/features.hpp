#pragma once

#include <span>
#include <string>
#include <vector>

#include "edlgp/image/plane.hpp"

namespace edlgp::features {

using FeatureVector = std::vector<double>;

// Notes raised while extracting features from images smaller than an
// extractor's nominal window. Passing nullptr drops them.
struct Trace {
    std::vector<std::string> notes;
    void note(std::string message) { notes.push_back(std::move(message)); }
};

inline constexpr std::size_t kHistogramBins = 256;
inline constexpr std::size_t kLbpBins = 59;
inline constexpr std::size_t kSiftLength = 128;
inline constexpr int kHogBlock = 4;
inline constexpr int kSiftMinSide = 16;

// 256-bin histogram over [min(0, min img), max(1, max img)], normalised by pixel count.
[[nodiscard]] FeatureVector histogram_features(image::ImagePlane const& img);

// Means of the non-overlapping 4x4 blocks of hog_image(img), row-major block
// order. Images narrower or shorter than 4 yield the global mean.
[[nodiscard]] FeatureVector hog_features(image::ImagePlane const& img, Trace* trace = nullptr);

// 59-bin normalised histogram of uniform LBP labels.
[[nodiscard]] FeatureVector lbp_features(image::ImagePlane const& img);

// Single 128-d SIFT descriptor over the centred square patch of side min(W,H).
[[nodiscard]] FeatureVector dense_sift_features(image::ImagePlane const& img, Trace* trace = nullptr);

[[nodiscard]] FeatureVector flatten(image::ImagePlane const& img);
[[nodiscard]] FeatureVector concat_images(image::ImagePlane const& a, image::ImagePlane const& b);

enum class FlattenKind { LBP, HOG, Sobel, Gabor, Gau, GauD };

struct FilterParams {
    int sigma { 1 };
    int order_x { 0 };
    int order_y { 0 };
    double theta { 0.0 };
    double frequency { 0.0 };
};

[[nodiscard]] FeatureVector filter_and_flatten(FlattenKind kind, image::ImagePlane const& img, FilterParams const& params = {});

[[nodiscard]] FeatureVector combine_features(std::span<FeatureVector const* const> parts);

} // namespace edlgp::features
