#pragma once

// Glue between the oracles and library types, plus small dataset builders.

#include <cstdint>
#include <random>
#include <vector>

#include "edlgp/data/dataset.hpp"
#include "edlgp/image/plane.hpp"
#include "oracles.hpp"

namespace helpers {

[[nodiscard]] edlgp::image::ImagePlane to_plane(oracle::Grid const& g);
[[nodiscard]] oracle::Grid to_grid(edlgp::image::ImagePlane const& p);
[[nodiscard]] oracle::Grid random_grid(int w, int h, std::mt19937_64& gen, double lo = 0.0, double hi = 1.0);
[[nodiscard]] double max_abs_diff(oracle::Grid const& a, oracle::Grid const& b);

// Gray dataset from explicit per-instance pixel lists.
[[nodiscard]] edlgp::data::Dataset gray_dataset(int w, int h, int classes, std::vector<std::vector<float>> const& images, std::vector<int> const& labels);
// Every image identical: no feature can tell the classes apart.
[[nodiscard]] edlgp::data::Dataset uninformative_dataset(std::vector<int> const& labels, int classes, int side = 8);
// Uniform noise images with the given labels.
[[nodiscard]] edlgp::data::Dataset noise_dataset(std::vector<int> const& labels, int classes, int side, std::uint64_t seed);
// Class c images are constant (c + 1) / (classes + 1) plus small noise.
[[nodiscard]] edlgp::data::Dataset brightness_dataset(std::vector<int> const& labels, int classes, int side, std::uint64_t seed);

[[nodiscard]] std::vector<int> balanced_labels(int per_class, int classes);

} // namespace helpers
