#pragma once

#include <cstdint>

#include "edlgp/data/dataset.hpp"

namespace edlgp::data {

// Two-class gray images: class 0 carries a bright horizontal bar, class 1 a
// vertical one, at a random offset. Gaussian noise, clipped to [0, 1].
// Labels alternate 0, 1, 0, ...
[[nodiscard]] Dataset make_bars(int per_class, int side, double noise, std::uint64_t seed, std::string name = "bars");

} // namespace edlgp::data
