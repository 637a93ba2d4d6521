#include "edlgp/data/synthetic.hpp"

#include <algorithm>

#include "edlgp/core/error.hpp"
#include "edlgp/core/random.hpp"

namespace edlgp::data {

Dataset make_bars(int per_class, int side, double noise, std::uint64_t seed, std::string name)
{
    if (per_class < 1 || side < 4) {
        throw ConfigError("make_bars: per_class >= 1 and side >= 4 required");
    }
    Rng rng(seed);
    auto const plane = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
    std::vector<float> px;
    px.reserve(plane * 2 * static_cast<std::size_t>(per_class));
    std::vector<int> labels;
    int const thickness = std::max(1, side / 8);
    for (int i = 0; i < 2 * per_class; ++i) {
        int const label = i % 2;
        int const offset = uniform_int(rng, 1, side - 1 - thickness);
        for (int y = 0; y < side; ++y) {
            for (int x = 0; x < side; ++x) {
                int const coord = label == 0 ? y : x;
                double v = coord >= offset && coord < offset + thickness ? 0.8 : 0.2;
                v += noise * standard_normal(rng);
                px.push_back(static_cast<float>(std::clamp(v, 0.0, 1.0)));
            }
        }
        labels.push_back(label);
    }
    return Dataset(std::move(name), side, side, 1, 2, std::move(px), std::move(labels));
}

} // namespace edlgp::data
