#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace edlgp::gp {

enum class GpType : std::uint8_t { Image, Features, Probs, TreeCount, TreeDepth, Frequency, Orientation, Order, Sigma };

inline constexpr int kGpTypeCount = 9;

enum class Layer : std::uint8_t { Input, Filtering, FeatureExtraction, Concatenation, ClassificationCascade, Classification, Summation };

enum class Channel : std::uint8_t { Gray, Red, Green, Blue };

[[nodiscard]] std::string_view type_name(GpType t) noexcept;
[[nodiscard]] std::string_view layer_name(Layer l) noexcept;
[[nodiscard]] std::string_view channel_name(Channel c) noexcept;
[[nodiscard]] std::optional<Channel> channel_from_name(std::string_view name) noexcept;

} // namespace edlgp::gp
