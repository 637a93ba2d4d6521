#include "edlgp/gp/types.hpp"

namespace edlgp::gp {

std::string_view type_name(GpType t) noexcept
{
    switch (t) {
    case GpType::Image:
        return "IMAGE";
    case GpType::Features:
        return "FEATURES";
    case GpType::Probs:
        return "PROBS";
    case GpType::TreeCount:
        return "TREE_COUNT";
    case GpType::TreeDepth:
        return "TREE_DEPTH";
    case GpType::Frequency:
        return "FREQUENCY";
    case GpType::Orientation:
        return "ORIENTATION";
    case GpType::Order:
        return "ORDER";
    case GpType::Sigma:
        return "SIGMA";
    }
    return "?";
}

std::string_view layer_name(Layer l) noexcept
{
    switch (l) {
    case Layer::Input:
        return "Input";
    case Layer::Filtering:
        return "Filtering";
    case Layer::FeatureExtraction:
        return "FeatureExtraction";
    case Layer::Concatenation:
        return "Concatenation";
    case Layer::ClassificationCascade:
        return "ClassificationCascade";
    case Layer::Classification:
        return "Classification";
    case Layer::Summation:
        return "Summation";
    }
    return "?";
}

std::string_view channel_name(Channel c) noexcept
{
    switch (c) {
    case Channel::Gray:
        return "Gray";
    case Channel::Red:
        return "Red";
    case Channel::Green:
        return "Green";
    case Channel::Blue:
        return "Blue";
    }
    return "?";
}

std::optional<Channel> channel_from_name(std::string_view name) noexcept
{
    for (auto c : { Channel::Gray, Channel::Red, Channel::Green, Channel::Blue }) {
        if (channel_name(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

} // namespace edlgp::gp
