#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "edlgp/gp/types.hpp"
#include "edlgp/image/plane.hpp"

namespace edlgp::data {

struct Signature {
    int width { 0 };
    int height { 0 };
    int channels { 0 };
    int classes { 0 };

    bool operator==(Signature const&) const = default;
    [[nodiscard]] std::string to_string() const;
};

// Immutable labelled image set. Pixels are stored as 32-bit floats in
// [0, 1], instance-major then channel plane then row-major.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::string name, int width, int height, int channels, int classes, std::vector<float> pixels, std::vector<int> labels);

    [[nodiscard]] std::string const& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] bool empty() const noexcept { return labels_.empty(); }
    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] int channels() const noexcept { return channels_; }
    [[nodiscard]] int num_classes() const noexcept { return classes_; }
    [[nodiscard]] Signature signature() const noexcept { return { width_, height_, channels_, classes_ }; }
    [[nodiscard]] std::vector<int> const& labels() const noexcept { return labels_; }
    [[nodiscard]] std::span<float const> pixels() const noexcept { return pixels_; }
    // Content hash of dimensions, pixels and labels.
    [[nodiscard]] std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    // Raw stored plane (channel index < channels()).
    [[nodiscard]] std::span<float const> raw_plane(std::size_t i, int channel) const;
    // Terminal value: Gray of a colour image is its luminance; for one-channel
    // data Gray is the stored plane. Red/Green/Blue need three channels.
    [[nodiscard]] image::ImagePlane plane(std::size_t i, gp::Channel c) const;

    [[nodiscard]] Dataset subset(std::span<std::size_t const> indices, std::string name) const;
    [[nodiscard]] std::vector<std::size_t> class_counts() const;

private:
    std::string name_;
    int width_ { 0 };
    int height_ { 0 };
    int channels_ { 0 };
    int classes_ { 0 };
    std::vector<float> pixels_;
    std::vector<int> labels_;
    std::uint64_t fingerprint_ { 0 };
};

// ITU-R BT.601 luminance of an RGB triple of planes.
[[nodiscard]] image::ImagePlane to_gray(image::ImagePlane const& r, image::ImagePlane const& g, image::ImagePlane const& b);

// Errors are DataError and name the file and byte offset.
[[nodiscard]] Dataset load_idx(std::filesystem::path const& images, std::filesystem::path const& labels);
[[nodiscard]] Dataset load_cifar_binary(std::vector<std::filesystem::path> const& batches);
// Manifest lines: relative_path,label (paths relative to the manifest's directory).
[[nodiscard]] Dataset load_pgm_manifest(std::filesystem::path const& manifest);
[[nodiscard]] image::ImagePlane read_pgm(std::filesystem::path const& path);
void write_pgm(std::filesystem::path const& path, image::ImagePlane const& img);

// Canonical dump: text header "W H C classes count\n", then per instance a
// little-endian int32 label followed by W*H*C little-endian float32 values.
void write_dump(std::filesystem::path const& path, Dataset const& ds);
[[nodiscard]] Dataset read_dump(std::filesystem::path const& path);

// Exactly per_class instances of every class, picked by a seeded shuffle
// within each class and kept in their original order.
[[nodiscard]] Dataset stratified_subsample(Dataset const& ds, int per_class, std::uint64_t seed);

} // namespace edlgp::data
