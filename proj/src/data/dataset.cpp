#include "edlgp/data/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "edlgp/core/error.hpp"
#include "edlgp/core/random.hpp"

namespace edlgp::data {

namespace fs = std::filesystem;

std::string Signature::to_string() const
{
    return std::to_string(width) + "x" + std::to_string(height) + "x" + std::to_string(channels) + " classes=" + std::to_string(classes);
}

Dataset::Dataset(std::string name, int width, int height, int channels, int classes, std::vector<float> pixels, std::vector<int> labels)
    : name_(std::move(name))
    , width_(width)
    , height_(height)
    , channels_(channels)
    , classes_(classes)
    , pixels_(std::move(pixels))
    , labels_(std::move(labels))
{
    if (width < 1 || height < 1) {
        throw DataError(name_ + ": image dimensions must be positive");
    }
    if (channels != 1 && channels != 3) {
        throw DataError(name_ + ": expected 1 or 3 channels, got " + std::to_string(channels));
    }
    auto const per = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * static_cast<std::size_t>(channels);
    if (pixels_.size() != per * labels_.size()) {
        throw DataError(name_ + ": pixel count does not match " + std::to_string(labels_.size()) + " instances");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] < 0 || labels_[i] >= classes) {
            throw DataError(name_ + ": label " + std::to_string(labels_[i]) + " of instance " + std::to_string(i) + " outside [0, " + std::to_string(classes) + ")");
        }
    }
    std::uint64_t h = hash_combine(hash_combine(hash_combine(static_cast<std::uint64_t>(width), static_cast<std::uint64_t>(height)), static_cast<std::uint64_t>(channels)), static_cast<std::uint64_t>(classes));
    h = hash_combine(h, hash_bytes(std::string_view(reinterpret_cast<char const*>(pixels_.data()), pixels_.size() * sizeof(float))));
    h = hash_combine(h, hash_bytes(std::string_view(reinterpret_cast<char const*>(labels_.data()), labels_.size() * sizeof(int))));
    fingerprint_ = h;
}

std::span<float const> Dataset::raw_plane(std::size_t i, int channel) const
{
    if (i >= size() || channel < 0 || channel >= channels_) {
        throw UsageError("raw_plane index out of range");
    }
    auto const plane = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    return { pixels_.data() + (i * static_cast<std::size_t>(channels_) + static_cast<std::size_t>(channel)) * plane, plane };
}

namespace {

image::ImagePlane to_plane(std::span<float const> raw, int w, int h)
{
    return image::ImagePlane(w, h, std::vector<double>(raw.begin(), raw.end()));
}

} // namespace

image::ImagePlane Dataset::plane(std::size_t i, gp::Channel c) const
{
    if (channels_ == 1) {
        if (c != gp::Channel::Gray) {
            throw UsageError(std::string(gp::channel_name(c)) + " requested from a gray-scale dataset");
        }
        return to_plane(raw_plane(i, 0), width_, height_);
    }
    switch (c) {
    case gp::Channel::Red:
        return to_plane(raw_plane(i, 0), width_, height_);
    case gp::Channel::Green:
        return to_plane(raw_plane(i, 1), width_, height_);
    case gp::Channel::Blue:
        return to_plane(raw_plane(i, 2), width_, height_);
    case gp::Channel::Gray:
        break;
    }
    return to_gray(to_plane(raw_plane(i, 0), width_, height_), to_plane(raw_plane(i, 1), width_, height_), to_plane(raw_plane(i, 2), width_, height_));
}

Dataset Dataset::subset(std::span<std::size_t const> indices, std::string name) const
{
    auto const per = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_) * static_cast<std::size_t>(channels_);
    std::vector<float> px;
    px.reserve(per * indices.size());
    std::vector<int> labels;
    labels.reserve(indices.size());
    for (auto i : indices) {
        if (i >= size()) {
            throw UsageError("subset index out of range");
        }
        auto const* p = pixels_.data() + i * per;
        px.insert(px.end(), p, p + per);
        labels.push_back(labels_[i]);
    }
    return Dataset(std::move(name), width_, height_, channels_, classes_, std::move(px), std::move(labels));
}

std::vector<std::size_t> Dataset::class_counts() const
{
    std::vector<std::size_t> counts(static_cast<std::size_t>(classes_), 0);
    for (int l : labels_) {
        ++counts[static_cast<std::size_t>(l)];
    }
    return counts;
}

image::ImagePlane to_gray(image::ImagePlane const& r, image::ImagePlane const& g, image::ImagePlane const& b)
{
    if (r.width() != g.width() || r.width() != b.width() || r.height() != g.height() || r.height() != b.height()) {
        throw UsageError("to_gray: channel sizes differ");
    }
    image::ImagePlane out(r.width(), r.height());
    auto o = out.pixels();
    auto rp = r.pixels();
    auto gp = g.pixels();
    auto bp = b.pixels();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] = 0.299 * rp[i] + 0.587 * gp[i] + 0.114 * bp[i];
    }
    return out;
}

namespace {

std::string read_file(fs::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint32_t read_be32(std::string const& bytes, std::size_t offset, fs::path const& path)
{
    if (bytes.size() < offset + 4) {
        throw DataError(path.string() + ": truncated at byte offset " + std::to_string(bytes.size()) + " while reading a header field at offset " + std::to_string(offset));
    }
    auto const* p = reinterpret_cast<unsigned char const*>(bytes.data() + offset);
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) | (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void expect_length(std::string const& bytes, std::size_t expected, fs::path const& path)
{
    if (bytes.size() < expected) {
        throw DataError(path.string() + ": truncated at byte offset " + std::to_string(bytes.size()) + ", expected " + std::to_string(expected) + " bytes");
    }
    if (bytes.size() > expected) {
        throw DataError(path.string() + ": " + std::to_string(bytes.size() - expected) + " unexpected trailing bytes from offset " + std::to_string(expected));
    }
}

int classes_from_labels(std::vector<int> const& labels)
{
    int c = 0;
    for (int l : labels) {
        c = std::max(c, l + 1);
    }
    return std::max(c, 2);
}

} // namespace

Dataset load_idx(fs::path const& images_path, fs::path const& labels_path)
{
    auto const img = read_file(images_path);
    auto const magic = read_be32(img, 0, images_path);
    if (magic != 0x00000803) {
        std::ostringstream m;
        m << images_path.string() << ": bad magic 0x" << std::hex << magic << " at byte offset 0 (expected 0x00000803)";
        throw DataError(m.str());
    }
    auto const n = read_be32(img, 4, images_path);
    auto const h = read_be32(img, 8, images_path);
    auto const w = read_be32(img, 12, images_path);
    if (h == 0 || w == 0) {
        throw DataError(images_path.string() + ": zero image dimension in header");
    }
    expect_length(img, 16 + std::size_t(n) * h * w, images_path);

    auto const lab = read_file(labels_path);
    auto const lmagic = read_be32(lab, 0, labels_path);
    if (lmagic != 0x00000801) {
        std::ostringstream m;
        m << labels_path.string() << ": bad magic 0x" << std::hex << lmagic << " at byte offset 0 (expected 0x00000801)";
        throw DataError(m.str());
    }
    auto const ln = read_be32(lab, 4, labels_path);
    if (ln != n) {
        throw DataError(labels_path.string() + ": label count " + std::to_string(ln) + " (byte offset 4) does not match image count " + std::to_string(n));
    }
    expect_length(lab, 8 + std::size_t(n), labels_path);

    std::vector<float> px(std::size_t(n) * h * w);
    for (std::size_t i = 0; i < px.size(); ++i) {
        px[i] = static_cast<float>(static_cast<unsigned char>(img[16 + i]) / 255.0);
    }
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = static_cast<unsigned char>(lab[8 + i]);
    }
    int const classes = classes_from_labels(labels);
    return Dataset(images_path.filename().string(), static_cast<int>(w), static_cast<int>(h), 1, classes, std::move(px), std::move(labels));
}

Dataset load_cifar_binary(std::vector<fs::path> const& batches)
{
    constexpr std::size_t record = 3073;
    constexpr std::size_t plane = 1024;
    if (batches.empty()) {
        throw DataError("no CIFAR batch files given");
    }
    std::vector<float> px;
    std::vector<int> labels;
    for (auto const& path : batches) {
        auto const bytes = read_file(path);
        if (bytes.empty() || bytes.size() % record != 0) {
            throw DataError(path.string() + ": size " + std::to_string(bytes.size()) + " is not a positive multiple of 3073; last complete record ends at byte offset " + std::to_string(bytes.size() / record * record));
        }
        for (std::size_t off = 0; off < bytes.size(); off += record) {
            int const label = static_cast<unsigned char>(bytes[off]);
            if (label > 9) {
                throw DataError(path.string() + ": label " + std::to_string(label) + " at byte offset " + std::to_string(off) + " outside [0, 10)");
            }
            labels.push_back(label);
            for (std::size_t k = 0; k < 3 * plane; ++k) {
                px.push_back(static_cast<float>(static_cast<unsigned char>(bytes[off + 1 + k]) / 255.0));
            }
        }
    }
    return Dataset(batches.front().filename().string(), 32, 32, 3, 10, std::move(px), std::move(labels));
}

image::ImagePlane read_pgm(fs::path const& path)
{
    auto const bytes = read_file(path);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < bytes.size()) {
            if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') {
                    ++pos;
                }
            } else {
                break;
            }
        }
    };
    auto number = [&](char const* what) {
        skip();
        auto const start = pos;
        long v = 0;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1 << 24) {
                throw DataError(path.string() + ": " + what + " too large at byte offset " + std::to_string(start));
            }
            ++pos;
        }
        if (pos == start) {
            throw DataError(path.string() + ": expected " + what + " at byte offset " + std::to_string(start));
        }
        return static_cast<int>(v);
    };
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw DataError(path.string() + ": not a P2/P5 PGM file (byte offset 0)");
    }
    bool const binary = bytes[1] == '5';
    pos = 2;
    int const w = number("width");
    int const h = number("height");
    int const maxval = number("maxval");
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) {
        throw DataError(path.string() + ": invalid PGM header");
    }
    std::vector<double> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    if (binary) {
        ++pos; // single whitespace after maxval
        std::size_t const bpp = maxval > 255 ? 2 : 1;
        if (bytes.size() < pos + px.size() * bpp) {
            throw DataError(path.string() + ": truncated at byte offset " + std::to_string(bytes.size()) + ", expected " + std::to_string(pos + px.size() * bpp) + " bytes");
        }
        for (std::size_t i = 0; i < px.size(); ++i) {
            int v = static_cast<unsigned char>(bytes[pos + i * bpp]);
            if (bpp == 2) {
                v = (v << 8) | static_cast<unsigned char>(bytes[pos + i * bpp + 1]);
            }
            px[i] = static_cast<double>(v) / maxval;
        }
    } else {
        for (auto& v : px) {
            v = static_cast<double>(number("pixel")) / maxval;
        }
    }
    return image::ImagePlane(w, h, std::move(px));
}

void write_pgm(fs::path const& path, image::ImagePlane const& img)
{
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    auto const px = img.pixels();
    double lo = *std::min_element(px.begin(), px.end());
    double hi = *std::max_element(px.begin(), px.end());
    double const span = hi > lo ? hi - lo : 1.0;
    out << "P2\n# rescaled from [" << lo << ", " << hi << "]\n" << img.width() << ' ' << img.height() << "\n255\n";
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            out << (x ? " " : "") << static_cast<int>(std::lround((img(x, y) - lo) / span * 255.0));
        }
        out << '\n';
    }
}

Dataset load_pgm_manifest(fs::path const& manifest)
{
    std::ifstream in(manifest);
    if (!in) {
        throw DataError("cannot open " + manifest.string());
    }
    auto const base = manifest.parent_path();
    std::vector<float> px;
    std::vector<int> labels;
    int w = 0;
    int h = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto const comma = line.rfind(',');
        if (comma == std::string::npos) {
            throw DataError(manifest.string() + ":" + std::to_string(lineno) + ": expected relative_path,label");
        }
        int label = 0;
        try {
            std::size_t used = 0;
            label = std::stoi(line.substr(comma + 1), &used);
            if (used != line.size() - comma - 1 || label < 0) {
                throw std::invalid_argument("label");
            }
        } catch (std::exception const&) {
            throw DataError(manifest.string() + ":" + std::to_string(lineno) + ": invalid label '" + line.substr(comma + 1) + "'");
        }
        auto const img = read_pgm(base / line.substr(0, comma));
        if (labels.empty()) {
            w = img.width();
            h = img.height();
        } else if (img.width() != w || img.height() != h) {
            throw DataError(manifest.string() + ":" + std::to_string(lineno) + ": image size " + std::to_string(img.width()) + "x" + std::to_string(img.height()) + " differs from " + std::to_string(w) + "x" + std::to_string(h));
        }
        for (double v : img.pixels()) {
            px.push_back(static_cast<float>(v));
        }
        labels.push_back(label);
    }
    if (labels.empty()) {
        throw DataError(manifest.string() + ": no images listed");
    }
    int const classes = classes_from_labels(labels);
    return Dataset(manifest.filename().string(), w, h, 1, classes, std::move(px), std::move(labels));
}

namespace {

template <typename T>
void put_le(std::ostream& out, T v)
{
    static_assert(sizeof(T) == 4);
    auto u = std::bit_cast<std::uint32_t>(v);
    char b[4] = { char(u & 0xff), char((u >> 8) & 0xff), char((u >> 16) & 0xff), char((u >> 24) & 0xff) };
    out.write(b, 4);
}

template <typename T>
T get_le(std::string const& bytes, std::size_t off)
{
    auto const* p = reinterpret_cast<unsigned char const*>(bytes.data() + off);
    std::uint32_t u = std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
    return std::bit_cast<T>(u);
}

} // namespace

void write_dump(fs::path const& path, Dataset const& ds)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << ds.width() << ' ' << ds.height() << ' ' << ds.channels() << ' ' << ds.num_classes() << ' ' << ds.size() << '\n';
    auto const per = static_cast<std::size_t>(ds.width()) * static_cast<std::size_t>(ds.height()) * static_cast<std::size_t>(ds.channels());
    auto const px = ds.pixels();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        put_le<std::int32_t>(out, ds.labels()[i]);
        for (std::size_t k = 0; k < per; ++k) {
            put_le<float>(out, px[i * per + k]);
        }
    }
    if (!out) {
        throw DataError("write failed for " + path.string());
    }
}

Dataset read_dump(fs::path const& path)
{
    auto const bytes = read_file(path);
    auto const nl = bytes.find('\n');
    if (nl == std::string::npos) {
        throw DataError(path.string() + ": missing header line");
    }
    std::istringstream header(bytes.substr(0, nl));
    long w = 0;
    long h = 0;
    long c = 0;
    long classes = 0;
    long n = 0;
    if (!(header >> w >> h >> c >> classes >> n) || w < 1 || h < 1 || n < 0 || classes < 1) {
        throw DataError(path.string() + ": malformed header '" + bytes.substr(0, nl) + "'");
    }
    auto const per = static_cast<std::size_t>(w * h * c);
    std::size_t const rec = 4 + 4 * per;
    std::size_t const start = nl + 1;
    std::size_t const expected = start + rec * static_cast<std::size_t>(n);
    expect_length(bytes, expected, path);
    std::vector<float> px(per * static_cast<std::size_t>(n));
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::size_t off = start + i * rec;
        labels[i] = get_le<std::int32_t>(bytes, off);
        off += 4;
        for (std::size_t k = 0; k < per; ++k) {
            px[i * per + k] = get_le<float>(bytes, off + 4 * k);
        }
    }
    return Dataset(path.filename().string(), static_cast<int>(w), static_cast<int>(h), static_cast<int>(c), static_cast<int>(classes), std::move(px), std::move(labels));
}

Dataset stratified_subsample(Dataset const& ds, int per_class, std::uint64_t seed)
{
    if (per_class < 1) {
        throw ConfigError("per_class must be at least 1");
    }
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        by_class[ds.labels()[i]].push_back(i);
    }
    Rng rng(seed);
    std::vector<std::size_t> chosen;
    for (int c = 0; c < ds.num_classes(); ++c) {
        auto& members = by_class[c];
        if (members.size() < static_cast<std::size_t>(per_class)) {
            throw DataError(ds.name() + ": class " + std::to_string(c) + " has " + std::to_string(members.size()) + " instances, " + std::to_string(per_class) + " requested");
        }
        shuffle(members.begin(), members.end(), rng);
        chosen.insert(chosen.end(), members.begin(), members.begin() + per_class);
    }
    std::sort(chosen.begin(), chosen.end());
    return ds.subset(chosen, ds.name() + "[" + std::to_string(per_class) + "/class]");
}

} // namespace edlgp::data
