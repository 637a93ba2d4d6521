#include "edlgp/gp/registry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "edlgp/core/error.hpp"

namespace edlgp::gp {

namespace {

using T = GpType;

ParamDomain integer_domain(GpType type, std::string key, int lo, int hi, int step)
{
    ParamDomain d { type, std::move(key), {}, {}, {} };
    for (int v = lo; v <= hi; v += step) {
        d.labels.push_back(std::to_string(v));
        d.values.push_back(v);
    }
    return d;
}

ParamDomain orientation_domain()
{
    ParamDomain d { T::Orientation, "theta", {}, {}, {} };
    for (int k = 0; k < 8; ++k) {
        std::string label;
        if (k == 0) {
            label = "0";
        } else {
            // k/8 reduced
            int num = k;
            int den = 8;
            while (num % 2 == 0) {
                num /= 2;
                den /= 2;
            }
            label = (num == 1 ? "" : std::to_string(num)) + "pi/" + std::to_string(den);
        }
        d.labels.push_back(label);
        d.values.push_back(k * std::numbers::pi / 8.0);
    }
    return d;
}

ParamDomain frequency_domain(FrequencyGrid grid)
{
    double const pi = std::numbers::pi;
    double const r2 = std::numbers::sqrt2;
    ParamDomain d { T::Frequency, "f", {}, {}, {} };
    d.labels = { "pi/8", "pi/4sqrt2", "pi/4", "pi/2sqrt2", "pi/8+pi/2sqrt2", "pi/2" };
    d.values = { pi / 8, pi / (4 * r2), pi / 4, pi / (2 * r2), pi / 8 + pi / (2 * r2), pi / 2 };
    if (grid == FrequencyGrid::Additive) {
        d.active = { 0, 4, 5 };
    } else {
        d.active = { 0, 1, 2, 3, 5 };
    }
    return d;
}

struct Spec {
    Op op;
    char const* name;
    std::vector<GpType> children;
    GpType ret;
    Layer layer;
    std::vector<std::string> keys {};
};

} // namespace

PrimitiveSet register_primitives(int channels, int classes, RegistryOptions const& options)
{
    if (channels != 1 && channels != 3) {
        throw ConfigError("unsupported channel count " + std::to_string(channels) + " (expected 1 or 3)");
    }
    if (classes < 2) {
        throw ConfigError("at least two classes are required, got " + std::to_string(classes));
    }

    using L = Layer;
    T const I = T::Image;
    T const F = T::Features;
    T const P = T::Probs;
    std::vector<std::string> const gaud_keys { "", "sigma", "o1", "o2" };

    std::vector<Spec> const specs {
        { Op::Mean, "Mean", { I }, I, L::Filtering },
        { Op::Median, "Median", { I }, I, L::Filtering },
        { Op::Min, "Min", { I }, I, L::Filtering },
        { Op::Max, "Max", { I }, I, L::Filtering },
        { Op::Gau, "Gau", { I, T::Sigma }, I, L::Filtering },
        { Op::GauD, "GauD", { I, T::Sigma, T::Order, T::Order }, I, L::Filtering, gaud_keys },
        { Op::Lap, "Lap", { I }, I, L::Filtering },
        { Op::LoG1, "LoG1", { I }, I, L::Filtering },
        { Op::LoG2, "LoG2", { I }, I, L::Filtering },
        { Op::Sobel, "Sobel", { I }, I, L::Filtering },
        { Op::Gabor, "Gabor", { I, T::Orientation, T::Frequency }, I, L::Filtering },
        { Op::LbpF, "LBP_F", { I }, I, L::Filtering },
        { Op::HogF, "HOG_F", { I }, I, L::Filtering },
        { Op::Sqrt, "Sqrt", { I }, I, L::Filtering },
        { Op::Relu, "ReLU", { I }, I, L::Filtering },
        { Op::AddMaxP, "Add_MaxP", { I, I }, I, L::Filtering },
        { Op::SubMaxP, "Sub_MaxP", { I, I }, I, L::Filtering },

        { Op::Conca, "Conca", { I, I }, F, L::FeatureExtraction },
        { Op::Hist, "Hist", { I }, F, L::FeatureExtraction },
        { Op::Hog, "HOG", { I }, F, L::FeatureExtraction },
        { Op::Lbp, "LBP", { I }, F, L::FeatureExtraction },
        { Op::Sift, "SIFT", { I }, F, L::FeatureExtraction },
        { Op::LbpFE, "LBP_FE", { I }, F, L::FeatureExtraction },
        { Op::HogFE, "HOG_FE", { I }, F, L::FeatureExtraction },
        { Op::SobelFE, "Sobel_FE", { I }, F, L::FeatureExtraction },
        { Op::GaborFE, "Gabor_FE", { I, T::Orientation, T::Frequency }, F, L::FeatureExtraction },
        { Op::GauFE, "Gau_FE", { I, T::Sigma }, F, L::FeatureExtraction },
        { Op::GauDFE, "GauD_FE", { I, T::Sigma, T::Order, T::Order }, F, L::FeatureExtraction, gaud_keys },

        { Op::Comb2, "Comb2", { F, F }, F, L::Concatenation },
        { Op::Comb3, "Comb3", { F, F, F }, F, L::Concatenation },
        { Op::Comb4, "Comb4", { F, F, F, F }, F, L::Concatenation },

        { Op::CcRf, "CC_RF", { F, T::TreeCount, T::TreeDepth }, F, L::ClassificationCascade },
        { Op::CcErf, "CC_ERF", { F, T::TreeCount, T::TreeDepth }, F, L::ClassificationCascade },
        { Op::CcLr, "CC_LR", { F }, F, L::ClassificationCascade },
        { Op::CcSvm, "CC_SVM", { F }, F, L::ClassificationCascade },

        { Op::Rf, "RF", { F, T::TreeCount, T::TreeDepth }, P, L::Classification },
        { Op::Erf, "ERF", { F, T::TreeCount, T::TreeDepth }, P, L::Classification },
        { Op::Lr, "LR", { F }, P, L::Classification },
        { Op::Svm, "SVM", { F }, P, L::Classification },

        { Op::Sum2, "Sum2", { P, P }, P, L::Summation },
        { Op::Sum3, "Sum3", { P, P, P }, P, L::Summation },
        { Op::Sum4, "Sum4", { P, P, P, P }, P, L::Summation },
    };

    PrimitiveSet pset;
    if (channels == 1) {
        pset.add_channel(Channel::Gray);
    } else {
        pset.add_channel(Channel::Red);
        pset.add_channel(Channel::Green);
        pset.add_channel(Channel::Blue);
        pset.add_channel(Channel::Gray);
    }
    pset.set_param_domain(integer_domain(T::TreeCount, "t", 50, 1000, 50));
    pset.set_param_domain(integer_domain(T::TreeDepth, "d", 10, 100, 10));
    pset.set_param_domain(frequency_domain(options.frequency_grid));
    pset.set_param_domain(orientation_domain());
    pset.set_param_domain(integer_domain(T::Order, "o", 0, 2, 1));
    pset.set_param_domain(integer_domain(T::Sigma, "sigma", 1, 3, 1));

    for (auto const& s : specs) {
        pset.add_primitive(Primitive { s.name, s.children, s.ret, s.layer, static_cast<int>(s.op), s.keys });
    }
    pset.set_root_primitives({ "Sum2", "Sum3", "Sum4" });
    return pset;
}

} // namespace edlgp::gp
