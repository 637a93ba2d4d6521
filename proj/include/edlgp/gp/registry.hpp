#pragma once

#include "edlgp/gp/primitive_set.hpp"

namespace edlgp::gp {

enum class Op : int {
    // filtering
    Mean, Median, Min, Max, Gau, GauD, Lap, LoG1, LoG2, Sobel, Gabor, LbpF, HogF, Sqrt, Relu, AddMaxP, SubMaxP,
    // feature extraction
    Conca, Hist, Hog, Lbp, Sift, LbpFE, HogFE, SobelFE, GaborFE, GauFE, GauDFE,
    // concatenation
    Comb2, Comb3, Comb4,
    // classification and cascade
    CcRf, CcErf, CcLr, CcSvm,
    // classification
    Rf, Erf, Lr, Svm,
    // summation
    Sum2, Sum3, Sum4,
};

// Two readings of the Gabor frequency step: additive {pi/8, pi/8 + pi/(2 sqrt2),
// pi/2} and geometric pi/8 * sqrt2^k, k = 0..4.
enum class FrequencyGrid { Additive, Geometric };

struct RegistryOptions {
    FrequencyGrid frequency_grid { FrequencyGrid::Additive };
};

// Every filtering, feature-extraction, concatenation, classification and
// summation primitive plus channel and parameter terminals. Throws
// ConfigError unless channels is 1 or 3 and classes >= 2.
[[nodiscard]] PrimitiveSet register_primitives(int channels, int classes, RegistryOptions const& options = {});

[[nodiscard]] inline Op op_of(Primitive const& p) noexcept { return static_cast<Op>(p.op); }

} // namespace edlgp::gp
