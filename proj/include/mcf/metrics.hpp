#pragma once

#include "mcf/core.hpp"

namespace mcf::metrics {

struct MatteMetrics {
    double ssim = 0.0;
    double mad = 0.0;
    double sad = 0.0; // per-pixel normalized, equal to mad
};

/// Mean absolute difference over all pixels. Inputs are clamped to [0,1]
/// first, as for exported mattes. Throws on dimension mismatch.
double mad(const AlphaMap& a, const AlphaMap& b);

/// Sum of absolute differences divided by the pixel count (identical to
/// mad); kept as its own name to match reporting conventions.
double sad(const AlphaMap& a, const AlphaMap& b);

/// Raw sum of absolute differences without normalization.
double sad_unnormalized(const AlphaMap& a, const AlphaMap& b);

/// Mean structural similarity with an 11x11 Gaussian window (sigma 1.5),
/// stabilizers K1 = 0.01 and K2 = 0.03, dynamic range 1. Windows are fully
/// contained in the image, so both dimensions must be at least 11.
double ssim(const AlphaMap& a, const AlphaMap& b);

/// All three metrics in one pass-friendly record.
MatteMetrics compare(const AlphaMap& a, const AlphaMap& b);

} // namespace mcf::metrics
