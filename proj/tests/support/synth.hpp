#pragma once

#include <random>

#include "mcf/core.hpp"

namespace mcf::test {

/// Uniform random colours in [0,1].
Image random_image(std::mt19937& rng, int w, int h);

/// Uniform random filter values in [lo, hi] per channel.
BetaField random_beta(std::mt19937& rng, int w, int h, double lo = -1.0, double hi = 1.0);

/// Uniform random matte values in [lo, hi].
AlphaMap random_alpha(std::mt19937& rng, int w, int h, double lo = 0.0, double hi = 1.0);

/// One synthetic matting problem: smooth colour ramps composited through a
/// soft-edged disk, plus the ground-truth matte and a trimap leaving a band
/// of unknowns around the edge.
struct SuiteCase {
    Image image;
    Trimap trimap;
    AlphaMap truth;
};

SuiteCase suite_case(unsigned seed, int size = 64);

/// Confidence map anchoring every border pixel with `lambda`, zero inside.
ConfidenceMap boundary_confidence(int w, int h, double lambda);

} // namespace mcf::test
