#pragma once

#include <optional>

#include "mcf/beta_laplacian.hpp"
#include "mcf/block_sparse.hpp"
#include "mcf/core.hpp"
#include "mcf/priors.hpp"

namespace mcf::multiscale {

/// Inputs of one pyramid scale. alpha0 and confidence travel together or not
/// at all.
struct PyramidLevel {
    Image image;
    Trimap trimap;
    std::optional<AlphaMap> alpha0;
    std::optional<ConfidenceMap> confidence;

    int width() const { return image.width(); }
    int height() const { return image.height(); }

    /// Throws std::invalid_argument on mismatched dimensions or a lone
    /// alpha0/confidence.
    void validate() const;
};

enum class BetaStencil { FivePoint, Window };

/// Everything the beta solve needs besides the per-scale inputs.
struct BetaSolveConfig {
    BetaStencil stencil = BetaStencil::FivePoint;
    int radius = 1; // Window stencil only
    laplacian::SpatialPrior spatial = laplacian::SpatialPrior::isotropic();
    double lambda_known = 100.0;
    sparse::SolveOptions solver;
};

/// Single-scale solve: assembles the Laplacian and unary priors for `level`
/// and returns the minimizing beta field. Throws std::invalid_argument when
/// no pixel is anchored (the system would be singular), SolveError when
/// conjugate gradients fails.
BetaField solve_beta(const PyramidLevel& level, const BetaSolveConfig& config,
                     sparse::SolveStats* stats = nullptr);

/// Reduces a level by an integer factor of 2 or 4: image, alpha0 and
/// confidence are block-averaged (partial blocks at the right/bottom edges
/// average the pixels they cover); a coarse trimap pixel keeps a known label
/// only when every covered fine pixel carries that same label. Throws when
/// the result would be smaller than 2x2.
PyramidLevel downsample(const PyramidLevel& level, int factor);

/// Bilinear upsampling of a beta field to (target_w, target_h), each of the
/// four channels independently, with half-pixel-aligned sampling. Target
/// dimensions must not be smaller than the source.
BetaField upsample_beta(const BetaField& coarse, int target_w, int target_h);

struct MultiscaleResult {
    BetaField beta;   // full resolution
    AlphaMap alpha;   // reconstructed from beta at full resolution
};

/// Coarse-to-fine pipeline: solve beta at 1/factor resolution, upsample the
/// field, and evaluate the matte against the full-resolution image. factor 1
/// is the plain single-scale path.
MultiscaleResult matte_multiscale(const PyramidLevel& full, int factor,
                                  const BetaSolveConfig& config,
                                  sparse::SolveStats* stats = nullptr);

} // namespace mcf::multiscale
