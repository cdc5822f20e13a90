#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mcf/block_sparse.hpp"
#include "mcf/core.hpp"

namespace mcf::prior {

/// One pixel's Gaussian prior contribution: energy (1/2) beta^T A0 beta -
/// mu0^T beta up to a constant.
struct PriorBlock {
    Eigen::Matrix4d a0 = Eigen::Matrix4d::Zero();
    Eigen::Vector4d mu0 = Eigen::Vector4d::Zero();

    PriorBlock& operator+=(const PriorBlock& other) {
        a0 += other.a0;
        mu0 += other.mu0;
        return *this;
    }
};

/// Block-diagonal unary term (A0, mu0) over the whole image.
struct UnaryPrior {
    int width = 0;
    int height = 0;
    std::vector<PriorBlock> blocks;

    int pixel_count() const { return width * height; }
    const PriorBlock& operator[](int i) const { return blocks[static_cast<size_t>(i)]; }
    PriorBlock& operator[](int i) { return blocks[static_cast<size_t>(i)]; }

    /// True when every block is exactly zero (nothing anchors the solve).
    bool empty() const;

    /// mu0 stacked into a length 4n vector.
    Eigen::VectorXd rhs() const;

    /// Adds every A0 block onto the matching diagonal entry of `builder`.
    void accumulate(sparse::BlockSparseMatrix::Builder& builder) const;
};

struct WeightedSample {
    AugmentedColor x;
    double alpha;
    double lambda;
};

/// Moment-matched Gaussian prior of a weighted sample set:
/// A0 = (1/N) sum lambda_n X_n X_n^T, mu0 = (1/N) sum lambda_n alpha_n X_n.
/// Throws on an empty sample list.
PriorBlock prior_from_samples(const std::vector<WeightedSample>& samples);

/// Prior pulling X^T beta toward alpha0 with weight lambda:
/// A0 = lambda X X^T, mu0 = lambda alpha0 X.
PriorBlock alpha_prior(const AugmentedColor& x, double alpha0, double lambda);

/// Prior derived from a known foreground (target 1) or background (target 0)
/// colour sample. target_alpha must be exactly 0 or 1.
PriorBlock fb_prior(const AugmentedColor& x_sample, double target_alpha, double lambda);

/// Per-pixel composition used by the matting pipeline: trimap-known pixels
/// are anchored to 0/1 with weight lambda_known; pixels with a supplied
/// (alpha0, confidence) estimate additionally get that anchor. alpha0 and
/// confidence must be supplied together (pass nullptr for both to skip).
UnaryPrior build_unary(const Image& image, const Trimap& trimap,
                       const AlphaMap* alpha0, const ConfidenceMap* confidence,
                       double lambda_known);

} // namespace mcf::prior
