#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mcf/block_sparse.hpp"
#include "mcf/core.hpp"

namespace mcf::laplacian {

enum class SpatialPriorKind { None, Isotropic, SmoothedMoments };

/// Spatial prior applied to the per-pixel second-moment matrices before
/// assembly. Isotropic inflates each moment with eps_s * I; SmoothedMoments
/// first blurs the moment field entrywise with a Gaussian of width sigma_s.
struct SpatialPrior {
    SpatialPriorKind kind = SpatialPriorKind::Isotropic;
    double eps_s = 1e-4;
    double sigma_s = 1.0;

    static SpatialPrior none();
    static SpatialPrior isotropic(double eps_s = 1e-4);
    static SpatialPrior smoothed_moments(double sigma_s = 1.0, double eps_s = 1e-4);
};

/// Per-pixel symmetric PSD 4x4 moment matrices, row-major over the image.
struct MomentField {
    int width = 0;
    int height = 0;
    std::vector<Eigen::Matrix4d> m;

    int pixel_count() const { return width * height; }
    const Eigen::Matrix4d& operator[](int i) const { return m[static_cast<size_t>(i)]; }
};

/// Effective second moments M_i: the outer product X_i X_i^T of each pixel's
/// homogeneous colour, adjusted by the chosen spatial prior.
MomentField moments(const Image& image, const SpatialPrior& prior);

/// Laplacian over beta coupling each pixel to its four axis-aligned
/// neighbours: off-diagonal block -(M_i + M_k)/2 per neighbour pair, diagonal
/// blocks the negated off-diagonal row sums. Requires at least one pair
/// (image at least 2 pixels wide or tall).
sparse::BlockSparseMatrix assemble_five_point(const MomentField& moments);

/// Laplacian over beta induced by square windows of Chebyshev radius
/// `radius` (cropped at the borders): each window w_j of size n couples all
/// member pairs through -(1/n) M_j, diagonal blocks again the negated
/// off-diagonal row sums. The image must admit the full window at one
/// position at least.
sparse::BlockSparseMatrix assemble_general(const MomentField& moments, int radius);

} // namespace mcf::laplacian
