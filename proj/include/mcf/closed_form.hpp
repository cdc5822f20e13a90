#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mcf/block_sparse.hpp"
#include "mcf/core.hpp"

namespace mcf::cf {

/// Symmetric scalar sparse matrix in compressed-row form, one row per pixel.
struct ScalarSparseMatrix {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    Eigen::VectorXd multiply(const Eigen::VectorXd& v) const;
    Eigen::MatrixXd to_dense() const;
    double coeff(int i, int j) const;
};

/// Scalar matting Laplacian over windows of Chebyshev radius `radius`
/// (cropped at borders): for every window w_k with mean colour mu_k and
/// population covariance R_k, the pair (i, j) in w_k accumulates
///   delta_ij - (1 + (C_i - mu_k)^T (R_k + eps/|w_k| I)^-1 (C_j - mu_k)) / |w_k|.
/// Symmetric with zero row sums. Throws on a 1x1 image or radius < 1.
ScalarSparseMatrix assemble_cf_laplacian(const Image& image, int radius, double eps);

struct CfOptions {
    double eps = 1e-7;
    int radius = 1;
    double lambda_known = 100.0;
    sparse::SolveOptions solver;
};

/// Baseline closed-form matte: solves (L + D) alpha = D alpha0 where D holds
/// lambda_known on trimap-known pixels and the supplied confidences
/// elsewhere. alpha0/confidence must be passed together or both omitted.
/// Throws std::invalid_argument when nothing anchors the system, SolveError
/// when conjugate gradients fails. The returned matte is unclamped.
AlphaMap solve_cf(const Image& image, const Trimap& trimap, const AlphaMap* alpha0,
                  const ConfidenceMap* confidence, const CfOptions& options = {});

} // namespace mcf::cf
