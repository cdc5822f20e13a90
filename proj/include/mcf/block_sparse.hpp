#pragma once

#include <vector>

#include <Eigen/Dense>

namespace mcf::sparse {

/// Symmetric sparse matrix of 4x4 blocks indexed by pixel pairs. The full
/// symmetric pattern is stored. Assembly goes through the Builder as a
/// coordinate list; compile() merges duplicates into a compressed block-row
/// layout and verifies block(i,k) == block(k,i)^T.
class BlockSparseMatrix {
  public:
    class Builder {
      public:
        explicit Builder(int n_pixels);

        /// Accumulates `block` onto entry (row, col). Duplicates are summed.
        void add(int row, int col, const Eigen::Matrix4d& block);

        /// Accumulates a symmetric off-diagonal coupling: `off_diag` onto
        /// (i,k), its transpose onto (k,i).
        void add_coupling(int i, int k, const Eigen::Matrix4d& off_diag);

        int n_pixels() const { return n_pixels_; }

        BlockSparseMatrix compile() &&;

      private:
        struct Entry {
            int row;
            int col;
            Eigen::Matrix4d block;
        };

        int n_pixels_;
        std::vector<Entry> entries_;
    };

    int n_pixels() const { return n_pixels_; }
    int stored_blocks() const { return static_cast<int>(col_.size()); }

    /// Sparse matrix-vector product. `v` has 4 entries per pixel.
    Eigen::VectorXd multiply(const Eigen::VectorXd& v) const;

    /// Pointer to the stored block at (row, col), nullptr when absent.
    const Eigen::Matrix4d* block(int row, int col) const;

    /// Diagonal block of pixel i (zero matrix when absent).
    Eigen::Matrix4d diagonal_block(int i) const;

    /// Dense 4n x 4n expansion. Intended for small test systems.
    Eigen::MatrixXd to_dense() const;

    /// Returns a Builder pre-seeded with this matrix's entries, for forming
    /// sums such as A + A0.
    Builder rebuild() const;

  private:
    friend class Builder;
    BlockSparseMatrix() = default;

    int n_pixels_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<Eigen::Matrix4d> blocks_;
};

/// The assembled linear system (A + A0) beta = mu0.
struct BlockSystem {
    BlockSparseMatrix matrix;
    Eigen::VectorXd rhs;
};

struct SolveOptions {
    double tol = 1e-8;
    int max_iter = 0; // 0 selects 10 * n_pixels
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;
};

/// Largest system the dense direct path accepts.
inline constexpr int kDenseSolveMaxPixels = 4096;

/// Preconditioned conjugate gradients with a block-Jacobi preconditioner
/// (regularized inverse of each 4x4 diagonal block; blocks that fail to
/// invert fall back to the identity). Returns beta with relative residual
/// ||(A+A0)beta - mu0|| / max(||mu0||, tiny) <= tol.
/// Throws SolveError when max_iter is exhausted first.
Eigen::VectorXd solve(const BlockSystem& system, const SolveOptions& options = {},
                      SolveStats* stats = nullptr);

/// Direct dense solve for systems up to kDenseSolveMaxPixels, used as the
/// reference path in tests. Falls back to a rank-revealing least-squares
/// factorization when the system is singular but consistent.
Eigen::VectorXd solve_dense(const BlockSystem& system);

} // namespace mcf::sparse
