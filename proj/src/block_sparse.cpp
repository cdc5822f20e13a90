#include "mcf/block_sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mcf/errors.hpp"
#include "mcf/pcg.hpp"

namespace mcf::sparse {

namespace {

void check_pixel(int i, int n, const char* what) {
    if (i < 0 || i >= n) {
        throw std::invalid_argument(std::string(what) + " index " + std::to_string(i) +
                                    " outside [0, " + std::to_string(n) + ")");
    }
}

} // namespace

BlockSparseMatrix::Builder::Builder(int n_pixels) : n_pixels_(n_pixels) {
    if (n_pixels <= 0) throw std::invalid_argument("builder needs a positive pixel count");
}

void BlockSparseMatrix::Builder::add(int row, int col, const Eigen::Matrix4d& block) {
    check_pixel(row, n_pixels_, "block row");
    check_pixel(col, n_pixels_, "block col");
    if (!block.allFinite()) throw std::invalid_argument("non-finite block");
    entries_.push_back({row, col, block});
}

void BlockSparseMatrix::Builder::add_coupling(int i, int k, const Eigen::Matrix4d& off_diag) {
    if (i == k) throw std::invalid_argument("coupling needs two distinct pixels");
    add(i, k, off_diag);
    add(k, i, off_diag.transpose());
}

BlockSparseMatrix BlockSparseMatrix::Builder::compile() && {
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    BlockSparseMatrix m;
    m.n_pixels_ = n_pixels_;
    m.row_ptr_.assign(n_pixels_ + 1, 0);
    for (std::size_t e = 0; e < entries_.size();) {
        const int row = entries_[e].row;
        const int col = entries_[e].col;
        Eigen::Matrix4d sum = entries_[e].block;
        for (++e; e < entries_.size() && entries_[e].row == row && entries_[e].col == col; ++e) {
            sum += entries_[e].block;
        }
        m.col_.push_back(col);
        m.blocks_.push_back(sum);
        ++m.row_ptr_[row + 1];
    }
    for (int r = 0; r < n_pixels_; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];

    // The matrix must carry the full symmetric pattern.
    for (int r = 0; r < n_pixels_; ++r) {
        for (int idx = m.row_ptr_[r]; idx < m.row_ptr_[r + 1]; ++idx) {
            const int c = m.col_[idx];
            if (c == r) continue;
            const Eigen::Matrix4d* mirror = m.block(c, r);
            const double scale = 1.0 + m.blocks_[idx].cwiseAbs().maxCoeff();
            if (!mirror ||
                (m.blocks_[idx] - mirror->transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
                throw std::invalid_argument("assembled block matrix is not symmetric at (" +
                                            std::to_string(r) + ", " + std::to_string(c) + ")");
            }
        }
    }
    return m;
}

Eigen::VectorXd BlockSparseMatrix::multiply(const Eigen::VectorXd& v) const {
    if (v.size() != 4 * static_cast<Eigen::Index>(n_pixels_)) {
        throw std::invalid_argument("vector length does not match 4 * n_pixels");
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (int r = 0; r < n_pixels_; ++r) {
        Eigen::Vector4d acc = Eigen::Vector4d::Zero();
        for (int idx = row_ptr_[r]; idx < row_ptr_[r + 1]; ++idx) {
            acc.noalias() += blocks_[idx] * v.segment<4>(4 * col_[idx]);
        }
        out.segment<4>(4 * r) = acc;
    }
    return out;
}

const Eigen::Matrix4d* BlockSparseMatrix::block(int row, int col) const {
    check_pixel(row, n_pixels_, "block row");
    check_pixel(col, n_pixels_, "block col");
    const auto begin = col_.begin() + row_ptr_[row];
    const auto end = col_.begin() + row_ptr_[row + 1];
    const auto it = std::lower_bound(begin, end, col);
    if (it == end || *it != col) return nullptr;
    return &blocks_[static_cast<std::size_t>(it - col_.begin())];
}

Eigen::Matrix4d BlockSparseMatrix::diagonal_block(int i) const {
    const Eigen::Matrix4d* b = block(i, i);
    return b ? *b : Eigen::Matrix4d::Zero();
}

Eigen::MatrixXd BlockSparseMatrix::to_dense() const {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(4 * n_pixels_, 4 * n_pixels_);
    for (int r = 0; r < n_pixels_; ++r) {
        for (int idx = row_ptr_[r]; idx < row_ptr_[r + 1]; ++idx) {
            dense.block<4, 4>(4 * r, 4 * col_[idx]) = blocks_[idx];
        }
    }
    return dense;
}

BlockSparseMatrix::Builder BlockSparseMatrix::rebuild() const {
    Builder b(n_pixels_);
    for (int r = 0; r < n_pixels_; ++r) {
        for (int idx = row_ptr_[r]; idx < row_ptr_[r + 1]; ++idx) {
            b.add(r, col_[idx], blocks_[idx]);
        }
    }
    return b;
}

Eigen::VectorXd solve(const BlockSystem& system, const SolveOptions& options,
                      SolveStats* stats) {
    const BlockSparseMatrix& a = system.matrix;
    const int n = a.n_pixels();
    if (system.rhs.size() != 4 * static_cast<Eigen::Index>(n)) {
        throw std::invalid_argument("rhs length does not match the matrix");
    }
    if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const int max_iter = options.max_iter > 0 ? options.max_iter : 10 * n;

    // Block-Jacobi preconditioner. Each diagonal block gets a tiny
    // trace-scaled ridge before inversion; anything that still fails to
    // produce a finite positive inverse degrades to the identity.
    std::vector<Eigen::Matrix4d> inv_diag(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Eigen::Matrix4d d = a.diagonal_block(i);
        const double trace = d.trace();
        Eigen::Matrix4d inv = Eigen::Matrix4d::Identity();
        if (trace > 0.0) {
            const Eigen::Matrix4d reg =
                d + (1e-12 * trace / 4.0) * Eigen::Matrix4d::Identity();
            const Eigen::LDLT<Eigen::Matrix4d> ldlt(reg);
            if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
                const Eigen::Matrix4d candidate = ldlt.solve(Eigen::Matrix4d::Identity());
                if (candidate.allFinite()) inv = candidate;
            }
        }
        inv_diag[static_cast<std::size_t>(i)] = inv;
    }

    auto apply_a = [&a](const Eigen::VectorXd& v) { return a.multiply(v); };
    auto apply_precond = [&inv_diag, n](const Eigen::VectorXd& r) {
        Eigen::VectorXd z(r.size());
        for (int i = 0; i < n; ++i) {
            z.segment<4>(4 * i).noalias() =
                inv_diag[static_cast<std::size_t>(i)] * r.segment<4>(4 * i);
        }
        return z;
    };

    int iterations = 0;
    double residual = 0.0;
    Eigen::VectorXd x = detail::pcg(apply_a, apply_precond, system.rhs, options.tol,
                                    max_iter, &iterations, &residual);
    if (stats) {
        stats->iterations = iterations;
        stats->residual = residual;
    }
    return x;
}

Eigen::VectorXd solve_dense(const BlockSystem& system) {
    const int n = system.matrix.n_pixels();
    if (n > kDenseSolveMaxPixels) {
        throw std::invalid_argument("dense solve limited to " +
                                    std::to_string(kDenseSolveMaxPixels) + " pixels");
    }
    if (system.rhs.size() != 4 * static_cast<Eigen::Index>(n)) {
        throw std::invalid_argument("rhs length does not match the matrix");
    }
    const Eigen::MatrixXd dense = system.matrix.to_dense();
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(dense);
    if (ldlt.info() == Eigen::Success) {
        const Eigen::VectorXd x = ldlt.solve(system.rhs);
        const double scale = std::max(system.rhs.norm(), 1e-300);
        if (x.allFinite() && (dense * x - system.rhs).norm() <= 1e-8 * scale) return x;
    }
    // Singular (or badly conditioned) system: fall back to the minimum-norm
    // least-squares solution.
    return dense.completeOrthogonalDecomposition().solve(system.rhs);
}

} // namespace mcf::sparse
