#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mcf/errors.hpp"

namespace mcf::sparse {

struct SolveStats;

namespace detail {

/// Textbook preconditioned conjugate gradients. `apply_a` and
/// `apply_precond` map VectorXd -> VectorXd; the operator must be symmetric
/// positive (semi)definite and the preconditioner symmetric positive
/// definite. Convergence is declared at ||r|| / max(||b||, tiny) <= tol.
/// Throws SolveError on iteration exhaustion or breakdown.
template <typename ApplyA, typename ApplyPrecond>
Eigen::VectorXd pcg(ApplyA&& apply_a, ApplyPrecond&& apply_precond,
                    const Eigen::VectorXd& b, double tol, int max_iter,
                    int* iterations_out, double* residual_out) {
    constexpr double kTinyNorm = 1e-300;
    const double b_norm = std::max(b.norm(), kTinyNorm);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
    Eigen::VectorXd r = b;
    double rel = r.norm() / b_norm;
    if (iterations_out) *iterations_out = 0;
    if (residual_out) *residual_out = rel;
    if (rel <= tol) return x;

    Eigen::VectorXd z = apply_precond(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        const Eigen::VectorXd ap = apply_a(p);
        const double p_ap = p.dot(ap);
        if (!(p_ap > 0.0)) {
            // Search direction with no curvature: either we are done or the
            // operator is not positive definite along p.
            rel = r.norm() / b_norm;
            if (residual_out) *residual_out = rel;
            if (iterations_out) *iterations_out = iter;
            if (rel <= tol) return x;
            throw SolveError("conjugate gradient breakdown (non-positive curvature)",
                             rel, iter);
        }
        const double alpha = rz / p_ap;
        x += alpha * p;
        r -= alpha * ap;
        rel = r.norm() / b_norm;
        if (residual_out) *residual_out = rel;
        if (iterations_out) *iterations_out = iter + 1;
        if (rel <= tol) return x;

        z = apply_precond(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    throw SolveError("conjugate gradient failed to converge in " +
                         std::to_string(max_iter) + " iterations",
                     rel, iter);
}

} // namespace detail
} // namespace mcf::sparse
