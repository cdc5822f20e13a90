#include "mcf/closed_form.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mcf/pcg.hpp"

namespace mcf::cf {

Eigen::VectorXd ScalarSparseMatrix::multiply(const Eigen::VectorXd& v) const {
    if (v.size() != n) throw std::invalid_argument("vector length does not match n_pixels");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int idx = row_ptr[r]; idx < row_ptr[r + 1]; ++idx) {
            acc += val[static_cast<size_t>(idx)] * v[col[static_cast<size_t>(idx)]];
        }
        out[r] = acc;
    }
    return out;
}

Eigen::MatrixXd ScalarSparseMatrix::to_dense() const {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        for (int idx = row_ptr[r]; idx < row_ptr[r + 1]; ++idx) {
            dense(r, col[static_cast<size_t>(idx)]) = val[static_cast<size_t>(idx)];
        }
    }
    return dense;
}

double ScalarSparseMatrix::coeff(int i, int j) const {
    const auto begin = col.begin() + row_ptr[i];
    const auto end = col.begin() + row_ptr[i + 1];
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return val[static_cast<size_t>(it - col.begin())];
}

ScalarSparseMatrix assemble_cf_laplacian(const Image& image, int radius, double eps) {
    if (radius < 1) throw std::invalid_argument("window radius must be at least 1");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    const int w = image.width();
    const int h = image.height();
    if (w < 2 && h < 2) throw std::invalid_argument("image too small for matting windows");
    image.validate();

    const int n = w * h;
    // Row-wise accumulation keyed by column; windows overlap so entries merge.
    std::vector<std::map<int, double>> rows(static_cast<size_t>(n));

    std::vector<int> members;
    std::vector<Eigen::Vector3d> deviations;
    std::vector<Eigen::Vector3d> whitened;
    for (int yc = 0; yc < h; ++yc) {
        for (int xc = 0; xc < w; ++xc) {
            members.clear();
            for (int y = std::max(0, yc - radius); y <= std::min(h - 1, yc + radius); ++y) {
                for (int x = std::max(0, xc - radius); x <= std::min(w - 1, xc + radius); ++x) {
                    members.push_back(y * w + x);
                }
            }
            const double nk = static_cast<double>(members.size());
            Eigen::Vector3d mu = Eigen::Vector3d::Zero();
            for (int i : members) {
                mu += Eigen::Vector3d(image.channel(i, 0), image.channel(i, 1),
                                      image.channel(i, 2));
            }
            mu /= nk;
            deviations.clear();
            Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
            for (int i : members) {
                const Eigen::Vector3d d =
                    Eigen::Vector3d(image.channel(i, 0), image.channel(i, 1),
                                    image.channel(i, 2)) -
                    mu;
                deviations.push_back(d);
                cov.noalias() += d * d.transpose();
            }
            cov /= nk;
            const Eigen::Matrix3d t =
                (cov + (eps / nk) * Eigen::Matrix3d::Identity()).inverse();
            whitened.clear();
            for (const Eigen::Vector3d& d : deviations) whitened.push_back(t * d);

            for (size_t a = 0; a < members.size(); ++a) {
                auto& row = rows[static_cast<size_t>(members[a])];
                // The diagonal entry equals the negated sum of the off-diagonal
                // entries; accumulating it that way keeps row sums at zero to
                // machine precision instead of letting the inverse-covariance
                // term amplify rounding in the deviations.
                double diag = 0.0;
                for (size_t b = 0; b < members.size(); ++b) {
                    if (a == b) continue;
                    const double e = -(1.0 + deviations[a].dot(whitened[b])) / nk;
                    row[members[b]] += e;
                    diag -= e;
                }
                row[members[a]] += diag;
            }
        }
    }

    ScalarSparseMatrix m;
    m.n = n;
    m.row_ptr.assign(static_cast<size_t>(n) + 1, 0);
    for (int r = 0; r < n; ++r) {
        for (const auto& [c, v] : rows[static_cast<size_t>(r)]) {
            m.col.push_back(c);
            m.val.push_back(v);
        }
        m.row_ptr[static_cast<size_t>(r) + 1] = static_cast<int>(m.col.size());
    }
    return m;
}

AlphaMap solve_cf(const Image& image, const Trimap& trimap, const AlphaMap* alpha0,
                  const ConfidenceMap* confidence, const CfOptions& options) {
    if (trimap.width() != image.width() || trimap.height() != image.height()) {
        throw std::invalid_argument("trimap dimensions do not match the image");
    }
    if ((alpha0 == nullptr) != (confidence == nullptr)) {
        throw std::invalid_argument("alpha0 and confidence must be supplied together");
    }
    if (alpha0 &&
        (alpha0->width() != image.width() || alpha0->height() != image.height() ||
         confidence->width() != image.width() || confidence->height() != image.height())) {
        throw std::invalid_argument("alpha0/confidence dimensions do not match the image");
    }
    if (options.lambda_known < 0.0) {
        throw std::invalid_argument("lambda_known must be nonnegative");
    }

    const int n = image.pixel_count();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const TriLabel label = trimap.label(i);
        if (label != TriLabel::Unknown) {
            d[i] += options.lambda_known;
            if (label == TriLabel::Foreground) rhs[i] += options.lambda_known;
        } else if (alpha0 && confidence->value(i) > 0.0) {
            d[i] += confidence->value(i);
            rhs[i] += confidence->value(i) * alpha0->value(i);
        }
    }
    if (d.maxCoeff() <= 0.0) {
        throw std::invalid_argument("no anchored pixel: the matting system is singular");
    }

    const ScalarSparseMatrix lap = assemble_cf_laplacian(image, options.radius, options.eps);
    const int max_iter = options.solver.max_iter > 0 ? options.solver.max_iter : 10 * n;

    Eigen::VectorXd diag = d;
    for (int i = 0; i < n; ++i) {
        diag[i] += lap.coeff(i, i);
        if (diag[i] <= 0.0) diag[i] = 1.0;
    }
    auto apply_a = [&lap, &d](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return lap.multiply(v) + d.cwiseProduct(v);
    };
    auto apply_precond = [&diag](const Eigen::VectorXd& r) -> Eigen::VectorXd {
        return r.cwiseQuotient(diag);
    };
    const Eigen::VectorXd alpha =
        sparse::detail::pcg(apply_a, apply_precond, rhs, options.solver.tol, max_iter,
                            nullptr, nullptr);

    std::vector<double> values(alpha.data(), alpha.data() + n);
    return AlphaMap(image.width(), image.height(), std::move(values));
}

} // namespace mcf::cf
