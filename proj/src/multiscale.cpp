#include "mcf/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcf::multiscale {

namespace {

void check_match(int w, int h, int rw, int rh, const char* what) {
    if (w != rw || h != rh) {
        throw std::invalid_argument(std::string(what) + " dimensions do not match the image");
    }
}

} // namespace

void PyramidLevel::validate() const {
    image.validate();
    check_match(image.width(), image.height(), trimap.width(), trimap.height(), "trimap");
    if (alpha0.has_value() != confidence.has_value()) {
        throw std::invalid_argument("alpha0 and confidence must be supplied together");
    }
    if (alpha0) {
        check_match(image.width(), image.height(), alpha0->width(), alpha0->height(), "alpha0");
        check_match(image.width(), image.height(), confidence->width(), confidence->height(),
                    "confidence");
        alpha0->validate();
        confidence->validate();
    }
}

BetaField solve_beta(const PyramidLevel& level, const BetaSolveConfig& config,
                     sparse::SolveStats* stats) {
    level.validate();
    const laplacian::MomentField m = laplacian::moments(level.image, config.spatial);
    sparse::BlockSparseMatrix a = config.stencil == BetaStencil::FivePoint
                                      ? laplacian::assemble_five_point(m)
                                      : laplacian::assemble_general(m, config.radius);

    const prior::UnaryPrior unary = prior::build_unary(
        level.image, level.trimap, level.alpha0 ? &*level.alpha0 : nullptr,
        level.confidence ? &*level.confidence : nullptr, config.lambda_known);
    if (unary.empty()) {
        throw std::invalid_argument(
            "no anchored pixel: provide known trimap labels or an alpha0 estimate");
    }

    sparse::BlockSparseMatrix::Builder builder = a.rebuild();
    unary.accumulate(builder);
    sparse::BlockSystem system{std::move(builder).compile(), unary.rhs()};

    const Eigen::VectorXd x = sparse::solve(system, config.solver, stats);
    BetaField beta(level.width(), level.height());
    for (int i = 0; i < level.image.pixel_count(); ++i) {
        beta[i] = x.segment<4>(4 * i);
    }
    return beta;
}

PyramidLevel downsample(const PyramidLevel& level, int factor) {
    if (factor != 2 && factor != 4) {
        throw std::invalid_argument("downsample factor must be 2 or 4");
    }
    level.validate();
    const int fw = level.width();
    const int fh = level.height();
    const int cw = (fw + factor - 1) / factor;
    const int ch = (fh + factor - 1) / factor;
    if (cw < 2 || ch < 2) {
        throw std::invalid_argument("downsampled image would be smaller than 2x2");
    }

    Image image(cw, ch);
    std::vector<TriLabel> labels(static_cast<size_t>(cw * ch));
    std::optional<AlphaMap> alpha0;
    std::optional<ConfidenceMap> confidence;
    if (level.alpha0) {
        alpha0.emplace(cw, ch);
        confidence.emplace(cw, ch);
    }

    for (int yc = 0; yc < ch; ++yc) {
        for (int xc = 0; xc < cw; ++xc) {
            const int x0 = xc * factor;
            const int y0 = yc * factor;
            const int x1 = std::min(x0 + factor, fw);
            const int y1 = std::min(y0 + factor, fh);
            const double count = static_cast<double>((x1 - x0) * (y1 - y0));

            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int y = y0; y < y1; ++y) {
                    for (int x = x0; x < x1; ++x) acc += level.image(x, y, c);
                }
                image(xc, yc, c) = acc / count;
            }

            TriLabel label = level.trimap(x0, y0);
            for (int y = y0; y < y1 && label != TriLabel::Unknown; ++y) {
                for (int x = x0; x < x1; ++x) {
                    if (level.trimap(x, y) != label) {
                        label = TriLabel::Unknown;
                        break;
                    }
                }
            }
            labels[static_cast<size_t>(yc * cw + xc)] = label;

            if (level.alpha0) {
                double a_acc = 0.0;
                double l_acc = 0.0;
                for (int y = y0; y < y1; ++y) {
                    for (int x = x0; x < x1; ++x) {
                        a_acc += (*level.alpha0)(x, y);
                        l_acc += (*level.confidence)(x, y);
                    }
                }
                (*alpha0)(xc, yc) = a_acc / count;
                (*confidence)(xc, yc) = l_acc / count;
            }
        }
    }

    return PyramidLevel{std::move(image), Trimap(cw, ch, std::move(labels)),
                        std::move(alpha0), std::move(confidence)};
}

BetaField upsample_beta(const BetaField& coarse, int target_w, int target_h) {
    const int cw = coarse.width();
    const int ch = coarse.height();
    if (target_w < cw || target_h < ch) {
        throw std::invalid_argument("upsample target must not be smaller than the source");
    }
    BetaField out(target_w, target_h);
    const double sx_scale = static_cast<double>(cw) / target_w;
    const double sy_scale = static_cast<double>(ch) / target_h;
    for (int y = 0; y < target_h; ++y) {
        const double sy = std::clamp((y + 0.5) * sy_scale - 0.5, 0.0, ch - 1.0);
        const int y0 = static_cast<int>(std::floor(sy));
        const int y1 = std::min(y0 + 1, ch - 1);
        const double fy = sy - y0;
        for (int x = 0; x < target_w; ++x) {
            const double sx = std::clamp((x + 0.5) * sx_scale - 0.5, 0.0, cw - 1.0);
            const int x0 = static_cast<int>(std::floor(sx));
            const int x1 = std::min(x0 + 1, cw - 1);
            const double fx = sx - x0;
            const Eigen::Vector4d top =
                (1.0 - fx) * coarse[y0 * cw + x0] + fx * coarse[y0 * cw + x1];
            const Eigen::Vector4d bottom =
                (1.0 - fx) * coarse[y1 * cw + x0] + fx * coarse[y1 * cw + x1];
            out[y * target_w + x] = (1.0 - fy) * top + fy * bottom;
        }
    }
    return out;
}

MultiscaleResult matte_multiscale(const PyramidLevel& full, int factor,
                                  const BetaSolveConfig& config,
                                  sparse::SolveStats* stats) {
    if (factor != 1 && factor != 2 && factor != 4) {
        throw std::invalid_argument("scale divisor must be 1, 2 or 4");
    }
    BetaField beta = factor == 1
                         ? solve_beta(full, config, stats)
                         : upsample_beta(solve_beta(downsample(full, factor), config, stats),
                                         full.width(), full.height());
    AlphaMap alpha = reconstruct_alpha(full.image, beta);
    return MultiscaleResult{std::move(beta), std::move(alpha)};
}

} // namespace mcf::multiscale
