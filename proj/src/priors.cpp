#include "mcf/priors.hpp"

#include <stdexcept>
#include <string>

namespace mcf::prior {

bool UnaryPrior::empty() const {
    for (const PriorBlock& b : blocks) {
        if (!b.a0.isZero(0.0) || !b.mu0.isZero(0.0)) return false;
    }
    return true;
}

Eigen::VectorXd UnaryPrior::rhs() const {
    Eigen::VectorXd out(4 * static_cast<Eigen::Index>(blocks.size()));
    for (size_t i = 0; i < blocks.size(); ++i) {
        out.segment<4>(4 * static_cast<Eigen::Index>(i)) = blocks[i].mu0;
    }
    return out;
}

void UnaryPrior::accumulate(sparse::BlockSparseMatrix::Builder& builder) const {
    if (builder.n_pixels() != pixel_count()) {
        throw std::invalid_argument("unary prior does not match the matrix size");
    }
    for (int i = 0; i < pixel_count(); ++i) {
        const Eigen::Matrix4d& a0 = blocks[static_cast<size_t>(i)].a0;
        if (!a0.isZero(0.0)) builder.add(i, i, a0);
    }
}

PriorBlock prior_from_samples(const std::vector<WeightedSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("prior needs at least one sample");
    PriorBlock block;
    for (const WeightedSample& s : samples) {
        if (s.lambda < 0.0) throw std::invalid_argument("sample weight must be nonnegative");
        const Eigen::Vector4d& x = s.x.vec();
        block.a0.noalias() += s.lambda * (x * x.transpose());
        block.mu0.noalias() += s.lambda * s.alpha * x;
    }
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    block.a0 *= inv_n;
    block.mu0 *= inv_n;
    return block;
}

PriorBlock alpha_prior(const AugmentedColor& x, double alpha0, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("prior weight must be nonnegative");
    const Eigen::Vector4d& v = x.vec();
    PriorBlock block;
    block.a0.noalias() = lambda * (v * v.transpose());
    block.mu0.noalias() = lambda * alpha0 * v;
    return block;
}

PriorBlock fb_prior(const AugmentedColor& x_sample, double target_alpha, double lambda) {
    if (target_alpha != 0.0 && target_alpha != 1.0) {
        throw std::invalid_argument("target alpha must be exactly 0 or 1");
    }
    return alpha_prior(x_sample, target_alpha, lambda);
}

UnaryPrior build_unary(const Image& image, const Trimap& trimap,
                       const AlphaMap* alpha0, const ConfidenceMap* confidence,
                       double lambda_known) {
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
    if (lambda_known < 0.0) throw std::invalid_argument("lambda_known must be nonnegative");

    UnaryPrior unary;
    unary.width = image.width();
    unary.height = image.height();
    unary.blocks.resize(static_cast<size_t>(image.pixel_count()));
    for (int i = 0; i < image.pixel_count(); ++i) {
        const AugmentedColor x = lift(image, i);
        PriorBlock& block = unary.blocks[static_cast<size_t>(i)];
        const TriLabel label = trimap.label(i);
        if (label == TriLabel::Foreground) {
            block += alpha_prior(x, 1.0, lambda_known);
        } else if (label == TriLabel::Background) {
            block += alpha_prior(x, 0.0, lambda_known);
        }
        if (alpha0 && confidence->value(i) > 0.0) {
            block += alpha_prior(x, alpha0->value(i), confidence->value(i));
        }
    }
    return unary;
}

} // namespace mcf::prior
